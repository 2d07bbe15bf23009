"""Meet and join matrices over finite posets.

Build the matrix with entries f(x_i meet x_j) or f(x_i join x_j) for a
finite poset and a function on it, decide positive definiteness with an
exact certificate, classify the structures (closed sets, chains, tree
sets), and bound eigenvalues from the function values alone.  The
divisibility order gives the classical instances: GCD, LCM, GCUD, MIN and
MAX matrices.
"""

from .definiteness import (
    NOT_APPLICABLE,
    NOT_POSITIVE_DEFINITE,
    POSITIVE_DEFINITE,
    PDReport,
    classify_and_test,
    monotonicity_from_pd,
    pd_join_closed,
    pd_meet_closed,
    pd_oracle,
    pd_superset_sufficient,
    pd_tree,
    structure_flags,
)
from .errors import (
    CharacterizationMismatch,
    ConvergenceError,
    CycleError,
    DeskScaleError,
    DuplicateError,
    ExactArithmeticError,
    HypothesisError,
    MeetJoinError,
    MissingValueError,
    MonotonicityError,
    NoJoinError,
    NoMeetError,
    NotClosedError,
    NotSupersetError,
    PreconditionError,
    SupportError,
)
from .matrices import (
    DiagMatrix,
    IncMatrix,
    SymMatrix,
    det_closed,
    det_general,
    factored_join_matrix,
    factored_meet_matrix,
    incidence_matrix,
    join_matrix,
    mass_diagonal,
    meet_matrix,
)
from .mobius import (
    MobiusTable,
    PhiVector,
    PosetFunction,
    PsiVector,
    mobius_table,
    phi,
    psi,
)
from .numtheory import (
    DivisorLattice,
    MatrixModel,
    NamedFunction,
    build_named_matrix,
    divides_unitarily,
    divisibility_poset,
    divisor_down_set,
    divisors,
    factorize,
    gcd_closure,
    gcud,
    gcud_closure,
    jordan_totient,
    lcm_closure,
    lcm_up_set,
    normalize_family,
    unitary_divisibility_poset,
    unitary_divisor_down_set,
    unitary_divisors,
)
from .poset import (
    ClosureResult,
    CoverGraph,
    FinitePoset,
    Subset,
    build_poset,
    cover_graph,
    down_set,
    is_A_set,
    is_chain,
    is_join_closed,
    is_meet_closed,
    is_vee_tree_set,
    is_wedge_tree_set,
    join,
    join_closure,
    meet,
    meet_closure,
    total_order_poset,
    up_set,
)
from .spectral import (
    BoundsReport,
    Spectrum,
    eigen_sym,
    join_bounds,
    meet_bounds,
    quadratic_form_check,
    reindex_monotone,
)

__all__ = [
    "BoundsReport",
    "CharacterizationMismatch",
    "ClosureResult",
    "ConvergenceError",
    "CoverGraph",
    "CycleError",
    "DeskScaleError",
    "DiagMatrix",
    "DivisorLattice",
    "DuplicateError",
    "ExactArithmeticError",
    "FinitePoset",
    "HypothesisError",
    "IncMatrix",
    "MatrixModel",
    "MeetJoinError",
    "MissingValueError",
    "MobiusTable",
    "MonotonicityError",
    "NamedFunction",
    "NoJoinError",
    "NoMeetError",
    "NotClosedError",
    "NotSupersetError",
    "NOT_APPLICABLE",
    "NOT_POSITIVE_DEFINITE",
    "PDReport",
    "PhiVector",
    "PosetFunction",
    "POSITIVE_DEFINITE",
    "PreconditionError",
    "PsiVector",
    "Spectrum",
    "Subset",
    "SupportError",
    "SymMatrix",
    "build_named_matrix",
    "build_poset",
    "classify_and_test",
    "cover_graph",
    "det_closed",
    "det_general",
    "divides_unitarily",
    "divisibility_poset",
    "divisor_down_set",
    "divisors",
    "down_set",
    "eigen_sym",
    "factored_join_matrix",
    "factored_meet_matrix",
    "factorize",
    "gcd_closure",
    "gcud",
    "gcud_closure",
    "incidence_matrix",
    "is_A_set",
    "is_chain",
    "is_join_closed",
    "is_meet_closed",
    "is_vee_tree_set",
    "is_wedge_tree_set",
    "join",
    "join_bounds",
    "join_closure",
    "join_matrix",
    "jordan_totient",
    "lcm_closure",
    "lcm_up_set",
    "mass_diagonal",
    "meet",
    "meet_bounds",
    "meet_closure",
    "meet_matrix",
    "mobius_table",
    "monotonicity_from_pd",
    "normalize_family",
    "pd_join_closed",
    "pd_meet_closed",
    "pd_oracle",
    "pd_superset_sufficient",
    "pd_tree",
    "phi",
    "psi",
    "quadratic_form_check",
    "reindex_monotone",
    "structure_flags",
    "total_order_poset",
    "unitary_divisibility_poset",
    "unitary_divisor_down_set",
    "unitary_divisors",
    "up_set",
]
