"""Positive definiteness decisions with certificates.

Each decision routine returns a :class:`PDReport` whose ``method`` tag names
the rule that produced the verdict: ``T3.1``/``T3.2`` are the exact sign
tests on meet (join) closed sets, ``C3.4``/``C3.6`` the sufficient
superset-mass tests, ``T4.4`` the tree-plus-monotonicity rule, and
``oracle`` the unconditional leading-principal-minor test.  Sufficient rules
that fail report ``not-applicable``; they never refute.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    ExactArithmeticError,
    MissingValueError,
    NoJoinError,
    NoMeetError,
    NotClosedError,
    NotSupersetError,
    PreconditionError,
)
from .matrices import SymMatrix, join_matrix, meet_matrix
from .mobius import PosetFunction, phi, psi
from .poset import (
    ClosureResult,
    Subset,
    cover_graph,
    down_set,
    is_A_set,
    is_chain,
    is_join_closed,
    is_meet_closed,
    is_vee_tree_set,
    is_wedge_tree_set,
    join_closure,
    meet_closure,
    up_set,
)

POSITIVE_DEFINITE = "positive-definite"
NOT_POSITIVE_DEFINITE = "not-positive-definite"
NOT_APPLICABLE = "not-applicable"


@dataclass(frozen=True)
class PDReport:
    """Verdict, the rule that produced it, and a re-checkable certificate."""

    verdict: str
    method: str
    certificate: dict = field(default_factory=dict)

    @property
    def is_positive_definite(self) -> bool:
        return self.verdict == POSITIVE_DEFINITE


def pd_oracle(m: SymMatrix, tol=0) -> PDReport:
    """Decide definiteness from the leading principal minors.

    The minors fall out of swap-free fraction-free elimination, so the test
    is exact on rational matrices.  On float matrices the comparisons are
    against ``tol``; rounding near singularity is the caller's risk.
    A refutation certifies itself by the first minor at or below ``tol``.
    """
    n = m.n
    work = [list(row) for row in m.entries]
    prev = 1
    minors = []
    for k in range(n):
        pivot = work[k][k]
        minors.append(pivot)
        if not pivot > tol:
            return PDReport(
                NOT_POSITIVE_DEFINITE,
                "oracle",
                {
                    "minors": tuple(minors),
                    "minor_index": k + 1,
                    "minor_value": pivot,
                },
            )
        if k + 1 < n:
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    work[i][j] = (work[i][j] * pivot - work[i][k] * work[k][j]) / prev
                work[i][k] = 0
            prev = pivot
    return PDReport(POSITIVE_DEFINITE, "oracle", {"minors": tuple(minors)})


def _sign_test(s: Subset, f: PosetFunction, kind: str) -> PDReport:
    method = "T3.1" if kind == "meet" else "T3.2"
    try:
        closed = is_meet_closed(s) if kind == "meet" else is_join_closed(s)
    except (NoMeetError, NoJoinError) as exc:
        return PDReport(NOT_APPLICABLE, method, {"reason": str(exc)})
    if not closed:
        word = "meet" if kind == "meet" else "join"
        return PDReport(
            NOT_APPLICABLE, method, {"reason": f"the set is not {word} closed"}
        )
    vec = psi(s, f) if kind == "meet" else phi(s, f)
    cert = {"kind": kind, "masses": vec.values, "support": s.labels}
    bad = [k for k, value in enumerate(vec.values) if not value > 0]
    if bad:
        # The witness minor must contain exactly one nonpositive mass: the
        # first one for leading minors, the last one for trailing minors.
        if kind == "meet":
            k = bad[0]
            cert["failing_index"] = k
            cert["minor_side"] = "leading"
            cert["minor_index"] = k + 1
        else:
            k = bad[-1]
            cert["failing_index"] = k
            cert["minor_side"] = "trailing"
            cert["minor_index"] = len(s) - k
        return PDReport(NOT_POSITIVE_DEFINITE, method, cert)
    return PDReport(POSITIVE_DEFINITE, method, cert)


def pd_meet_closed(s: Subset, f: PosetFunction) -> PDReport:
    """Exact test on a meet closed set: positive definite iff all bottom-up
    masses over the set itself are positive.  Not applicable otherwise."""
    return _sign_test(s, f, "meet")


def pd_join_closed(s: Subset, f: PosetFunction) -> PDReport:
    """Dual of :func:`pd_meet_closed` for the join matrix, via top-down
    masses; positive definite iff all of them are positive."""
    return _sign_test(s, f, "join")


def pd_superset_sufficient(s: Subset, d, f: PosetFunction, kind: str = "meet") -> PDReport:
    """Sufficient test through a closed superset.

    If every mass of ``f`` over a meet closed superset ``d`` is positive, the
    meet matrix of ``s`` is positive definite (dually for join).  Nonpositive
    masses prove nothing; the verdict is then ``not-applicable``.
    """
    if isinstance(d, ClosureResult):
        kind = d.kind
        d = d.subset
    if kind not in ("meet", "join"):
        raise ValueError("kind must be 'meet' or 'join'")
    method = "C3.4" if kind == "meet" else "C3.6"
    if s.parent != d.parent:
        raise ValueError("both subsets must share one ambient poset")
    dmask = d.member_mask()
    outside = [s.parent.labels[m] for m in s.members if not (dmask >> m) & 1]
    if outside:
        raise NotSupersetError(
            "superset does not contain: " + ", ".join(map(str, outside))
        )
    closed = is_meet_closed(d) if kind == "meet" else is_join_closed(d)
    if not closed:
        word = "meet" if kind == "meet" else "join"
        raise NotClosedError(f"the superset is not {word} closed")
    vec = psi(d, f) if kind == "meet" else phi(d, f)
    cert = {"kind": kind, "masses": vec.values, "support": d.labels}
    nonpositive = tuple(k for k, v in enumerate(vec.values) if not v > 0)
    if nonpositive:
        cert["nonpositive_indices"] = nonpositive
        return PDReport(NOT_APPLICABLE, method, cert)
    return PDReport(POSITIVE_DEFINITE, method, cert)


def pd_tree(s: Subset, f: PosetFunction, kind: str = "meet") -> PDReport:
    """Sufficient test for tree sets.

    A meet-tree set with ``f`` positive and strictly order-preserving on the
    meet closure has a positive definite meet matrix; dually a join-tree set
    with ``f`` positive and strictly order-reversing on the join closure.
    Any failed hypothesis yields ``not-applicable`` naming the failure.
    """
    if kind not in ("meet", "join"):
        raise ValueError("kind must be 'meet' or 'join'")
    try:
        c = meet_closure(s) if kind == "meet" else join_closure(s)
    except (NoMeetError, NoJoinError) as exc:
        return PDReport(NOT_APPLICABLE, "T4.4", {"failed_hypothesis": str(exc)})
    tree = is_wedge_tree_set(s) if kind == "meet" else is_vee_tree_set(s)
    if not tree:
        name = "meet-tree set" if kind == "meet" else "join-tree set"
        return PDReport(
            NOT_APPLICABLE, "T4.4", {"failed_hypothesis": f"the set is not a {name}"}
        )
    if kind == "meet":
        monotone = f.is_order_preserving(strict=True, within=c.subset)
        requirement = "strictly order-preserving on the meet closure"
    else:
        monotone = f.is_order_reversing(strict=True, within=c.subset)
        requirement = "strictly order-reversing on the join closure"
    if not monotone:
        return PDReport(
            NOT_APPLICABLE, "T4.4", {"failed_hypothesis": f"f is not {requirement}"}
        )
    if not f.is_positive(within=c.subset):
        return PDReport(
            NOT_APPLICABLE,
            "T4.4",
            {"failed_hypothesis": "f is not positive on the closure"},
        )
    cert = {"kind": kind, "support": c.subset.labels}
    try:
        vec = psi(c.subset, f) if kind == "meet" else phi(c.subset, f)
        cert["masses"] = vec.values
    except ExactArithmeticError:
        cert["hypotheses_only"] = True
    return PDReport(POSITIVE_DEFINITE, "T4.4", cert)


def monotonicity_from_pd(s: Subset, f: PosetFunction) -> bool:
    """Read monotonicity off a positive definite meet matrix.

    Requires the first listed member to be the minimum of the set, the Hasse
    diagram of the set itself to be a tree, and the meet matrix to be
    positive definite; under those preconditions, returns whether ``f`` is
    strictly order-preserving and positive on the set (which the theory
    guarantees).  A failed precondition raises :class:`PreconditionError`.
    """
    p = s.parent
    first = min(s.members)
    if any(not p.leq(first, m) for m in s.members):
        raise PreconditionError("the set has no minimum element")
    if not cover_graph(s.restrict()).is_tree():
        raise PreconditionError("the Hasse diagram of the set is not a tree")
    verdict = pd_oracle(meet_matrix(s, f)).verdict
    if verdict != POSITIVE_DEFINITE:
        raise PreconditionError("the meet matrix is not positive definite")
    return f.is_order_preserving(strict=True, within=s) and f.is_positive(within=s)


def structure_flags(s: Subset) -> dict:
    """Structural classification of a set; ``None`` marks an undefined test."""
    flags = {}
    probes = (
        ("meet_closed", is_meet_closed),
        ("join_closed", is_join_closed),
        ("chain", is_chain),
        ("wedge_tree_set", is_wedge_tree_set),
        ("vee_tree_set", is_vee_tree_set),
        ("a_set", is_A_set),
    )
    for name, probe in probes:
        try:
            flags[name] = probe(s)
        except (NoMeetError, NoJoinError):
            flags[name] = None
    return flags


def classify_and_test(s: Subset, f: PosetFunction, kind: str = "meet") -> PDReport:
    """Decide definiteness by the cheapest applicable rule.

    The closed-set sign test is tried first (it decides both ways when it
    applies), then the superset-mass test over the closure and over the full
    down-set (up-set), then the tree rule, and finally the minor oracle,
    which always decides.  ``method`` records the rule that settled it.
    Routes that need exact values are skipped for float-valued functions.
    """
    if kind not in ("meet", "join"):
        raise ValueError("kind must be 'meet' or 'join'")
    skippable = (
        ExactArithmeticError,
        MissingValueError,
        NoMeetError,
        NoJoinError,
        NotClosedError,
        NotSupersetError,
    )
    try:
        report = pd_meet_closed(s, f) if kind == "meet" else pd_join_closed(s, f)
        if report.verdict != NOT_APPLICABLE:
            return report
    except skippable:
        pass

    candidates = []
    try:
        candidates.append(
            meet_closure(s).subset if kind == "meet" else join_closure(s).subset
        )
    except (NoMeetError, NoJoinError):
        pass
    try:
        wide = down_set(s) if kind == "meet" else up_set(s)
        if all(wide.members != c.members for c in candidates):
            candidates.append(wide)
    except (NoMeetError, NoJoinError):
        pass
    for d in candidates:
        try:
            report = pd_superset_sufficient(s, d, f, kind)
        except skippable:
            continue
        if report.verdict == POSITIVE_DEFINITE:
            return report

    try:
        report = pd_tree(s, f, kind)
        if report.verdict == POSITIVE_DEFINITE:
            return report
    except skippable:
        pass

    matrix = meet_matrix(s, f) if kind == "meet" else join_matrix(s, f)
    return pd_oracle(matrix)
