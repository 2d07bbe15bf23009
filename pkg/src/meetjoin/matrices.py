"""Meet and join matrices, incidence factorizations, exact determinants.

The meet matrix of a listed set has ``f(x_i meet x_j)`` at entry ``(i, j)``,
with the meet taken in the ambient poset; the join matrix is the dual.  Both
factor through 0/1 incidence matrices against any superset containing the
relevant meets or joins, with the mass vectors on the diagonal, and on closed
sets the determinant collapses to the product of the masses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import NotClosedError, NotSupersetError
from .mobius import PosetFunction, phi, psi
from .poset import Subset, is_join_closed, is_meet_closed, join, meet


def _coerce_entry(value):
    if isinstance(value, bool):
        raise TypeError("boolean is not a matrix entry")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError("matrix entries must be finite")
        return value
    raise TypeError(f"unsupported matrix entry {value!r}")


@dataclass(frozen=True)
class SymMatrix:
    """An immutable symmetric matrix with rational or float entries."""

    entries: tuple[tuple, ...]

    def __post_init__(self):
        rows = tuple(tuple(_coerce_entry(v) for v in row) for row in self.entries)
        n = len(rows)
        for row in rows:
            if len(row) != n:
                raise ValueError("matrix must be square")
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise ValueError(f"matrix is not symmetric at ({i}, {j})")
        object.__setattr__(self, "entries", rows)

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def is_exact(self) -> bool:
        return all(isinstance(v, Fraction) for row in self.entries for v in row)

    def entry(self, i: int, j: int):
        return self.entries[i][j]

    def to_float(self) -> list[list[float]]:
        return [[float(v) for v in row] for row in self.entries]

    def trace(self):
        return sum((self.entries[i][i] for i in range(self.n)), Fraction(0)) \
            if self.is_exact else sum(float(self.entries[i][i]) for i in range(self.n))

    def leading(self, k: int) -> "SymMatrix":
        if not 1 <= k <= self.n:
            raise ValueError("leading minor size out of range")
        return SymMatrix(tuple(row[:k] for row in self.entries[:k]))

    def permuted(self, perm) -> "SymMatrix":
        """Re-index rows and columns; new position k holds old index perm[k]."""
        perm = tuple(perm)
        if sorted(perm) != list(range(self.n)):
            raise ValueError("not a permutation")
        return SymMatrix(
            tuple(tuple(self.entries[a][b] for b in perm) for a in perm)
        )


@dataclass(frozen=True)
class IncMatrix:
    """A 0/1 incidence pattern between a listed set and a reference set."""

    rows: int
    cols: int
    bits: tuple[tuple[int, ...], ...]

    def row_mask(self, i: int) -> int:
        mask = 0
        for j, bit in enumerate(self.bits[i]):
            if bit:
                mask |= 1 << j
        return mask


@dataclass(frozen=True)
class DiagMatrix:
    """A diagonal matrix, stored as its diagonal."""

    diagonal: tuple


def _check_same_parent(s: Subset, f: PosetFunction) -> None:
    if s.parent is not f.poset and s.parent != f.poset:
        raise ValueError("subset and function live on different posets")


def meet_matrix(s: Subset, f: PosetFunction) -> SymMatrix:
    """The matrix with ``f`` of the pairwise meets of ``s`` as entries."""
    _check_same_parent(s, f)
    ms = s.members
    n = len(ms)
    rows = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            value = f.values[meet(s.parent, ms[i], ms[j])]
            rows[i][j] = rows[j][i] = value
    return SymMatrix(tuple(tuple(row) for row in rows))


def join_matrix(s: Subset, f: PosetFunction) -> SymMatrix:
    """The matrix with ``f`` of the pairwise joins of ``s`` as entries."""
    _check_same_parent(s, f)
    ms = s.members
    n = len(ms)
    rows = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            value = f.values[join(s.parent, ms[i], ms[j])]
            rows[i][j] = rows[j][i] = value
    return SymMatrix(tuple(tuple(row) for row in rows))


def incidence_matrix(s: Subset, d: Subset, kind: str = "meet") -> IncMatrix:
    """0/1 pattern relating members of ``s`` to members of ``d``.

    For ``kind="meet"`` entry ``(i, j)`` marks ``d_j`` below ``x_i``; for
    ``kind="join"`` it marks ``d_j`` above ``x_i``.
    """
    if kind not in ("meet", "join"):
        raise ValueError("kind must be 'meet' or 'join'")
    if s.parent != d.parent:
        raise ValueError("both subsets must share one ambient poset")
    p = s.parent
    bits = []
    for x in s.members:
        if kind == "meet":
            bits.append(tuple(1 if p.leq(dj, x) else 0 for dj in d.members))
        else:
            bits.append(tuple(1 if p.leq(x, dj) else 0 for dj in d.members))
    return IncMatrix(len(s.members), len(d.members), tuple(bits))


def _require_covering(s: Subset, d: Subset, kind: str) -> None:
    bound = meet if kind == "meet" else join
    dmask = d.member_mask()
    missing = []
    for m in s.members:
        if not (dmask >> m) & 1:
            missing.append(s.parent.labels[m])
    ms = s.members
    for a in range(len(ms)):
        for b in range(a + 1, len(ms)):
            v = bound(s.parent, ms[a], ms[b])
            if not (dmask >> v) & 1:
                lb = s.parent.labels[v]
                if lb not in missing:
                    missing.append(lb)
    if missing:
        word = "meets" if kind == "meet" else "joins"
        raise NotSupersetError(
            f"reference set must contain the members and their {word}; "
            "missing: " + ", ".join(map(str, missing))
        )


def factored_meet_matrix(s: Subset, d: Subset, f: PosetFunction) -> SymMatrix:
    """Assemble the meet matrix as incidence * diag(psi over d) * incidence^T.

    ``d`` must contain the members of ``s`` and all their pairwise meets; it
    does not need to be meet closed.  The result equals
    :func:`meet_matrix` entrywise, in exact arithmetic.
    """
    _check_same_parent(s, f)
    _require_covering(s, d, "meet")
    masses = psi(d, f).values
    inc = incidence_matrix(s, d, "meet")
    row_masks = [inc.row_mask(i) for i in range(inc.rows)]
    n = len(s.members)
    rows = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            acc = Fraction(0)
            shared = row_masks[i] & row_masks[j]
            while shared:
                low = shared & -shared
                acc += masses[low.bit_length() - 1]
                shared ^= low
            rows[i][j] = rows[j][i] = acc
    return SymMatrix(tuple(tuple(row) for row in rows))


def factored_join_matrix(s: Subset, b: Subset, f: PosetFunction) -> SymMatrix:
    """Dual of :func:`factored_meet_matrix`, with phi masses over ``b``."""
    _check_same_parent(s, f)
    _require_covering(s, b, "join")
    masses = phi(b, f).values
    inc = incidence_matrix(s, b, "join")
    row_masks = [inc.row_mask(i) for i in range(inc.rows)]
    n = len(s.members)
    rows = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            acc = Fraction(0)
            shared = row_masks[i] & row_masks[j]
            while shared:
                low = shared & -shared
                acc += masses[low.bit_length() - 1]
                shared ^= low
            rows[i][j] = rows[j][i] = acc
    return SymMatrix(tuple(tuple(row) for row in rows))


def mass_diagonal(d: Subset, f: PosetFunction, kind: str = "meet") -> DiagMatrix:
    """The diagonal factor of the incidence factorization."""
    vec = psi(d, f) if kind == "meet" else phi(d, f)
    return DiagMatrix(vec.values)


def det_closed(s: Subset, f: PosetFunction, kind: str = "meet") -> Fraction:
    """Determinant of the meet (join) matrix of a closed set.

    On a meet closed set the factorization is square and triangular, so the
    determinant is the product of the bottom-up masses; dually with the
    top-down masses on a join closed set.
    """
    if kind == "meet":
        if not is_meet_closed(s):
            raise NotClosedError("the set is not meet closed")
        masses = psi(s, f).values
    elif kind == "join":
        if not is_join_closed(s):
            raise NotClosedError("the set is not join closed")
        masses = phi(s, f).values
    else:
        raise ValueError("kind must be 'meet' or 'join'")
    out = Fraction(1)
    for v in masses:
        out *= v
    return out


def _det_exact(rows: list[list[Fraction]]) -> Fraction:
    """Fraction-free elimination with row pivoting."""
    n = len(rows)
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if rows[k][k] == 0:
            for r in range(k + 1, n):
                if rows[r][k] != 0:
                    rows[k], rows[r] = rows[r], rows[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        pivot = rows[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                rows[i][j] = (rows[i][j] * pivot - rows[i][k] * rows[k][j]) / prev
            rows[i][k] = Fraction(0)
        prev = pivot
    return sign * rows[n - 1][n - 1]


def _det_float(rows: list[list[float]]) -> float:
    n = len(rows)
    sign = 1.0
    det = 1.0
    for k in range(n):
        pivot_row = max(range(k, n), key=lambda r: abs(rows[r][k]))
        if rows[pivot_row][k] == 0.0:
            return 0.0
        if pivot_row != k:
            rows[k], rows[pivot_row] = rows[pivot_row], rows[k]
            sign = -sign
        pivot = rows[k][k]
        det *= pivot
        for i in range(k + 1, n):
            factor = rows[i][k] / pivot
            for j in range(k, n):
                rows[i][j] -= factor * rows[k][j]
    return sign * det


def det_general(m: SymMatrix):
    """Determinant of any symmetric matrix; exact whenever the entries are."""
    if m.is_exact:
        return _det_exact([list(row) for row in m.entries])
    return _det_float(m.to_float())
