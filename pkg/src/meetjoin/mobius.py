"""Poset functions, the Moebius function, and their mass vectors.

``psi`` assigns every element of a listed set the mass its function value
adds on top of everything strictly below it inside the set; summing masses
over a principal down-set recovers the function.  ``phi`` is the top-down
dual.  These vectors are computed twice, once by the triangular recursion
and once through the Moebius function of the induced subposet, and the two
routes must agree exactly.  Everything here runs in exact rational
arithmetic; supplying floats raises :class:`ExactArithmeticError`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DuplicateError, ExactArithmeticError, MissingValueError
from .poset import FinitePoset, Subset, _bits


def _coerce(value):
    if isinstance(value, bool):
        raise TypeError("boolean is not a function value")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, float):
        return value
    raise TypeError(f"unsupported function value {value!r}")


@dataclass(frozen=True)
class PosetFunction:
    """A total real-valued function on the elements of one poset.

    Values are exact rationals wherever possible; floats are accepted so the
    spectral routines can work with irrational powers, and ``is_exact``
    reports which regime an instance is in.
    """

    poset: FinitePoset
    values: tuple

    def __post_init__(self):
        values = tuple(_coerce(v) for v in self.values)
        if len(values) != self.poset.n:
            raise ValueError("one value per poset element is required")
        object.__setattr__(self, "values", values)

    @classmethod
    def from_table(cls, poset: FinitePoset, table) -> "PosetFunction":
        """Bind a label -> value mapping; every element must be covered."""
        normalized = {}
        for key, value in table.items():
            key = str(key)
            if key in normalized:
                raise DuplicateError(f"duplicate value for label {key}")
            normalized[key] = value
        missing = [lb for lb in poset.labels if str(lb) not in normalized]
        if missing:
            raise MissingValueError(missing)
        known = {str(lb) for lb in poset.labels}
        unknown = sorted(set(normalized) - known)
        if unknown:
            raise ValueError("values given for unknown labels: " + ", ".join(unknown))
        return cls(poset, tuple(normalized[str(lb)] for lb in poset.labels))

    @classmethod
    def from_callable(cls, poset: FinitePoset, fn) -> "PosetFunction":
        return cls(poset, tuple(fn(lb) for lb in poset.labels))

    @classmethod
    def constant(cls, poset: FinitePoset, value) -> "PosetFunction":
        return cls(poset, (value,) * poset.n)

    def __getitem__(self, index: int):
        return self.values[index]

    @property
    def is_exact(self) -> bool:
        return all(isinstance(v, Fraction) for v in self.values)

    def float_view(self) -> tuple[float, ...]:
        return tuple(float(v) for v in self.values)

    def restrict(self, s: Subset) -> "PosetFunction":
        """The same function on the induced subposet of ``s``."""
        if s.parent is not self.poset and s.parent != self.poset:
            raise ValueError("subset belongs to a different poset")
        return PosetFunction(s.restrict(), tuple(self.values[m] for m in s.members))

    def _domain(self, within: Subset | None) -> tuple[int, ...]:
        if within is None:
            return tuple(range(self.poset.n))
        if within.parent is not self.poset and within.parent != self.poset:
            raise ValueError("subset belongs to a different poset")
        return within.members

    def is_order_preserving(self, strict: bool = False, within: Subset | None = None) -> bool:
        """x below y implies f(x) <= f(y); ``strict`` demands <."""
        idx = self._domain(within)
        p = self.poset
        for a in range(len(idx)):
            for b in range(len(idx)):
                if a != b and p.less(idx[a], idx[b]):
                    fa, fb = self.values[idx[a]], self.values[idx[b]]
                    if fa > fb or (strict and fa == fb):
                        return False
        return True

    def is_order_reversing(self, strict: bool = False, within: Subset | None = None) -> bool:
        """x below y implies f(x) >= f(y); ``strict`` demands >."""
        idx = self._domain(within)
        p = self.poset
        for a in range(len(idx)):
            for b in range(len(idx)):
                if a != b and p.less(idx[a], idx[b]):
                    fa, fb = self.values[idx[a]], self.values[idx[b]]
                    if fa < fb or (strict and fa == fb):
                        return False
        return True

    def is_positive(self, within: Subset | None = None) -> bool:
        return all(self.values[i] > 0 for i in self._domain(within))

    def is_nonnegative(self, within: Subset | None = None) -> bool:
        return all(self.values[i] >= 0 for i in self._domain(within))


@dataclass(frozen=True)
class MobiusTable:
    """The Moebius function of a poset as a dense integer table."""

    poset: FinitePoset
    mu: tuple[tuple[int, ...], ...]


def mobius_table(p: FinitePoset) -> MobiusTable:
    """Compute mu by the interval recursion and verify it inverts zeta.

    ``mu(a, b)`` is built by summing over the second argument; the check that
    zeta * mu is the identity sums over the first argument, so the two
    triangular routes are independent.
    """
    n = p.n
    mu = [[0] * n for _ in range(n)]
    for a in range(n):
        mu[a][a] = 1
        for b in _bits(p.up_mask(a)):
            if b == a:
                continue
            acc = 0
            for z in _bits(p.down_mask(b) & p.up_mask(a)):
                if z != b:
                    acc += mu[a][z]
            mu[a][b] = -acc
    for a in range(n):
        for c in _bits(p.up_mask(a)):
            total = 0
            for v in _bits(p.down_mask(c) & p.up_mask(a)):
                total += mu[v][c]
            assert total == (1 if a == c else 0), "mu does not invert zeta"
    return MobiusTable(p, tuple(tuple(row) for row in mu))


def _exact_values(d: Subset, f: PosetFunction) -> list[Fraction]:
    if d.parent is not f.poset and d.parent != f.poset:
        raise ValueError("subset and function live on different posets")
    vals = [f.values[m] for m in d.members]
    if any(not isinstance(v, Fraction) for v in vals):
        raise ExactArithmeticError("mass vectors require exact rational values")
    return vals


@dataclass(frozen=True)
class PsiVector:
    """Bottom-up masses of a function over a listed set."""

    subset: Subset
    values: tuple[Fraction, ...]

    @property
    def labels(self) -> tuple:
        return self.subset.labels

    def __getitem__(self, k: int) -> Fraction:
        return self.values[k]

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return len(self.values)

    def resums_to(self, f: PosetFunction) -> bool:
        """Check that summing masses over principal down-sets recovers f."""
        p = self.subset.parent
        ms = self.subset.members
        for k in range(len(ms)):
            total = sum(
                (self.values[v] for v in range(len(ms)) if p.leq(ms[v], ms[k])),
                Fraction(0),
            )
            if total != f.values[ms[k]]:
                return False
        return True


@dataclass(frozen=True)
class PhiVector:
    """Top-down masses of a function over a listed set."""

    subset: Subset
    values: tuple[Fraction, ...]

    @property
    def labels(self) -> tuple:
        return self.subset.labels

    def __getitem__(self, k: int) -> Fraction:
        return self.values[k]

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return len(self.values)

    def resums_to(self, f: PosetFunction) -> bool:
        """Check that summing masses over principal up-sets recovers f."""
        p = self.subset.parent
        ms = self.subset.members
        for k in range(len(ms)):
            total = sum(
                (self.values[v] for v in range(len(ms)) if p.leq(ms[k], ms[v])),
                Fraction(0),
            )
            if total != f.values[ms[k]]:
                return False
        return True


def psi(d: Subset, f: PosetFunction) -> PsiVector:
    """Bottom-up mass of ``f`` over the listed set ``d``.

    The recursion subtracts the masses of everything strictly below inside
    ``d``; the listing convention makes it triangular.  The result is
    cross-checked against the Moebius-weighted sum on the induced subposet.
    """
    vals = _exact_values(d, f)
    p = d.parent
    ms = d.members
    k = len(ms)
    out: list[Fraction] = []
    for j in range(k):
        acc = vals[j]
        for v in range(j):
            if p.less(ms[v], ms[j]):
                acc -= out[v]
        out.append(acc)
    table = mobius_table(d.restrict()).mu
    r = d.restrict()
    for j in range(k):
        alt = sum(
            (vals[v] * table[v][j] for v in range(k) if r.leq(v, j)), Fraction(0)
        )
        assert alt == out[j], "mass recursion disagrees with Moebius sum"
    return PsiVector(d, tuple(out))


def phi(b: Subset, f: PosetFunction) -> PhiVector:
    """Top-down mass of ``f`` over the listed set ``b``; dual of :func:`psi`."""
    vals = _exact_values(b, f)
    p = b.parent
    ms = b.members
    k = len(ms)
    out: list[Fraction | None] = [None] * k
    for j in range(k - 1, -1, -1):
        acc = vals[j]
        for v in range(j + 1, k):
            if p.less(ms[j], ms[v]):
                acc -= out[v]
        out[j] = acc
    table = mobius_table(b.restrict()).mu
    r = b.restrict()
    for j in range(k):
        alt = sum(
            (vals[v] * table[j][v] for v in range(k) if r.leq(j, v)), Fraction(0)
        )
        assert alt == out[j], "mass recursion disagrees with Moebius sum"
    return PhiVector(b, tuple(out))
