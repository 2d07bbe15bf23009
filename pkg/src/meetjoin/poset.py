"""Finite partial orders: construction, meets and joins, closures, classifiers.

Every poset here is stored under a linear extension, so ``x_i`` below ``x_j``
implies ``i <= j``.  That indexing convention is what makes the incidence
factorizations and the recursive mass computations in the sibling modules
triangular, and it is validated on every constructed instance.

The relation is kept as one down-set bitmask per element, which keeps meets,
covers and chain tests cheap at desk scale.  All types are immutable and all
functions are pure, so everything is safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import (
    CharacterizationMismatch,
    CycleError,
    DuplicateError,
    NoJoinError,
    NoMeetError,
)


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _reverse_mask(mask: int, n: int) -> int:
    out = 0
    for i in _bits(mask):
        out |= 1 << (n - 1 - i)
    return out


class FinitePoset:
    """An explicit partial order on ``n`` indexed elements.

    ``down_mask(j)`` holds one bit per element below or equal to ``x_j``.
    Antisymmetry is implied by the index convention (comparable elements are
    index-ordered), so construction only has to validate reflexivity,
    transitivity and the index convention itself.
    """

    __slots__ = ("n", "labels", "source_order", "_down", "_up")

    def __init__(self, down: Sequence[int], labels=None, source_order=None):
        down = tuple(down)
        n = len(down)
        if n == 0:
            raise ValueError("a poset needs at least one element")
        full = (1 << n) - 1
        for i, mask in enumerate(down):
            if not isinstance(mask, int) or mask < 0 or mask > full:
                raise ValueError(f"down mask {i} out of range")
            if not (mask >> i) & 1:
                raise ValueError(f"relation is not reflexive at index {i}")
            if mask >> (i + 1):
                raise ValueError(
                    "indexing violates the linear-extension convention "
                    f"at index {i}"
                )
        for j in range(n):
            for i in _bits(down[j]):
                if down[i] & ~down[j]:
                    raise ValueError(f"relation is not transitive at ({i}, {j})")
        if labels is None:
            labels = tuple(range(1, n + 1))
        else:
            labels = tuple(labels)
            if len(labels) != n:
                raise ValueError("labels length must match element count")
            if len(set(labels)) != n:
                raise DuplicateError("labels must be unique")
        up = [0] * n
        for j in range(n):
            for i in _bits(down[j]):
                up[i] |= 1 << j
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "source_order", source_order)
        object.__setattr__(self, "_down", down)
        object.__setattr__(self, "_up", tuple(up))

    def __setattr__(self, name, value):
        raise AttributeError("FinitePoset is immutable")

    @classmethod
    def from_leq(cls, rows: Sequence[Sequence[bool]], labels=None) -> "FinitePoset":
        """Build from a full boolean relation matrix (already index-compatible)."""
        masks = []
        for row in rows:
            mask = 0
            for j, flag in enumerate(row):
                if flag:
                    mask |= 1 << j
            masks.append(mask)
        n = len(masks)
        down = [0] * n
        for i in range(n):
            for j in range(n):
                if (masks[i] >> j) & 1:
                    down[j] |= 1 << i
        return cls(down, labels=labels)

    def leq(self, i: int, j: int) -> bool:
        """True when ``x_i`` is below or equal to ``x_j``."""
        return bool((self._down[j] >> i) & 1)

    def less(self, i: int, j: int) -> bool:
        return i != j and bool((self._down[j] >> i) & 1)

    def down_mask(self, i: int) -> int:
        return self._down[i]

    def up_mask(self, i: int) -> int:
        return self._up[i]

    def below(self, i: int) -> tuple[int, ...]:
        return tuple(_bits(self._down[i]))

    def above(self, i: int) -> tuple[int, ...]:
        return tuple(_bits(self._up[i]))

    def index_of(self, label) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise ValueError(f"label {label!r} not in poset") from None

    def dual(self) -> "FinitePoset":
        """The order-dual, re-indexed so the convention still holds."""
        n = self.n
        down = tuple(_reverse_mask(self._up[n - 1 - k], n) for k in range(n))
        return FinitePoset(down, labels=tuple(reversed(self.labels)))

    def __eq__(self, other):
        return (
            isinstance(other, FinitePoset)
            and self._down == other._down
            and self.labels == other.labels
        )

    def __hash__(self):
        return hash((self.n, self._down, self.labels))

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"FinitePoset(n={self.n}, labels={self.labels!r})"


def build_poset(n: int, relation: Iterable[tuple[int, int]], labels=None) -> FinitePoset:
    """Construct a poset from generating pairs.

    ``relation`` contains pairs ``(a, b)`` meaning element ``a`` is below
    element ``b``; both are 1-based positions in the input ordering, matching
    the on-disk poset format.  The reflexive-transitive closure is taken, a
    cycle raises :class:`CycleError`, and elements are re-indexed along a
    linear extension (stable sort by height, then input position).  The input
    position of each element survives in ``source_order`` and, when no labels
    are given, as the default label.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    down = [1 << i for i in range(n)]
    for a, b in relation:
        if not (1 <= a <= n and 1 <= b <= n):
            raise IndexError(f"pair ({a}, {b}) out of range for n={n}")
        down[b - 1] |= 1 << (a - 1)
    changed = True
    while changed:
        changed = False
        for j in range(n):
            acc = down[j]
            for i in _bits(acc):
                acc |= down[i]
            if acc != down[j]:
                down[j] = acc
                changed = True
    for j in range(n):
        for i in _bits(down[j]):
            if i != j and (down[i] >> j) & 1:
                raise CycleError(f"elements {i + 1} and {j + 1} lie on a cycle")

    # Longest-chain height; popcount of the down-set gives a topological order.
    topo = sorted(range(n), key=lambda j: down[j].bit_count())
    height = [0] * n
    for j in topo:
        best = 0
        for i in _bits(down[j]):
            if i != j:
                best = max(best, height[i] + 1)
        height[j] = best
    order = sorted(range(n), key=lambda j: (height[j], j))
    position = [0] * n
    for new, old in enumerate(order):
        position[old] = new
    new_down = [0] * n
    for old_j, mask in enumerate(down):
        acc = 0
        for old_i in _bits(mask):
            acc |= 1 << position[old_i]
        new_down[position[old_j]] = acc
    if labels is not None:
        labels = list(labels)
        if len(labels) != n:
            raise ValueError("labels length must match n")
        new_labels = tuple(labels[old] for old in order)
    else:
        new_labels = tuple(old + 1 for old in order)
    return FinitePoset(new_down, labels=new_labels, source_order=tuple(order))


def total_order_poset(labels: Sequence) -> FinitePoset:
    """The chain whose i-th element sits below every later one."""
    n = len(labels)
    return FinitePoset([(1 << (i + 1)) - 1 for i in range(n)], labels=tuple(labels))


@dataclass(frozen=True)
class Subset:
    """A nonempty selection of poset elements with a fixed listing.

    The listing must be compatible with the parent order: a member below
    another is listed first.  Canonical constructors list members by
    ascending parent index; reindexing by a monotone function may produce a
    different, still compatible, listing.
    """

    parent: FinitePoset
    members: tuple[int, ...]

    def __post_init__(self):
        members = tuple(self.members)
        object.__setattr__(self, "members", members)
        if not members:
            raise ValueError("a subset needs at least one member")
        if len(set(members)) != len(members):
            raise ValueError("subset members must be distinct")
        for m in members:
            if not (0 <= m < self.parent.n):
                raise IndexError(f"member index {m} out of range")
        for a in range(len(members)):
            for b in range(a + 1, len(members)):
                if self.parent.less(members[b], members[a]):
                    raise ValueError(
                        "listing is incompatible with the order: "
                        f"member {members[b]} lies below member {members[a]}"
                    )

    @classmethod
    def whole(cls, parent: FinitePoset) -> "Subset":
        return cls(parent, tuple(range(parent.n)))

    @classmethod
    def of_labels(cls, parent: FinitePoset, labels: Iterable) -> "Subset":
        members = sorted(parent.index_of(lb) for lb in labels)
        return cls(parent, tuple(members))

    @property
    def labels(self) -> tuple:
        return tuple(self.parent.labels[m] for m in self.members)

    def member_mask(self) -> int:
        mask = 0
        for m in self.members:
            mask |= 1 << m
        return mask

    def restrict(self) -> FinitePoset:
        """The induced subposet, indexed by the listing order."""
        k = len(self.members)
        down = [0] * k
        for b in range(k):
            for a in range(k):
                if self.parent.leq(self.members[a], self.members[b]):
                    down[b] |= 1 << a
        return FinitePoset(down, labels=self.labels)

    def canonical(self) -> "Subset":
        return Subset(self.parent, tuple(sorted(self.members)))

    def dual(self) -> "Subset":
        n = self.parent.n
        members = tuple(n - 1 - m for m in reversed(self.members))
        return Subset(self.parent.dual(), members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, index):
        return index in self.members


@dataclass(frozen=True)
class CoverGraph:
    """Hasse diagram edges ``(lower, upper)`` of a poset."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def is_tree(self) -> bool:
        """True when the undirected diagram is connected with n-1 edges."""
        if len(self.edges) != self.n - 1:
            return False
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n


@dataclass(frozen=True)
class ClosureResult:
    """A closure together with how the original set embeds into it."""

    subset: Subset
    closed: FinitePoset
    embed: tuple[int, ...]
    kind: str


def meet(p: FinitePoset, i: int, j: int) -> int:
    """Index of the greatest common lower bound of ``x_i`` and ``x_j``.

    The common lower bounds form a down-closed set; under the indexing
    convention its greatest element, when it exists, is its highest index.
    """
    clb = p.down_mask(i) & p.down_mask(j)
    if clb == 0:
        raise NoMeetError(
            f"{p.labels[i]!r} and {p.labels[j]!r} have no common lower bound"
        )
    top = clb.bit_length() - 1
    if p.down_mask(top) == clb:
        return top
    raise NoMeetError(
        f"{p.labels[i]!r} and {p.labels[j]!r} have no greatest common lower bound"
    )


def join(p: FinitePoset, i: int, j: int) -> int:
    """Index of the least common upper bound of ``x_i`` and ``x_j``."""
    cub = p.up_mask(i) & p.up_mask(j)
    if cub == 0:
        raise NoJoinError(
            f"{p.labels[i]!r} and {p.labels[j]!r} have no common upper bound"
        )
    bottom = (cub & -cub).bit_length() - 1
    if p.up_mask(bottom) == cub:
        return bottom
    raise NoJoinError(
        f"{p.labels[i]!r} and {p.labels[j]!r} have no least common upper bound"
    )


def _closure(s: Subset, kind: str) -> ClosureResult:
    p = s.parent
    bound = meet if kind == "meet" else join
    mask = s.member_mask()
    changed = True
    while changed:
        changed = False
        els = list(_bits(mask))
        for a in range(len(els)):
            for b in range(a + 1, len(els)):
                m = bound(p, els[a], els[b])
                if not (mask >> m) & 1:
                    mask |= 1 << m
                    changed = True
    members = tuple(_bits(mask))
    pos = {m: k for k, m in enumerate(members)}
    closed_subset = Subset(p, members)
    embed = tuple(pos[m] for m in s.members)
    return ClosureResult(
        subset=closed_subset, closed=closed_subset.restrict(), embed=embed, kind=kind
    )


def meet_closure(s: Subset) -> ClosureResult:
    """Smallest superset of ``s`` closed under pairwise meets."""
    return _closure(s, "meet")


def join_closure(s: Subset) -> ClosureResult:
    """Smallest superset of ``s`` closed under pairwise joins."""
    return _closure(s, "join")


def is_meet_closed(s: Subset) -> bool:
    """True when every pairwise meet of members is itself a member."""
    mask = s.member_mask()
    ms = s.members
    for a in range(len(ms)):
        for b in range(a + 1, len(ms)):
            if not (mask >> meet(s.parent, ms[a], ms[b])) & 1:
                return False
    return True


def is_join_closed(s: Subset) -> bool:
    """True when every pairwise join of members is itself a member."""
    mask = s.member_mask()
    ms = s.members
    for a in range(len(ms)):
        for b in range(a + 1, len(ms)):
            if not (mask >> join(s.parent, ms[a], ms[b])) & 1:
                return False
    return True


def down_set(s: Subset) -> Subset:
    """All ambient elements lying below some member."""
    mask = 0
    for m in s.members:
        mask |= s.parent.down_mask(m)
    return Subset(s.parent, tuple(_bits(mask)))


def up_set(s: Subset) -> Subset:
    """All ambient elements lying above some member."""
    mask = 0
    for m in s.members:
        mask |= s.parent.up_mask(m)
    return Subset(s.parent, tuple(_bits(mask)))


def cover_graph(p: FinitePoset) -> CoverGraph:
    """The transitive reduction of the strict order."""
    edges = []
    for j in range(p.n):
        for i in _bits(p.down_mask(j)):
            if i == j:
                continue
            between = p.down_mask(j) & p.up_mask(i)
            if between == (1 << i) | (1 << j):
                edges.append((i, j))
    return CoverGraph(p.n, tuple(sorted(edges)))


def _indices_form_chain(p: FinitePoset, indices: Sequence[int]) -> bool:
    # Sorted by index, consecutive comparability chains up by transitivity.
    idx = sorted(indices)
    return all(p.leq(idx[v], idx[v + 1]) for v in range(len(idx) - 1))


def is_chain(s: Subset) -> bool:
    """True when the members are pairwise comparable."""
    return _indices_form_chain(s.parent, s.members)


def _tree_characterizations(q: FinitePoset) -> tuple[bool, bool, bool, bool]:
    cg = cover_graph(q)
    as_tree = cg.is_tree()

    lower_counts = [0] * q.n
    for _, upper in cg.edges:
        lower_counts[upper] += 1
    covers_at_most_one = all(c <= 1 for c in lower_counts)

    down_sets_chains = all(
        _indices_form_chain(q, list(_bits(q.down_mask(x)))) for x in range(q.n)
    )

    bounded_pairs_comparable = True
    for x in range(q.n):
        for y in range(x + 1, q.n):
            if q.up_mask(x) & q.up_mask(y) and not q.leq(x, y):
                bounded_pairs_comparable = False
    return as_tree, covers_at_most_one, down_sets_chains, bounded_pairs_comparable


def is_wedge_tree_set(s: Subset) -> bool:
    """True when the Hasse diagram of the meet closure of ``s`` is a tree.

    Four equivalent formulations are evaluated independently on the closure:
    the diagram is a tree; every element covers at most one element; every
    principal down-set is a chain; elements with a common upper bound are
    comparable.  Disagreement raises :class:`CharacterizationMismatch`.
    """
    q = meet_closure(s).closed
    answers = _tree_characterizations(q)
    if len(set(answers)) != 1:
        raise CharacterizationMismatch(
            f"meet-tree characterizations disagree: {answers}"
        )
    return answers[0]


def _dual_tree_characterizations(q: FinitePoset) -> tuple[bool, bool, bool, bool]:
    cg = cover_graph(q)
    as_tree = cg.is_tree()

    upper_counts = [0] * q.n
    for lower, _ in cg.edges:
        upper_counts[lower] += 1
    covered_by_at_most_one = all(c <= 1 for c in upper_counts)

    up_sets_chains = all(
        _indices_form_chain(q, list(_bits(q.up_mask(x)))) for x in range(q.n)
    )

    bounded_pairs_comparable = True
    for x in range(q.n):
        for y in range(x + 1, q.n):
            if q.down_mask(x) & q.down_mask(y) and not q.leq(x, y):
                bounded_pairs_comparable = False
    return as_tree, covered_by_at_most_one, up_sets_chains, bounded_pairs_comparable


def is_vee_tree_set(s: Subset) -> bool:
    """Dual of :func:`is_wedge_tree_set`, over the join closure."""
    q = join_closure(s).closed
    answers = _dual_tree_characterizations(q)
    if len(set(answers)) != 1:
        raise CharacterizationMismatch(
            f"join-tree characterizations disagree: {answers}"
        )
    return answers[0]


def is_A_set(s: Subset) -> bool:
    """True when the meets of distinct members form a chain.

    Meets are taken in the ambient poset; the resulting set may overlap the
    members themselves.  Singletons qualify vacuously.
    """
    p = s.parent
    ms = s.members
    meets = set()
    for a in range(len(ms)):
        for b in range(a + 1, len(ms)):
            meets.add(meet(p, ms[a], ms[b]))
    return _indices_form_chain(p, sorted(meets))
