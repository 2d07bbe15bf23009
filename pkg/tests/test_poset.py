import math
import random

import pytest

from meetjoin import (
    CharacterizationMismatch,
    CycleError,
    DuplicateError,
    FinitePoset,
    NoJoinError,
    NoMeetError,
    Subset,
    build_poset,
    cover_graph,
    divisibility_poset,
    divisors,
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
from support import (
    forked_meet_tree,
    random_poset,
    random_subset,
    random_tree_poset,
    spine_meet_tree,
)


def test_build_poset_reorders_to_linear_extension():
    # 3 sits below 1 and 2, so it must come first after sorting
    p = build_poset(3, [(3, 1), (3, 2)])
    assert p.labels[0] == 3
    assert p.leq(0, 1) and p.leq(0, 2)
    assert not p.leq(1, 2) and not p.leq(2, 1)


def test_indexing_is_linear_extension_randomized():
    rng = random.Random(401)
    for _ in range(60):
        p = random_poset(rng)
        for i in range(p.n):
            for j in range(p.n):
                if p.leq(i, j):
                    assert i <= j


def test_build_poset_takes_transitive_closure():
    p = build_poset(3, [(1, 2), (2, 3)])
    assert p.leq(p.index_of(1), p.index_of(3))


def test_cycle_raises():
    with pytest.raises(CycleError):
        build_poset(2, [(1, 2), (2, 1)])


def test_pair_out_of_range():
    with pytest.raises(IndexError):
        build_poset(2, [(1, 3)])


def test_duplicate_labels_rejected():
    with pytest.raises(DuplicateError):
        build_poset(2, [(1, 2)], labels=("a", "a"))


def test_meet_join_match_gcd_lcm():
    rng = random.Random(402)
    for _ in range(25):
        m = rng.choice([12, 30, 36, 60, 72, 210])
        p = divisibility_poset(divisors(m))
        for i in range(p.n):
            for j in range(p.n):
                a, b = p.labels[i], p.labels[j]
                assert p.labels[meet(p, i, j)] == math.gcd(a, b)
                assert p.labels[join(p, i, j)] == math.lcm(a, b)


def test_no_meet_and_no_join():
    # two incomparable points: no common bound either way
    p = build_poset(2, [])
    with pytest.raises(NoMeetError):
        meet(p, 0, 1)
    with pytest.raises(NoJoinError):
        join(p, 0, 1)


def test_meet_closure_is_meet_closed_and_contains_set():
    rng = random.Random(403)
    for _ in range(80):
        p = random_poset(rng)
        s = random_subset(rng, p)
        try:
            c = meet_closure(s)
        except NoMeetError:
            continue
        assert set(s.members) <= set(c.subset.members)
        assert is_meet_closed(c.subset)
        again = meet_closure(c.subset)
        assert again.subset.members == c.subset.members


def test_join_closure_dual():
    rng = random.Random(404)
    for _ in range(80):
        p = random_poset(rng)
        s = random_subset(rng, p)
        try:
            c = join_closure(s)
        except NoJoinError:
            continue
        assert set(s.members) <= set(c.subset.members)
        assert is_join_closed(c.subset)


def test_closure_members_are_pairwise_meets():
    # nothing beyond s and products of its pairwise meets is added
    rng = random.Random(405)
    for _ in range(40):
        p = random_poset(rng)
        s = random_subset(rng, p)
        try:
            c = meet_closure(s)
        except NoMeetError:
            continue
        got = set(c.subset.members)
        grown = set(s.members)
        changed = True
        while changed:
            changed = False
            for a in list(grown):
                for b in list(grown):
                    m = meet(p, a, b)
                    if m not in grown:
                        grown.add(m)
                        changed = True
        assert got == grown


def test_cover_graph_of_divisor_lattice_of_30():
    p = divisibility_poset(divisors(30))
    g = cover_graph(p)
    assert len(g.edges) == 12
    # covers in a divisor lattice are prime-ratio steps
    for i, j in g.edges:
        ratio = p.labels[j] // p.labels[i]
        assert p.labels[j] % p.labels[i] == 0
        assert ratio in (2, 3, 5)


def test_chain_detection():
    p = total_order_poset((3, 7, 9))
    assert is_chain(Subset.whole(p))
    q = build_poset(3, [(1, 2), (1, 3)])
    assert not is_chain(Subset.whole(q))
    assert is_chain(Subset.of_labels(q, [1, 2]))


def test_tree_characterizations_never_disagree():
    rng = random.Random(406)
    for _ in range(150):
        p = random_poset(rng)
        s = random_subset(rng, p)
        try:
            is_wedge_tree_set(s)
        except NoMeetError:
            pass
        try:
            is_vee_tree_set(s)
        except NoJoinError:
            pass
        # CharacterizationMismatch escaping would fail the test by itself


def test_subsets_of_tree_orders_are_tree_sets():
    rng = random.Random(407)
    for _ in range(60):
        p = random_tree_poset(rng, rng.randint(2, 9))
        s = random_subset(rng, p)
        assert is_wedge_tree_set(s)


def test_forked_tree_fixture():
    _, s = forked_meet_tree()
    assert is_wedge_tree_set(s)
    assert not is_A_set(s)


def test_spine_fixture_is_a_set():
    _, s = spine_meet_tree()
    assert is_A_set(s)
    assert is_wedge_tree_set(s)


def test_a_set_implies_wedge_tree_set():
    rng = random.Random(408)
    hits = 0
    for _ in range(300):
        p = random_poset(rng)
        s = random_subset(rng, p)
        try:
            if is_A_set(s):
                hits += 1
                assert is_wedge_tree_set(s)
        except NoMeetError:
            continue
    assert hits > 20


def test_chains_are_a_sets():
    p = total_order_poset((1, 2, 3, 4))
    assert is_A_set(Subset.whole(p))


def test_dual_roundtrip_and_tree_duality():
    rng = random.Random(409)
    for _ in range(50):
        p = random_poset(rng)
        assert p.dual().dual() == p
        s = random_subset(rng, p)
        try:
            left = is_wedge_tree_set(s)
        except NoMeetError:
            continue
        try:
            right = is_vee_tree_set(s.dual())
        except NoJoinError:
            continue
        assert left == right


def test_down_set_and_up_set():
    p = divisibility_poset(divisors(12))
    s = Subset.of_labels(p, [4, 6])
    assert down_set(s).labels == (1, 2, 3, 4, 6)
    assert up_set(s).labels == (4, 6, 12)


def test_subset_rejects_bad_listing():
    p = total_order_poset((1, 2, 3))
    with pytest.raises(ValueError):
        Subset(p, (2, 0))  # 1 below 3, listed after it
    with pytest.raises(ValueError):
        Subset(p, ())
    with pytest.raises(ValueError):
        Subset(p, (0, 0))


def test_poset_is_immutable():
    p = total_order_poset((1, 2))
    with pytest.raises(AttributeError):
        p.n = 5


def test_restrict_keeps_order():
    rng = random.Random(410)
    for _ in range(30):
        p = random_poset(rng)
        s = random_subset(rng, p)
        q = s.restrict()
        for a in range(len(s)):
            for b in range(len(s)):
                assert q.leq(a, b) == p.leq(s.members[a], s.members[b])
