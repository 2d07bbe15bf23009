import math
import random
from fractions import Fraction

import pytest

from meetjoin import (
    NoJoinError,
    NoMeetError,
    NotClosedError,
    NotSupersetError,
    PosetFunction,
    Subset,
    SymMatrix,
    det_closed,
    det_general,
    divisibility_poset,
    divisor_down_set,
    divisors,
    down_set,
    factored_join_matrix,
    factored_meet_matrix,
    incidence_matrix,
    join_closure,
    join_matrix,
    meet_closure,
    meet_matrix,
    up_set,
)
from support import (
    cofactor_det,
    random_function,
    random_join_closed_subset,
    random_meet_closed_subset,
    random_poset,
    random_rational,
    random_subset,
)


def test_meet_matrix_is_gcd_table():
    p = divisibility_poset(divisors(60))
    s = Subset.of_labels(p, [4, 6, 10, 60])
    f = PosetFunction.from_callable(p, Fraction)
    m = meet_matrix(s, f)
    xs = [4, 6, 10, 60]
    for i in range(4):
        for j in range(4):
            assert m.entry(i, j) == math.gcd(xs[i], xs[j])


def test_join_matrix_is_lcm_table():
    p = divisibility_poset(divisors(60))
    s = Subset.of_labels(p, [2, 5, 6])
    f = PosetFunction.from_callable(p, Fraction)
    m = join_matrix(s, f)
    xs = [2, 5, 6]
    for i in range(3):
        for j in range(3):
            assert m.entry(i, j) == math.lcm(xs[i], xs[j])


def test_sym_matrix_validation():
    with pytest.raises(ValueError):
        SymMatrix(((1, 2), (3, 4)))
    with pytest.raises(ValueError):
        SymMatrix(((1, 2),))
    m = SymMatrix(((1, 2), (2, 5)))
    assert m.n == 2 and m.is_exact
    assert m.leading(1).entries == ((Fraction(1),),)
    assert m.trace() == 6


def test_incidence_matrix_semantics():
    p = divisibility_poset(divisors(30))
    s = Subset.of_labels(p, [6, 10, 15])
    d = down_set(s)
    e = incidence_matrix(s, d, "meet")
    for i, xi in enumerate(s.members):
        for j, dj in enumerate(d.members):
            assert e.bits[i][j] == (1 if p.leq(dj, xi) else 0)
    b = up_set(s)
    e2 = incidence_matrix(s, b, "join")
    for i, xi in enumerate(s.members):
        for j, bj in enumerate(b.members):
            assert e2.bits[i][j] == (1 if p.leq(xi, bj) else 0)


def test_factored_meet_matrix_equals_direct():
    rng = random.Random(601)
    done = 0
    while done < 120:
        p = random_poset(rng)
        s = random_subset(rng, p)
        f = random_function(rng, p)
        try:
            d = meet_closure(s).subset
        except NoMeetError:
            continue
        assert factored_meet_matrix(s, d, f) == meet_matrix(s, f)
        # any larger support works too
        assert factored_meet_matrix(s, down_set(s), f) == meet_matrix(s, f)
        done += 1


def test_factored_join_matrix_equals_direct():
    rng = random.Random(602)
    done = 0
    while done < 120:
        p = random_poset(rng)
        s = random_subset(rng, p)
        f = random_function(rng, p)
        try:
            b = join_closure(s).subset
        except NoJoinError:
            continue
        assert factored_join_matrix(s, b, f) == join_matrix(s, f)
        assert factored_join_matrix(s, up_set(s), f) == join_matrix(s, f)
        done += 1


def test_factored_requires_covering_support():
    p = divisibility_poset(divisors(30))
    s = Subset.of_labels(p, [6, 10, 15])
    f = PosetFunction.from_callable(p, Fraction)
    with pytest.raises(NotSupersetError):
        factored_meet_matrix(s, Subset.of_labels(p, [6, 10, 15]), f)


def test_det_closed_matches_elimination():
    rng = random.Random(603)
    done = 0
    while done < 120:
        p = random_poset(rng)
        f = random_function(rng, p)
        try:
            s = random_meet_closed_subset(rng, p)
        except NoMeetError:
            continue
        assert det_closed(s, f, "meet") == det_general(meet_matrix(s, f))
        done += 1


def test_det_closed_join_side():
    rng = random.Random(604)
    done = 0
    while done < 120:
        p = random_poset(rng)
        f = random_function(rng, p)
        try:
            s = random_join_closed_subset(rng, p)
        except NoJoinError:
            continue
        assert det_closed(s, f, "join") == det_general(join_matrix(s, f))
        done += 1


def test_det_closed_rejects_open_sets():
    p = divisibility_poset(divisors(30))
    s = Subset.of_labels(p, [6, 10, 15])
    f = PosetFunction.from_callable(p, Fraction)
    with pytest.raises(NotClosedError):
        det_closed(s, f, "meet")


def test_worked_matrix_minors_and_det():
    lat = divisor_down_set([6, 10, 15])
    f = PosetFunction.from_table(
        lat.poset, {"1": 0, "2": -1, "3": 3, "5": -2, "6": 5, "10": 2, "15": 3}
    )
    m = meet_matrix(lat.subset_of([6, 10, 15]), f)
    assert m.entries == (
        (Fraction(5), Fraction(-1), Fraction(3)),
        (Fraction(-1), Fraction(2), Fraction(-2)),
        (Fraction(3), Fraction(-2), Fraction(3)),
    )
    minors = [det_general(m.leading(k)) for k in (1, 2, 3)]
    assert minors == [5, 9, 1]
    assert det_general(m) == 1


def test_det_general_matches_cofactor_oracle():
    rng = random.Random(605)
    for _ in range(60):
        n = rng.randint(1, 5)
        rows = [[random_rational(rng) for _ in range(n)] for _ in range(n)]
        # symmetrize so SymMatrix accepts it
        for i in range(n):
            for j in range(i + 1, n):
                rows[j][i] = rows[i][j]
        m = SymMatrix(tuple(tuple(r) for r in rows))
        assert det_general(m) == cofactor_det(rows)


def test_float_det_close_to_exact():
    rng = random.Random(606)
    for _ in range(40):
        n = rng.randint(1, 5)
        rows = [[random_rational(rng) for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                rows[j][i] = rows[i][j]
        exact = SymMatrix(tuple(tuple(r) for r in rows))
        floaty = SymMatrix(tuple(tuple(float(v) for v in r) for r in rows))
        assert not floaty.is_exact
        assert abs(det_general(floaty) - float(det_general(exact))) < 1e-8


def test_permuted_preserves_determinant():
    rng = random.Random(607)
    p = divisibility_poset(divisors(36))
    s = Subset.whole(p)
    f = random_function(rng, p)
    m = meet_matrix(s, f)
    perm = list(range(m.n))
    rng.shuffle(perm)
    q = m.permuted(tuple(perm))
    assert det_general(q) == det_general(m)
    assert q.trace() == m.trace()
