import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qzrp.exactalg import (GcdVerdict, LaurentPoly, NotDivisible, complete_homogeneous, divides,
                           exact_divide, gcd_is_unit, is_symmetric_under, monomial_symmetric,
                           t_binomial, t_integer, t_multinomial)

N = 3


@st.composite
def polys(draw, n: int = N, max_terms: int = 4, laurent: bool = True):
    lo = -2 if laurent else 0
    exps = st.tuples(*[st.integers(lo, 3)] * (n + 1))
    terms = draw(st.dictionaries(exps, st.integers(-5, 5), max_size=max_terms))
    return LaurentPoly(n, terms)


@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == LaurentPoly.zero(N)
    assert a * LaurentPoly.one(N) == a


@given(polys(), polys(), st.fractions(1, 5), st.lists(st.fractions(1, 5), min_size=N, max_size=N))
def test_evaluation_is_a_homomorphism(a, b, t, xs):
    t, xs = Fraction(t), [Fraction(x) for x in xs]
    assert (a * b).evaluate(t, xs) == a.evaluate(t, xs) * b.evaluate(t, xs)
    assert (a + b).evaluate(t, xs) == a.evaluate(t, xs) + b.evaluate(t, xs)


@given(polys(max_terms=3), polys(max_terms=3))
@settings(max_examples=60)
def test_exact_divide_round_trip(a, d):
    if not d:
        return
    assert exact_divide(a * d, d) == a
    assert divides(d, a * d)


def test_exact_divide_rejects_non_multiple():
    x1, x2 = LaurentPoly.x(2, 1), LaurentPoly.x(2, 2)
    with pytest.raises(NotDivisible):
        exact_divide(x1 + LaurentPoly.one(2), x1 + x2)


@given(polys())
def test_rotation_has_order_n(p):
    assert p.rotate_x(N) == p
    assert p.rotate_x(1).rotate_x(N - 1) == p


@given(polys())
def test_json_round_trip(p):
    assert LaurentPoly.from_json(p.to_json(), N) == p


def _inversions(word) -> int:
    return sum(1 for i, j in itertools.combinations(range(len(word)), 2) if word[i] > word[j])


@given(st.lists(st.integers(0, 3), min_size=1, max_size=4).filter(lambda p: sum(p) <= 7))
@settings(max_examples=40)
def test_t_multinomial_counts_inversions(parts):
    letters = [i for i, p in enumerate(parts) for _ in range(p)]
    brute = LaurentPoly.zero(0)
    for w in set(itertools.permutations(letters)):
        brute = brute + LaurentPoly.t(0, _inversions(w))
    assert t_multinomial(sum(parts), parts) == brute


def test_small_t_numbers():
    t = LaurentPoly.t(0)
    assert t_integer(3) == 1 + t + t * t
    assert t_binomial(4, 2) == 1 + t + 2 * t ** 2 + t ** 3 + t ** 4
    assert t_integer(0) == LaurentPoly.zero(0)


@pytest.mark.parametrize("r", range(5))
def test_complete_homogeneous_is_sum_of_monomial_symmetric(r):
    from qzrp.shapes import partitions_of
    total = LaurentPoly.zero(N)
    for mu in (partitions_of(r) if r else [()]):
        if len(tuple(mu)) <= N:
            total = total + monomial_symmetric(tuple(mu), N)
    assert complete_homogeneous(r, N) == total
    assert is_symmetric_under(total, range(1, N + 1))


def test_symmetry_detects_asymmetry():
    p = LaurentPoly.x(3, 1) * LaurentPoly.x(3, 2, 2)
    assert not is_symmetric_under(p, [1, 2])
    assert is_symmetric_under(p, [3])


def test_gcd_finds_common_factor():
    x1, x2 = LaurentPoly.x(2, 1), LaurentPoly.x(2, 2)
    f = x1 + x2
    rep = gcd_is_unit([f * (x1 + LaurentPoly.one(2)), f * (x2 * x2 + LaurentPoly.t(2))],
                      candidates=[f])
    assert rep.verdict is GcdVerdict.NON_UNIT_WITNESS


def test_gcd_of_coprime_inputs_is_certified():
    x1, x2 = LaurentPoly.x(2, 1), LaurentPoly.x(2, 2)
    rep = gcd_is_unit([x1 + x2, x1 * x2 + LaurentPoly.t(2)])
    assert rep.verdict in (GcdVerdict.UNIT_WITH_CERTAINTY, GcdVerdict.UNIT_PROBABLY)


def test_gcd_common_monomial_is_not_a_unit_obstruction():
    x1 = LaurentPoly.x(1, 1)
    rep = gcd_is_unit([x1 * 2, x1 * 4])
    assert rep.verdict is GcdVerdict.NON_UNIT_WITNESS


def test_gcd_without_candidate_is_inconclusive_not_unit():
    x1, x2 = LaurentPoly.x(2, 1), LaurentPoly.x(2, 2)
    f = x1 + x2 + LaurentPoly.one(2)
    rep = gcd_is_unit([f * (x1 + LaurentPoly.t(2)), f * (x2 + LaurentPoly.const(2, 2))])
    assert rep.verdict is GcdVerdict.INCONCLUSIVE
