import itertools

import pytest
from hypothesis import given, settings, strategies as st

from qzrp import multiline as ml
from qzrp.exactalg import LaurentPoly
from qzrp.shapes import Partition
from qzrp.tableaux import Filling, enumerate_fillings, quinv, weight
from qzrp.zrp import ZrpConfig

EXAMPLE = Filling((4, 3, 1), 5, [[3, 5, 2, 3], [4, 1, 2], [4]])
EXAMPLE_ROWS = [".|.|4|.|.", ".|43|.|.|.", "3|.|.|.|4", ".|.|4|31|."]


def test_example_diagram():
    m = ml.to_multiline(EXAMPLE)
    assert m.to_text().splitlines() == EXAMPLE_ROWS
    assert m == ml.MultilineDiagram.from_text("\n".join(EXAMPLE_ROWS))
    assert ml.refusals_by_row(m) == [0, 1, 2]
    assert ml.multiline_weight(m) == LaurentPoly.monomial(5, 3, [1, 2, 2, 2, 1])
    assert weight(EXAMPLE) == ml.multiline_weight(m)
    assert ml.from_multiline(m) == EXAMPLE


def test_cyc_between_truth_table():
    n = 4
    for a, b, c in itertools.product(range(1, n + 1), repeat=3):
        # walk forward from a and record the sites met before reaching c
        seen, v = [], a % n + 1
        while v != c:
            seen.append(v)
            v = v % n + 1
        if a == c:
            seen = [s for s in range(1, n + 1) if s != a]
        assert ml.cyc_between(a, b, c, n) == (b in seen), (a, b, c)


strict = st.lists(st.integers(1, 5), min_size=1, max_size=4, unique=True).map(
    lambda xs: Partition(sorted(xs, reverse=True)))


@given(strict, st.integers(1, 4), st.data())
@settings(max_examples=80)
def test_round_trip_on_random_strict_fillings(lam, n, data):
    cols = [data.draw(st.lists(st.integers(1, n), min_size=h, max_size=h)) for h in lam]
    sigma = Filling(lam, n, cols)
    m = ml.to_multiline(sigma)
    assert ml.from_multiline(m) == sigma
    assert ml.multiline_weight(m) == weight(sigma)
    assert ml.refusals(m) == quinv(sigma)


@pytest.mark.parametrize("lam,n", [((3, 2, 1), 3), ((4, 1), 3), ((3, 1), 4)])
def test_jumps_conjugate_ringing(lam, n):
    assert all(ml.check_conjugation(s) for s in enumerate_fillings(lam, n))


def test_non_strict_diagrams_use_fiber_weights():
    sigma = Filling.from_rows([[1, 2], [2, 1]], 2)
    m = ml.to_multiline(sigma)
    assert not m.is_strict()
    with pytest.raises(ValueError):
        ml.from_multiline(m)
    group = [s for s in enumerate_fillings((2, 2), 2) if ml.to_multiline(s) == m]
    # each row can order its two equal species either way
    assert len(group) == 4
    assert ml.fiber_weight(m) == sum((weight(s) for s in group), LaurentPoly.zero(2))


def test_forbidden_jump():
    sigma = Filling.from_rows([[2], [2, 1]], 2)
    m = ml.to_multiline(sigma)
    assert ml.multiline_jump(m, 2, 2, 2) is ml.FORBIDDEN
    assert repr(ml.FORBIDDEN) == "FORBIDDEN"


def test_nesting_is_validated():
    with pytest.raises(ValueError):
        ml.MultilineDiagram((ZrpConfig.parse("2|1"), ZrpConfig.parse("1|2")), 2)
