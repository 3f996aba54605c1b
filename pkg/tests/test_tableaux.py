import itertools

import pytest
from hypothesis import given, settings, strategies as st

from qzrp.exactalg import LaurentPoly
from qzrp.shapes import Partition
from qzrp.tableaux import (BLOCKED, Filling, count_fillings, dbar_ubar, down, dsum_usum,
                           enumerate_fillings, in_Q, llt_stats, proj, quinv, restrict_top,
                           weight)
from qzrp.zrp import ZrpConfig, fiber

T = LaurentPoly.t(0)  # row sums carry no x variables


def test_quinv_set_truth_table():
    got = {abc for abc in itertools.product(range(0, 4), repeat=3) if in_Q(*abc)}
    want = {(a, b, c) for a, b, c in itertools.product(range(0, 4), repeat=3)
            if a < b < c or b < c < a or c < a < b or a == b != c}
    assert got == want
    assert in_Q(2, 5, 1)
    assert not in_Q(3, 2, 1)


@given(st.integers(1, 4), st.integers(1, 4), st.integers(1, 4), st.integers(1, 4))
def test_quinv_set_is_rotation_invariant(a, b, c, k):
    # cyclic relabelling of 1..4 keeps the orientation of three distinct values
    if len({a, b, c}) < 3:
        return
    rot = lambda v: (v - 1 + k) % 4 + 1
    assert in_Q(a, b, c) == in_Q(rot(a), rot(b), rot(c))


def test_big_edited_weight(big_edited):
    assert weight(big_edited) == LaurentPoly.monomial(3, 12, [5, 3, 6])


def test_big_filling_weight(big_filling):
    assert weight(big_filling) == LaurentPoly.monomial(3, 14, [4, 3, 7])


def test_up_down_sums_on_big_filling(big_filling):
    d, u = dbar_ubar(big_filling, 3)
    assert d == u == 1 + T + T ** 2 + 3 * T ** 3 + T ** 4
    d, u = dsum_usum(big_filling, 3)
    assert d == u == 1 + T + T ** 2 + 2 * T ** 3 + T ** 4


def test_blocked_cell():
    s = Filling.from_rows([[2], [2]], 2)
    assert down(s, (2, 1)) is BLOCKED


def test_six_tableaux_over_a_configuration():
    got = sorted(map(lambda s: tuple(map(tuple, s.rows())),
                     fiber((2, 1, 1), 3, ZrpConfig.parse(".|21|1"))))
    want = sorted(((top,), (2,) + bottom) for top in (1, 2, 3) for bottom in ((2, 3), (3, 2)))
    assert got == want


def test_from_rows_round_trip():
    rows = [[1, 3], [2, 2, 1]]
    s = Filling.from_rows(rows, 3)
    assert s.shape == (2, 2, 1)
    assert s.rows() == rows
    assert Filling.from_text(s.to_text(), 3) == s


@pytest.mark.parametrize("lam,n", [((2, 1), 3), ((2, 2), 2), ((3, 1, 1), 2)])
def test_enumeration_is_complete_and_distinct(lam, n):
    fs = list(enumerate_fillings(lam, n))
    assert len(fs) == len(set(fs)) == count_fillings(lam, n) == n ** sum(lam)


fillings = st.builds(
    lambda parts, n, seed: Filling(Partition(parts), n,
                                   [[(seed * (i + 7) * (r + 3)) % n + 1 for r in range(h)]
                                    for i, h in enumerate(parts)]),
    st.lists(st.integers(1, 4), min_size=1, max_size=4).map(lambda xs: sorted(xs, reverse=True)),
    st.integers(1, 4), st.integers(0, 10 ** 6))


@given(fillings)
@settings(max_examples=150)
def test_quinv_equals_llt_difference(s):
    inv_hat, arm_hat, _ = llt_stats(s)
    assert quinv(s) == inv_hat - arm_hat


@given(fillings)
def test_projection_reads_bottom_row(s):
    w = proj(s)
    assert w.species() == s.shape
    for site in range(1, s.n + 1):
        assert sorted(w.sites[site - 1]) == sorted(h for h, c in zip(s.shape, s.cols) if c[0] == site)


def test_restrict_top_drops_rows(big_filling):
    top = restrict_top(big_filling, 1)
    assert top.shape == (2, 2, 1, 1, 1)
    assert top.rows() == big_filling.rows()[:-1]
