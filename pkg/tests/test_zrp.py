import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qzrp.exactalg import LaurentPoly
from qzrp.macdonald import htilde
from qzrp.shapes import Partition, partitions_up_to
from qzrp.tableaux import proj
from qzrp.zrp import (ZrpConfig, ZrpParams, bareiss_solve, count_configs, enumerate_configs,
                      fiber, simulate, stationary_exact, stationary_from_weights, tazrp_weight,
                      tazrp_weights, verify_lumping, verify_tableau_lumping, zrp_rates)

T = LaurentPoly.t(3)


def xi(i: int) -> LaurentPoly:
    return LaurentPoly.x(3, i, -1)


def test_state_count_311():
    configs = enumerate_configs((3, 1, 1), 3)
    assert len(configs) == 18
    listed = """311|.|. 31|1|. 31|.|1 3|11|. 3|1|1 3|.|11 11|3|. 11|.|3 1|31|.
                 1|1|3 1|3|1 1|.|31 .|311|. .|31|1 .|3|11 .|11|3 .|1|31 .|.|311"""
    assert set(configs) == {ZrpConfig.parse(s) for s in listed.split()}


def test_rates_from_examples():
    rates = {str(tgt): r for _, _, tgt, r in zrp_rates(ZrpConfig.parse(".|311|."))}
    assert rates == {".|11|3": xi(2), ".|31|1": xi(2) * (T + T * T)}
    rates = {str(tgt): r for _, _, tgt, r in zrp_rates(ZrpConfig.parse(".|1|31"))}
    assert rates == {"3|1|1": xi(3), "1|1|3": xi(3) * T, ".|.|311": xi(2)}


@pytest.mark.parametrize("text", [".|311|.", "2|3", "11|.|3", "12,5|.|1"])
def test_parse_round_trip(text):
    assert str(ZrpConfig.parse(text)) == text


@pytest.mark.parametrize("lam,n", [((3, 1, 1), 3), ((2, 2, 1), 4), ((4,), 5), ((1, 1, 1, 1), 2)])
def test_config_count_formula(lam, n):
    expected = 1
    for m in Partition(lam).multiplicities().values():
        expected *= math.comb(m + n - 1, m)
    assert count_configs(lam, n) == len(enumerate_configs(lam, n)) == expected


def test_fiber_weight_32():
    x1, x2, t = LaurentPoly.x(2, 1), LaurentPoly.x(2, 2), LaurentPoly.t(2)
    hcol = x1 * x1 + (1 + t) * x1 * x2 + x2 * x2
    w = tazrp_weight((3, 2), 2, ZrpConfig.parse("2|3"))
    assert w == (t * x1 * x2 ** 2 + x1 ** 2 * x2) * hcol
    assert w == (x1 ** 4 * x2 + (1 + 2 * t) * x1 ** 3 * x2 ** 2
                 + (1 + t + t * t) * x1 ** 2 * x2 ** 3 + t * x1 * x2 ** 4)


@pytest.mark.parametrize("lam,n", [((2, 1, 1), 3), ((3, 2), 2), ((2, 2), 3)])
def test_fibers_partition_the_tableaux(lam, n):
    total = 0
    for w in enumerate_configs(lam, n):
        fs = list(fiber(lam, n, w))
        assert all(proj(s) == w for s in fs)
        total += len(fs)
    assert total == n ** sum(lam)


@pytest.mark.parametrize("lam", [p for p in partitions_up_to(4)])
@pytest.mark.parametrize("n", [2, 3])
def test_weights_sum_to_htilde(lam, n):
    total = sum(tazrp_weights(lam, n).values(), LaurentPoly.zero(n))
    assert total == htilde(lam, n)


@pytest.mark.parametrize("lam", [(1,), (2, 1), (3, 1, 1), (2, 2)])
@pytest.mark.parametrize("n", [2, 3])
def test_stationary_solve_matches_weights(lam, n):
    p = ZrpParams.exact((2, 3, 5)[:n], Fraction(1, 3))
    pi = stationary_exact(lam, n, p)
    assert sum(pi.values()) == 1
    assert pi == stationary_from_weights(lam, n, p)


@given(st.lists(st.lists(st.integers(-6, 6), min_size=4, max_size=4), min_size=4, max_size=4),
       st.lists(st.integers(-6, 6), min_size=4, max_size=4))
@settings(max_examples=60)
def test_bareiss_solves_nonsingular_systems(a, b):
    m = np.array(a, dtype=float)
    if abs(np.linalg.det(m)) < 1e-6:
        return
    x = bareiss_solve(a, b)
    for row, rhs in zip(a, b):
        assert sum(Fraction(c) * v for c, v in zip(row, x)) == rhs


def test_bareiss_rejects_singular():
    with pytest.raises(ArithmeticError):
        bareiss_solve([[1, 2], [2, 4]], [1, 2])


@pytest.mark.parametrize("lam,n,j", [((3, 1, 1), 3, 1), ((3, 1, 1), 3, 3), ((2, 2, 1), 3, 2),
                                     ((3, 2, 1), 2, 2), ((2, 1), 1, 1)])
def test_species_lumping(lam, n, j):
    assert verify_lumping(lam, n, j)


@pytest.mark.parametrize("lam,n", [((2, 2, 1), 3), ((3, 1, 1), 3), ((2, 1), 2)])
def test_tableau_chain_lumps_to_zrp(lam, n):
    assert verify_tableau_lumping(lam, n)


def test_params_validation():
    with pytest.raises(ValueError):
        ZrpParams.exact((1, 0), 0)
    with pytest.raises(ValueError):
        ZrpParams.exact((1, 2), -1)


def test_simulation_is_seed_deterministic():
    p = ZrpParams((2.0, 3.0, 5.0), 0.5)
    a = simulate((2, 1), 3, p, seed=7, horizon=50.0)
    b = simulate((2, 1), 3, p, seed=7, horizon=50.0)
    c = simulate((2, 1), 3, p, seed=8, horizon=50.0)
    assert a.n_events == b.n_events
    assert np.array_equal(a.occupation, b.occupation)
    assert not np.array_equal(a.occupation, c.occupation)
    # every particle is somewhere at every instant
    assert np.allclose(a.density().sum(axis=0), [1, 1])


def test_simulation_records_events():
    p = ZrpParams((1.0, 1.0), 0.0)
    tr = simulate((1, 1), 2, p, seed=1, horizon=5.0, record_events=True)
    assert len(tr.events) == tr.n_events
    assert tr.to_csv().startswith("time,site,species\n")
