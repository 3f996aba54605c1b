import itertools

import pytest
from hypothesis import given, settings, strategies as st

from qzrp import macdonald as mac
from qzrp.exactalg import GcdVerdict, LaurentPoly, complete_homogeneous, is_symmetric_under
from qzrp.shapes import partitions_up_to
from qzrp.tableaux import Filling, in_Q, quinv, weight


@pytest.mark.parametrize("lam", list(partitions_up_to(5)))
@pytest.mark.parametrize("n", [1, 2, 3])
def test_three_forms_agree(lam, n):
    assert mac.three_way_equal(lam, n)


@pytest.mark.parametrize("lam", list(partitions_up_to(5)))
def test_t_zero_gives_complete_homogeneous_product(lam):
    assert mac.htilde(lam, 3).at_t_zero() == mac.h_conjugate(lam, 3)
    assert mac.check_t0_identity(lam, 3)


def test_column_polynomials():
    x1, x2, t = LaurentPoly.x(2, 1), LaurentPoly.x(2, 2), LaurentPoly.t(2)
    assert mac.htilde_column(0, 2) == LaurentPoly.one(2)
    assert mac.htilde_column(1, 2) == x1 + x2
    assert mac.htilde_column(2, 2) == x1 * x1 + (1 + t) * x1 * x2 + x2 * x2
    assert mac.htilde_column(3, 1) == LaurentPoly.x(1, 1, 3)


@pytest.mark.parametrize("r", range(6))
@pytest.mark.parametrize("n", [1, 2, 3])
def test_column_expansion_in_first_variable(r, n):
    assert mac.x1_expansion_check(r, n)


def test_single_row_is_complete_homogeneous_at_t_zero():
    # three columns of height one make a single row
    assert mac.htilde((1, 1, 1), 3) == mac.htilde_column(3, 3)
    assert mac.htilde((1, 1, 1), 3).at_t_zero() == complete_homogeneous(3, 3)
    assert mac.htilde((3,), 3) == mac.htilde_column(1, 3) ** 3
    assert is_symmetric_under(mac.htilde((3, 2, 1), 3), [1, 2, 3])


@pytest.mark.parametrize("lam", [(3, 2), (5, 3, 2), (3, 1), (4, 2, 2)])
def test_compressed_divides(lam):
    assert mac.check_divisibility(lam, 3)


def test_quinv_free_sort_example():
    top = [2, 2, 2, 3, 6]
    bottom = [1, 3, 4, 4, 5, 5]
    kept = mac.quinv_free_sort([top, bottom], 6, keep_top=True)
    assert kept.rows() == [top, [1, 5, 5, 4, 4, 3]]
    full = mac.quinv_free_sort([top, bottom], 6)
    assert quinv(full) == 0
    assert full.rows()[0] == [6, 3, 2, 2, 2]
    assert full.rows()[1] == [5, 1, 5, 4, 4, 3]


def _two_row_quinv(above, row) -> int:
    return sum(in_Q(above[i] if i < len(above) else 0, row[i], row[j])
               for i, j in itertools.combinations(range(len(row)), 2))


@given(st.integers(1, 5), st.data())
@settings(max_examples=150)
def test_sorted_row_is_the_unique_quinv_free_order(n, data):
    size = data.draw(st.integers(1, 5))
    row = data.draw(st.lists(st.integers(1, n), min_size=size, max_size=size))
    above = data.draw(st.lists(st.integers(1, n), max_size=size))
    got = mac.sort_row_below(above, row)
    free = {p for p in set(itertools.permutations(row)) if _two_row_quinv(above, p) == 0}
    assert free == {tuple(got)}


def test_compressed_conjecture_evidence():
    ev = mac.check_conjecture_compressed((2, 1), 2)
    assert ev.holds
    assert ev.verdict == GcdVerdict.UNIT_WITH_CERTAINTY.value
    assert '"conjecture":"compressed-reduced"' in ev.to_json()
    with pytest.raises(ValueError):
        mac.check_conjecture_compressed((3, 1), 2)


def test_extension_table():
    sigma = Filling.from_rows([[2], [2, 1]], 2)
    assert weight(sigma) == LaurentPoly.monomial(2, 1, [1, 2])
    exts = {tuple(map(tuple, f.rows())): weight(f) for f in mac.ext_fillings((3, 2), sigma)}
    assert exts == {
        ((1,), (2, 1), (2, 1)): LaurentPoly.monomial(2, 1, [3, 2]),
        ((1,), (2, 2), (2, 1)): LaurentPoly.monomial(2, 1, [2, 3]),
        ((2,), (2, 1), (2, 1)): LaurentPoly.monomial(2, 2, [2, 3]),
        ((2,), (2, 2), (2, 1)): LaurentPoly.monomial(2, 1, [1, 4]),
    }
    ev = mac.check_conjecture_refined((3, 2), 2, sigma)
    assert ev.holds and ev.details["top_placement_agrees"]


def test_top_placement_can_fail():
    evs = mac.refined_all((3, 1), 2)
    assert all(e.holds for e in evs)
    assert not all(e.details["top_placement_agrees"] for e in evs)


def test_counterexample_is_reported(monkeypatch):
    real = mac.ext_fillings

    def lossy(lam, sigma, placement="bottom"):
        return itertools.islice(real(lam, sigma, placement), 1, None)

    monkeypatch.setattr(mac, "ext_fillings", lossy)
    with pytest.raises(mac.Counterexample) as info:
        mac.refined_all((3, 2), 2)
    ev = info.value.evidence
    assert not ev.holds and ev.witness is not None
    assert ev.to_json_obj()["verdict"] == "fails"
