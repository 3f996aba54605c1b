import pytest

from conftest import EXHAUSTIVE_CASES, case_id, suite_results
from qzrp.budget import BudgetExceeded
from qzrp.shapes import Partition
from qzrp.suites import SUITES, run_suite


@pytest.mark.slow
@pytest.mark.parametrize("suite", sorted(SUITES))
@pytest.mark.parametrize("case", EXHAUSTIVE_CASES, ids=case_id)
def test_suite_exhaustive(suite, case):
    lam, n = case
    bad = [c for c in suite_results(suite, lam, n) if not c["passed"]]
    assert not bad, bad


def test_all_runs_every_suite():
    out = run_suite("all", Partition((2, 2, 1)), 2)
    assert {c["suite"] for c in out} == set(SUITES)
    assert all(c["passed"] and c["count"] > 0 for c in out)


def test_budget_is_enforced():
    with pytest.raises(BudgetExceeded) as info:
        run_suite("balance", Partition((3, 2, 1)), 3, budget=100)
    assert info.value.required == 3 ** 6
