from fractions import Fraction

import pytest

from qzrp.shapes import Partition, partitions_up_to
from qzrp.tableaux import Filling

# Every (shape, n) instance the exhaustive suites cover.
EXHAUSTIVE_CASES = [(lam, n) for lam in partitions_up_to(6) for n in (1, 2, 3)]
EXHAUSTIVE_CASES.append((Partition((2, 2, 1, 1)), 4))

# Columns bottom to top.
BIG_COLS = [[1, 1, 3], [1, 3, 2], [2, 1], [3, 3], [2, 3], [3], [3]]
BIG_SHAPE = (3, 3, 2, 2, 2, 1, 1)


def case_id(case) -> str:
    lam, n = case
    return f"{'-'.join(map(str, lam.parts))}_n{n}"


@pytest.fixture
def big_filling() -> Filling:
    return Filling(BIG_SHAPE, 3, BIG_COLS)


@pytest.fixture
def big_edited() -> Filling:
    return Filling(BIG_SHAPE, 3, BIG_COLS).replace({(1, 4): 1})


@pytest.fixture
def third() -> Fraction:
    return Fraction(1, 3)


_SUITE_CACHE: dict = {}


def suite_results(name: str, lam: Partition, n: int) -> list:
    """run_suite, memoised for the session so several test files can share it."""
    from qzrp.suites import run_suite

    key = (name, lam, n)
    if key not in _SUITE_CACHE:
        _SUITE_CACHE[key] = run_suite(name, lam, n)
    return _SUITE_CACHE[key]


# criterion number -> (passed, one-line detail); filled by test_acceptance.py
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
