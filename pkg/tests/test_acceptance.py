"""Acceptance grid: one test per criterion, one PASS/FAIL line each.

Run alone with ``pytest tests/test_acceptance.py -v`` or as a script with
``python tests/test_acceptance.py``.  Cells that hit the slice ceiling count
as failures; nothing is skipped.
"""

import time

import pytest

from rittva import verify

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # running as a script
    ACCEPTANCE_LINES = []

# wall-clock budgets in seconds, where a criterion states one
BUDGETS = {1: 300, 2: 120}

CRITERIA = [
    (1, verify.main_formula_grid),
    (2, verify.second_formula_grid),
    (3, verify.power_threshold_grid),
    (4, verify.jetfree_cases),
    (5, verify.cofree_cases),
    (6, verify.zhu_case),
    (7, verify.residue_identity),
    (8, verify.rittab_consistency),
    (9, verify.oracle_equivalence),
]


def run_criterion(number, fn):
    start = time.perf_counter()
    crit = fn()
    elapsed = time.perf_counter() - start
    budget = BUDGETS.get(number)
    over = budget is not None and elapsed > budget
    if over:
        crit.passed = False
    line = f"{crit.line()}  [{elapsed:.1f}s" + (f", budget {budget}s]" if budget else "]")
    if over:
        line += " over budget"
    print(line)
    ACCEPTANCE_LINES.append(line)
    return crit, elapsed


@pytest.mark.slow
@pytest.mark.parametrize("number,fn", CRITERIA, ids=[f"criterion_{n}" for n, _ in CRITERIA])
def test_criterion(number, fn):
    crit, elapsed = run_criterion(number, fn)
    failing = [r for r in crit.records if not r.get("ok", True)]
    assert crit.passed, f"{crit.name}: {len(failing)} failing cells, e.g. {failing[:3]}; {elapsed:.1f}s"


if __name__ == "__main__":
    results = [run_criterion(n, fn)[0].passed for n, fn in CRITERIA]
    print(f"{sum(results)}/{len(results)} criteria passed")
