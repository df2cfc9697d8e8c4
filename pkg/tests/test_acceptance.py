"""The twelve acceptance criteria at full size, exact arithmetic, one line each.

Run with ``pytest -v tests/test_acceptance.py``; every criterion prints a
PASS/FAIL line.  The tensor cross-check is informational and never fails.
"""

import pytest

from chordlab import checks

CRITERIA = [
    (1, checks.table_reproduction),
    (2, checks.eigen_identity),
    (3, checks.dimension_law),
    (4, checks.commutative_square),
    (5, checks.semidefinite),
    (6, checks.double_orthogonality),
    (7, checks.coefficient_formula),
    (8, checks.injectivity),
    (9, checks.pairing_oracle),
    (10, checks.graph_layer),
    (11, checks.anti_equivariance),
    (12, checks.relative_types),
]


def _report(capsys, result):
    with capsys.disabled():
        tag = "PASS" if result.passed else ("FAIL" if result.blocking else "FINDING")
        print(f"\n[acceptance] {tag} {result.name}: {result.detail}")


@pytest.mark.parametrize("number,check", CRITERIA, ids=[f"criterion_{n}" for n, _ in CRITERIA])
def test_criterion(number, check, capsys):
    result = check("full")
    _report(capsys, result)
    assert result.passed, result.detail


def test_stretch_tensor_cross_check(capsys):
    result = checks.tensor_cross_check("full")
    _report(capsys, result)
