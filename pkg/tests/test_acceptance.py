"""Acceptance criteria, one test per criterion, exact tolerances throughout.

Each test prints a single pass/fail line (visible with `pytest -s` or via the
`tiltcheck selftest` command, which runs the same battery).
"""

from tiltcheck import acceptance


def _check(name, fn):
    passed, detail = fn()
    print(f"{'PASS' if passed else 'FAIL'} criterion {name}: {detail}")
    assert passed, detail


def test_criterion_1_kapranov_sweep():
    _check("1 (kapranov sweep d<n<=7)", acceptance.kapranov_sweep)


def test_criterion_2_oracle_equivalence():
    _check("2 (localization oracle, 300 pairs)", acceptance.oracle_equivalence)


def test_criterion_3_classical_cohomology():
    _check("3 (classical line-bundle agreement)", acceptance.classical_cohomology_agreement)


def test_criterion_4_kronecker():
    _check("4 (Kronecker quiver via CLI)", acceptance.kronecker_check)


def test_criterion_5_descent_bookkeeping():
    _check("5 (descent bookkeeping)", acceptance.descent_bookkeeping)


def test_criterion_6_generalized_bs():
    _check("6 (generalized Brauer-Severi)", acceptance.generalized_bs)


def test_criterion_7_fibration_twist_search():
    _check("7 (fibration twist search)", acceptance.fibration_twist_search)


def test_criterion_8_invariance_suite():
    _check("8 (invariance suite)", acceptance.invariance_suite)


def test_criterion_1_runtime_budget():
    import time

    start = time.monotonic()
    passed, _detail = acceptance.kapranov_sweep()
    elapsed = time.monotonic() - start
    print(f"kapranov sweep wall time: {elapsed:.2f}s")
    assert passed and elapsed < 60.0
