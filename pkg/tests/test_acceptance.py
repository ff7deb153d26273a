"""Acceptance gate: one test per criterion, at the stated tolerances.

Each test prints a single PASS/FAIL line (visible with pytest -s; the test
name itself mirrors the criterion under pytest -v). Expected values come from
the reference oracles at run time.
"""

import time

import pytest

from ipd.suites import run_suite

TOL_GAUSSIAN = 1e-9
TOL_GAMMA = 1e-8
TOL_BESSEL = 1e-8
TOL_INVARIANTS = 1e-8


@pytest.fixture(scope="module")
def dimensions_report():
    return run_suite("dimensions", seed=0)


@pytest.fixture(scope="module")
def invariants_report():
    return run_suite("invariants", seed=0, tol=TOL_INVARIANTS)


def _verdict(n, desc, ok):
    print(f"ACCEPTANCE {n} ({desc}): {'PASS' if ok else 'FAIL'}")
    assert ok, f"criterion {n}: {desc}"


def test_criterion_1_gaussian_period():
    t0 = time.perf_counter()
    report = run_suite("gaussian", tol=TOL_GAUSSIAN)
    elapsed = time.perf_counter() - t0
    ok = report.passed and elapsed < 1.0
    _verdict(1, f"sqrt(pi) at rel 1e-9 in {elapsed:.2f}s", ok)


def test_criterion_2_gamma_hankel():
    report = run_suite("gamma", tol=TOL_GAMMA)
    ok = report.passed
    ids = [ch.id for ch in report.checks]
    ok = ok and sum(i.startswith("gamma.hankel") for i in ids) == 3
    ok = ok and "gamma.radius_independence" in ids
    _verdict(2, "Hankel periods s in {1/2,1/3,3/4} + radius independence", ok)


def test_criterion_3_bessel_periods():
    report = run_suite("bessel", tol=TOL_BESSEL)
    ids = [ch.id for ch in report.checks]
    ok = report.passed
    ok = ok and sum(i.startswith("bessel.circle") for i in ids) == 3
    ok = ok and any(i.startswith("bessel.pairing_det") for i in ids)
    ok = ok and sum(i.startswith("bessel.ode_residual") for i in ids) == 2
    ok = ok and any(i.startswith("bessel.growth") for i in ids)
    _verdict(3, "2 pi i J_n(1), pairing det, ODE residual, H0 growth", ok)


def test_criterion_4_dimension_identities(dimensions_report):
    by_id = {ch.id: ch for ch in dimensions_report.checks}
    ok = (
        by_id["dimensions.h1_duality_failures"].passed
        and by_id["dimensions.h0_duality_failures"].passed
        and by_id["dimensions.chi_identity_failures"].passed
        and by_id["dimensions.five_term_failures"].passed
    )
    _verdict(4, "h1 = h1_XD, h0 = h0_XD, h1 = h0 - chi on 100 connections", ok)


def test_criterion_5_euler_difference(dimensions_report):
    by_id = {ch.id: ch for ch in dimensions_report.checks}
    ok = by_id["dimensions.euler_difference_failures"].passed
    _verdict(5, "chi_dr - chi_top = -sum(m_i - 1), exact on the corpus", ok)


def test_criterion_6_stokes_combinatorics(invariants_report):
    by_id = {ch.id: ch for ch in invariants_report.checks}
    ok = (
        by_id["invariants.stokes_ray_failures"].passed
        and by_id["invariants.stokes_sector_failures"].passed
    )
    _verdict(6, "2(m-1) rays and m-1 sectors for m in 2..6 x 50 draws", ok)


def test_criterion_7_exactness_and_jitter(invariants_report):
    checks = [
        ch
        for ch in invariants_report.checks
        if ch.id.startswith("invariants.exactness") or ch.id.startswith("invariants.jitter")
    ]
    ok = len(checks) == 6 and all(ch.passed for ch in checks)
    _verdict(7, "period(nabla g) vanishes, waypoint jitter < 1e-8 relative", ok)


def test_criterion_8_out_of_scope_items():
    # nothing beyond criteria 1-7 is claimed at desk scale
    _verdict(8, "no further claims", True)
