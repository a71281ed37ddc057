"""Exit criteria for the toolkit, one test per criterion.

Each test records a PASS/FAIL line that is printed in the terminal summary.
"""

import math
import time

import numpy as np
import pytest

from conftest import record_criterion
from corrdet.bounds import bounds_report, p_bound
from corrdet.corrmodel import (
    equicorrelation,
    equicorrelation_spectrum,
    f_bound,
    off_diag_stats,
    validate_correlation,
)
from corrdet.explore import (
    SearchConfig,
    negative_r1_objective,
    search_improvement_with_negative_r1,
    search_p_counterexample,
)
from corrdet.linalg import SymMatrix, determinant, eigenvalues_symmetric
from corrdet.majorization import majorizes, verify_theorem1
from corrdet.sweep import sample

SAMPLE_NS = range(2, 9)
SAMPLE_COUNT = 1000
SAMPLE_SEED = 42
TOL = 1e-9


@pytest.fixture(scope="module")
def population():
    t0 = time.perf_counter()
    mats = [R for n in SAMPLE_NS for R in sample(n, SAMPLE_COUNT, SAMPLE_SEED)]
    for R in mats:
        R.spectrum  # eigenvalues are computed once and cached on the matrix
    return mats, time.perf_counter() - t0


def test_ac1_example_1_1(ex11):
    rep = bounds_report(ex11)
    s = rep.stats
    ok = (
        s.r1 == 0.0
        and abs(rep.det_R - 0.5) <= 1e-12
        and rep.det_Rtilde == 1.0
        and abs(s.r2 - 0.4082) <= 1e-3
        and abs(rep.det_Rhat - 0.6361) <= 1e-3
        and rep.det_Rhat < rep.det_Rtilde
    )
    record_criterion(1, "example 1(1) fixture", ok, f"det Rhat={rep.det_Rhat:.6f}")
    assert ok


def test_ac2_example_1_2(ex12):
    rep = bounds_report(ex12)
    s = rep.stats
    ok = (
        abs(rep.det_R - 0.48) <= 1e-12
        and abs(s.r1 + 0.3667) <= 1e-3
        and abs(rep.det_Rtilde - 0.4981) <= 1e-3
        and abs(s.r2 - 0.3786) <= 1e-3
        and abs(rep.det_Rhat - 0.6785) <= 1e-3
        and rep.det_Rhat > rep.det_Rtilde
    )
    record_criterion(2, "example 1(2) fixture", ok, f"det Rtilde={rep.det_Rtilde:.6f} det Rhat={rep.det_Rhat:.6f}")
    assert ok


def test_ac3_final_example(ex2):
    s = off_diag_stats(ex2)
    det_R = determinant(ex2.base)
    bound = f_bound(3, s.r_inf)
    ok = s.r_inf == 0.8 and abs(det_R - 0.11) <= 1e-6 and abs(bound - 0.104) <= 1e-6 and det_R > bound
    ok = ok and not p_bound(ex2, math.inf).bound_holds
    record_criterion(3, "final example refutes the r_inf bound", ok, f"det R={det_R:.6f} f(r_inf)={bound:.6f}")
    assert ok


def test_ac4_theorem1_suite(population):
    mats, build_time = population
    t0 = time.perf_counter()
    failures = 0
    for R in mats:
        left, right = verify_theorem1(R, TOL)
        failures += not (left.holds and right.holds)
    elapsed = build_time + time.perf_counter() - t0
    ok = failures == 0 and len(mats) == 7000 and elapsed < 30
    record_criterion(4, "variance majorization chain on 7000 matrices", ok, f"{failures} failures, {elapsed:.1f}s")
    assert ok


def test_ac5_sandwich_and_olkin(population):
    mats, _ = population
    failures = 0
    for R in mats:
        rep = bounds_report(R, TOL)
        good = rep.det_Rbar - TOL <= rep.det_R <= rep.det_Rhat + TOL
        good &= rep.det_R <= rep.det_Rtilde + TOL
        if rep.stats.r1 >= 0:
            good &= rep.det_Rhat <= rep.det_Rtilde + TOL
        lam_tilde = equicorrelation_spectrum(R.n, rep.stats.r1).values
        good &= majorizes(R.spectrum.values, lam_tilde, TOL).holds
        failures += not good
    ok = failures == 0
    record_criterion(5, "sandwich, Olkin bound and classical majorization", ok, f"{failures} failures")
    assert ok


def test_ac6_proof_identities(population):
    mats, _ = population
    failures = 0
    for R in mats:
        n = R.n
        lam = R.spectrum.values
        r2 = off_diag_stats(R).r2
        failures += not (
            abs(lam.sum() - n) <= 1e-9 * n
            and abs(lam @ lam - (n + n * (n - 1) * r2**2)) <= 1e-9 * n * n
        )
    ok = failures == 0
    record_criterion(6, "trace and Frobenius identities", ok, f"{failures} failures")
    assert ok


def test_ac7_guaranteed_p_regime(population):
    mats, _ = population
    failures = 0
    for R in mats:
        for p in (1.25, 1.5, 1.75, 2.0):
            failures += not p_bound(R, p, TOL).bound_holds
    ok = failures == 0
    record_criterion(7, "r_p bound for p in {1.25, 1.5, 1.75, 2}", ok, f"{failures} failures")
    assert ok


def test_ac8_oracle_equivalence():
    worst = 0.0
    for n in range(2, 11):
        lo = -1.0 / (n - 1)
        steps = int(math.floor((1.0 - lo) / 0.05 + 1e-9))
        for t in [lo + 0.05 * i for i in range(steps + 1)] + [1.0]:
            A = equicorrelation(n, t)
            spec_gap = np.max(np.abs(equicorrelation_spectrum(n, t).values - eigenvalues_symmetric(A).values))
            det_gap = abs(f_bound(n, t) - determinant(A))
            worst = max(worst, spec_gap, det_gap)
    ok = worst <= 1e-10
    record_criterion(8, "closed-form spectra and f match eigensolver/LU", ok, f"worst gap {worst:.2e}")
    assert ok


def test_ac9_search_reproduction():
    t0 = time.perf_counter()
    res = search_p_counterexample(SearchConfig(n=3, p=math.inf, budget=5000, restarts=20, seed=7))
    elapsed = time.perf_counter() - t0
    R = validate_correlation(SymMatrix(res.best_matrix.entries))
    bound = f_bound(3, off_diag_stats(R).r_inf)
    lu_margin = determinant(R.base) - bound
    eig_margin = float(np.prod(eigenvalues_symmetric(R.base).values)) - bound
    ok = (
        res.found
        and res.objective > 1e-6
        and lu_margin > 1e-9
        and eig_margin > 1e-9
        and elapsed < 10
    )
    record_criterion(9, "p = inf counterexample search", ok, f"objective {res.objective:.6f}, {elapsed:.1f}s")
    assert ok


def test_ac10_negative_r1_search():
    res = search_improvement_with_negative_r1(SearchConfig(n=3, budget=2000, seed=1))
    R = validate_correlation(SymMatrix(res.best_matrix.entries))
    s = off_diag_stats(R)
    margin = f_bound(3, s.r1) - f_bound(3, s.r2)
    ok = (
        res.found
        and s.r1 < 0
        and margin > 0
        and abs(negative_r1_objective(R) - res.objective) <= 1e-12
        and abs(margin - res.objective) <= 1e-12
    )
    record_criterion(10, "negative r1 improvement search", ok, f"r1={s.r1:.4f}, margin {margin:.6f}")
    assert ok
