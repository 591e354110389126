"""Acceptance criteria, one test each, each printing a PASS/FAIL line.

Run ``python3 -m pytest tests/test_acceptance.py -v`` or execute this file
directly. Criterion 11 needs the real dataset: set ``GOODWIN_GOLDEN_DIR`` to
a directory with ``study.ini`` and the ten country CSVs (see README).
"""

from __future__ import annotations

import math
import os
import sys
import time
from pathlib import Path

import numpy as np
import pytest

from goodwin_cycles.config import PipelineConfig, load_config
from goodwin_cycles.econometrics import (
    NARAYAN_N50,
    PSS_ASYMPTOTIC,
    adf_test,
    arch_lm,
    bounds_decision,
    cusum,
    fit_arrays,
    ljung_box,
)
from goodwin_cycles.evaluation import best_orbit, equilibrium_errors, theil_decompose
from goodwin_cycles.model import (
    GoodwinParams,
    PhasePoint,
    conserved_quantity,
    equilibrium,
    measured_period,
    period,
    simulate,
)
from goodwin_cycles.pipeline import PARAM_NAMES, run_country, run_study
from goodwin_cycles.selftest import random_interior_point, random_params
from goodwin_cycles.synthetic import make_country
from goodwin_cycles.timeseries import AnnualSeries

# (alpha, beta, delta, nu, gamma, rho, k) -> (omega_G, lambda_G, T_G)
PUBLISHED_PARAMS = {
    "australia": ((0.015, 0.020, 0.052, 2.881, -0.215, 0.242, 0.694), (0.6404, 0.9480, 33.41)),
    "canada": ((0.013, 0.020, 0.043, 2.864, -0.095, 0.115, 0.605), (0.6424, 0.9371, 51.94)),
    "denmark": ((0.018, 0.006, 0.050, 2.842, -0.330, 0.367, 0.640), (0.6730, 0.9492, 27.34)),
    "finland": ((0.029, 0.003, 0.052, 3.314, -0.258, 0.303, 0.898), (0.6910, 0.9480, 27.10)),
    "france": ((0.022, 0.008, 0.038, 3.326, -0.491, 0.549, 0.792), (0.7165, 0.9346, 21.25)),
    "germany": ((0.028, 0.006, 0.036, 3.367, -0.705, 0.753, 0.735), (0.6821, 0.9729, 19.03)),
    "italy": ((0.021, 0.006, 0.047, 3.206, -0.891, 0.982, 0.738), (0.6833, 0.9285, 16.59)),
    "norway": ((0.023, 0.011, 0.047, 3.208, -0.574, 0.609, 0.722), (0.6411, 0.9804, 21.41)),
    "uk": ((0.021, 0.005, 0.037, 3.053, -0.108, 0.135, 0.588), (0.6731, 0.9515, 48.73)),
    "us": ((0.016, 0.016, 0.052, 2.725, -0.227, 0.257, 0.610), (0.6245, 0.9441, 34.13)),
}

# (mean omega, mean lambda)
PUBLISHED_MEANS = {
    "australia": (0.6517, 0.9457),
    "canada": (0.6724, 0.9264),
    "denmark": (0.6843, 0.9554),
    "finland": (0.6997, 0.9375),
    "france": (0.7094, 0.9361),
    "germany": (0.6838, 0.9719),
    "italy": (0.6814, 0.9280),
    "norway": (0.6148, 0.9731),
    "uk": (0.7147, 0.9438),
    "us": (0.6552, 0.9416),
}

# |lambda error|, relative %, |omega error|, relative %
PUBLISHED_ERRORS = {
    "australia": (0.0023, 0.24, 0.011, 1.74),
    "canada": (0.0107, 1.15, 0.030, 4.47),
    "denmark": (0.0062, 0.65, 0.011, 1.65),
    "finland": (0.0105, 1.12, 0.009, 1.24),
    "france": (0.0015, 0.16, 0.007, 1.01),
    "germany": (0.0010, 0.10, 0.002, 0.26),
    "italy": (0.0005, 0.05, 0.002, 0.28),
    "norway": (0.0073, 0.75, 0.026, 4.28),
    "uk": (0.0077, 0.82, 0.042, 5.83),
    "us": (0.0025, 0.27, 0.031, 4.68),
}
PUBLISHED_ERROR_AVERAGE = (0.0050, 0.53, 0.017, 2.54)

PUBLISHED_F = {
    "australia": 15.548, "canada": 17.154, "denmark": 33.071, "finland": 21.107,
    "france": 12.574, "italy": 8.519, "norway": 21.421, "uk": 13.830, "us": 8.019,
    "germany": 5.651,
}

# rmse/mean for lambda and omega
PUBLISHED_RMSE = {
    "australia": (0.025, 0.055), "canada": (0.018, 0.059), "denmark": (0.026, 0.034),
    "finland": (0.045, 0.069), "france": (0.042, 0.058), "germany": (0.023, 0.023),
    "italy": (0.021, 0.064), "norway": (0.023, 0.093), "uk": (0.023, 0.069),
    "us": (0.014, 0.054),
}

EQ_TOL = 1.5e-2
PERIOD_REL_TOL = 0.02
ABS_ERR_TOL = 1e-3
REL_ERR_TOL_PP = 0.1
RMSE_TOL = 3e-3
CALIBRATION_N = 100
CALIBRATION_DRAWS = 1000

GOLDEN_ENV = "GOODWIN_GOLDEN_DIR"


def _line(num: int, ok: bool | None, name: str, detail: str) -> str:
    tag = "SKIP" if ok is None else ("PASS" if ok else "FAIL")
    return f"{tag}  criterion {num:2d}  {name}: {detail}"


@pytest.fixture
def emit(capsys):
    def _emit(num: int, ok: bool | None, name: str, detail: str) -> None:
        with capsys.disabled():
            print("\n" + _line(num, ok, name, detail))
    return _emit


def criterion_1():
    worst_eq, worst_t = 0.0, 0.0
    for params, (w_g, l_g, t_g) in PUBLISHED_PARAMS.values():
        p = GoodwinParams(*params)
        eq = equilibrium(p)
        worst_eq = max(worst_eq, abs(eq.omega - w_g), abs(eq.lam - l_g))
        worst_t = max(worst_t, abs(period(p) / t_g - 1))
    ok = worst_eq < EQ_TOL and worst_t < PERIOD_REL_TOL
    return ok, f"10 rows, max |eq error| {worst_eq:.4f}, max period rel error {worst_t:.4f}"


def criterion_2():
    got = {c: bounds_decision(f, NARAYAN_N50) for c, f in PUBLISHED_F.items()}
    want = {c: ("reject-at-10%" if c == "germany" else "reject-at-1%") for c in PUBLISHED_F}
    bad = [c for c in got if got[c] != want[c]]
    if not bad:
        return True, "germany reject-at-10%, others reject-at-1%"
    detail = ", ".join(f"{c} {got[c]} (F={PUBLISHED_F[c]})" for c in bad)
    # informational only: the asymptotic bounds give the stated conclusions
    alt = [c for c in PUBLISHED_F if bounds_decision(PUBLISHED_F[c], PSS_ASYMPTOTIC) != want[c]]
    note = "asymptotic bounds agree everywhere" if not alt else "asymptotic bounds also differ"
    return False, f"printed bounds give {detail}; {note}"


def criterion_3():
    worst_abs, worst_rel = 0.0, 0.0
    rows = []
    for c, (_, (w_g, l_g, _t)) in PUBLISHED_PARAMS.items():
        e = equilibrium_errors(PUBLISHED_MEANS[c], (w_g, l_g))
        row = (e.abs_err_lambda, 100 * e.rel_err_lambda, e.abs_err_omega, 100 * e.rel_err_omega)
        rows.append(row)
        pub = PUBLISHED_ERRORS[c]
        worst_abs = max(worst_abs, abs(row[0] - pub[0]), abs(row[2] - pub[2]))
        worst_rel = max(worst_rel, abs(row[1] - pub[1]), abs(row[3] - pub[3]))
    avg = np.mean(rows, axis=0)
    for i in (0, 2):
        worst_abs = max(worst_abs, abs(avg[i] - PUBLISHED_ERROR_AVERAGE[i]))
    for i in (1, 3):
        worst_rel = max(worst_rel, abs(avg[i] - PUBLISHED_ERROR_AVERAGE[i]))
    ok = worst_abs < ABS_ERR_TOL and worst_rel < REL_ERR_TOL_PP
    return ok, (f"average {avg[1]:.2f}% / {avg[3]:.2f}%, max abs diff {worst_abs:.5f}, "
                f"max rel diff {worst_rel:.3f} pp")


def criterion_4():
    rng = np.random.default_rng(4)
    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(100):
        p = random_params(rng)
        tr = simulate(p, random_interior_point(p, rng, spread=0.1), 0, 200)
        v0 = conserved_quantity(p, tr.initial)
        v = np.array([conserved_quantity(p, x) for x in tr.points])
        worst = max(worst, float(np.max(np.abs(v - v0)) / abs(v0)))
    dt = time.perf_counter() - t0
    return worst < 1e-6 and dt < 10, f"100 runs, worst drift {worst:.2e}, {dt:.2f} s"


def criterion_5():
    rng = np.random.default_rng(5)
    worst_gap, worst_rel = 0.0, 0.0
    for _ in range(20):
        p = random_params(rng)
        eq = equilibrium(p)
        t, gap = measured_period(p, PhasePoint(eq.omega, eq.lam + 1e-3))
        worst_gap = max(worst_gap, gap)
        worst_rel = max(worst_rel, abs(t / period(p) - 1))
    ok = worst_gap < 1e-5 and worst_rel < 5e-3
    return ok, f"20 orbits, max return gap {worst_gap:.2e}, max period rel error {worst_rel:.2e}"


def criterion_6():
    t0 = time.perf_counter()
    sc = make_country(seed=0, z_noise=1e-3)
    rep = run_country(sc.raw, PipelineConfig())
    dt = time.perf_counter() - t0
    if rep.params is None:
        return False, "no parameter estimates: " + "; ".join(rep.warnings)
    err = {n: abs(getattr(rep.params, n) - getattr(sc.truth, n)) for n in PARAM_NAMES}
    worst = max(err, key=err.get)
    decision = rep.bounds.decision if rep.bounds else "none"
    ok = err[worst] < 1e-2 and decision == "reject-at-1%" and dt < 5
    return ok, f"worst |error| {err[worst]:.2e} ({worst}), bounds {decision}, {dt:.2f} s"


def criterion_7():
    rng = np.random.default_rng(7)
    worst_b, worst_se = 0.0, 0.0
    for _ in range(500):
        n = int(rng.integers(8, 60))
        k = int(rng.integers(1, 6))
        X = np.column_stack([np.ones(n), rng.normal(size=(n, k - 1))]) if k > 1 else np.ones((n, 1))
        y = X @ rng.normal(size=k) + rng.normal(size=n)
        fit = fit_arrays(y, X, has_intercept=True)
        xtx = X.T @ X
        b = np.linalg.solve(xtx, X.T @ y)
        e = y - X @ b
        se = np.sqrt(e @ e / (n - k) * np.diag(np.linalg.inv(xtx)))
        worst_b = max(worst_b, float(np.max(np.abs(fit.coefficients - b) / np.maximum(np.abs(b), 1e-300))))
        worst_se = max(worst_se, float(np.max(np.abs(fit.std_errors - se) / se)))
    ok = worst_b < 1e-8 and worst_se < 1e-8
    return ok, f"500 fits, max rel diff coef {worst_b:.1e}, se {worst_se:.1e}"


def criterion_8():
    rng = np.random.default_rng(8)
    n, draws = CALIBRATION_N, CALIBRATION_DRAWS
    t0 = time.perf_counter()
    lb = np.mean([ljung_box(rng.normal(size=n), 5) < 0.05 for _ in range(draws)])
    arch = np.mean([arch_lm(rng.normal(size=n), 1)[1] < 0.05 for _ in range(draws)])
    adf = np.mean([adf_test(np.cumsum(rng.normal(size=n))).p_value < 0.05 for _ in range(draws)])
    cs = csq = 0
    for _ in range(draws):
        x = rng.normal(size=n)
        r = cusum(1.0 + 0.5 * x + rng.normal(size=n), [x], intercept=True)
        cs += not r.cusum_ok
        csq += not r.cusumsq_ok
    dt = time.perf_counter() - t0
    ok = all(0.03 <= s <= 0.07 for s in (lb, arch, adf)) and cs / draws <= 0.02 and dt < 60
    return ok, (f"n={n}, sizes LB {lb:.3f}, ARCH {arch:.3f}, ADF {adf:.3f}; "
                f"CUSUM false alarms {cs / draws:.3f} (CUSUMSQ {csq / draws:.3f}); {dt:.1f} s")


def _raw_moment_theil(o, s):
    n = o.size
    so, ss = o.sum() / n, s.sum() / n
    soo, sss, sos = (o * o).sum() / n, (s * s).sum() / n, (o * s).sum() / n
    var_o, var_s = soo - so * so, sss - ss * ss
    cov = sos - so * ss
    mse = sss - 2 * sos + soo
    sd_o, sd_s = math.sqrt(var_o), math.sqrt(var_s)
    return np.array([(ss - so) ** 2, (sd_s - sd_o) ** 2, 2 * (sd_s * sd_o - cov)]) / mse


def criterion_9():
    rng = np.random.default_rng(9)
    worst_sum, worst_ref = 0.0, 0.0
    for _ in range(200):
        n = int(rng.integers(5, 60))
        o = rng.uniform(0.5, 1.0, n)
        s = o * rng.uniform(0.8, 1.2) + rng.normal(0, 0.05, n) + rng.normal(0, 0.05)
        th = theil_decompose(o, s)
        u = np.array([th.u_bias, th.u_variance, th.u_covariance])
        worst_sum = max(worst_sum, abs(u.sum() - 1))
        worst_ref = max(worst_ref, float(np.max(np.abs(u - _raw_moment_theil(o, s)))))
    o = rng.uniform(0.5, 1.0, 30)
    shift = theil_decompose(o, o + 0.07)
    exact = (shift.u_bias, shift.u_variance, shift.u_covariance) == (1.0, 0.0, 0.0)
    ok = worst_sum < 1e-10 and worst_ref < 1e-12 and exact
    return ok, (f"200 pairs, max |sum-1| {worst_sum:.1e}, max diff vs raw moments {worst_ref:.1e}, "
                f"level shift exact: {exact}")


def criterion_10():
    rng = np.random.default_rng(10)
    worst_mse, worst_dv = 0.0, 0.0
    for _ in range(10):
        p = random_params(rng)
        x0 = random_interior_point(p, rng, spread=0.05)
        tr = simulate(p, x0, 1960, 40)
        ev = best_orbit(p, (AnnualSeries(1960, tr.omega), AnnualSeries(1960, tr.lam)))
        v = conserved_quantity(p, x0)
        worst_mse = max(worst_mse, ev.joint_mse)
        worst_dv = max(worst_dv, abs(conserved_quantity(p, ev.best_initial[1]) - v) / abs(v))
    ok = worst_mse < 1e-10 and worst_dv < 1e-8
    return ok, f"10 orbits, max joint MSE {worst_mse:.1e}, max |dV|/|V| {worst_dv:.1e}"


def criterion_11():
    root = os.environ.get(GOLDEN_ENV)
    if not root:
        return None, f"set {GOLDEN_ENV} to a directory with study.ini and the country CSVs"
    cfg = load_config(Path(root) / "study.ini")
    reports = {r.country: r for r in run_study(cfg, list(PUBLISHED_PARAMS))}
    failures = []
    rel_l, rel_w = [], []
    for c, (_, (w_g, l_g, t_g)) in PUBLISHED_PARAMS.items():
        r = reports[c]
        if r.error or r.equilibrium is None or r.orbit is None:
            failures.append(f"{c}: incomplete ({r.error or '; '.join(r.warnings)})")
            continue
        mw, ml = PUBLISHED_MEANS[c]
        if abs(r.summary["omega"].mean - mw) > ABS_ERR_TOL or abs(r.summary["lambda"].mean - ml) > ABS_ERR_TOL:
            failures.append(f"{c}: means")
        if abs(r.equilibrium.omega - w_g) > EQ_TOL or abs(r.equilibrium.lam - l_g) > EQ_TOL:
            failures.append(f"{c}: equilibrium")
        if abs(r.period_linear / t_g - 1) > PERIOD_REL_TOL:
            failures.append(f"{c}: period")
        pub = PUBLISHED_ERRORS[c]
        e = r.errors
        if (abs(e.abs_err_lambda - pub[0]) > ABS_ERR_TOL or abs(e.abs_err_omega - pub[2]) > ABS_ERR_TOL
                or abs(100 * e.rel_err_lambda - pub[1]) > REL_ERR_TOL_PP
                or abs(100 * e.rel_err_omega - pub[3]) > REL_ERR_TOL_PP):
            failures.append(f"{c}: error table")
        rel_l.append(100 * e.rel_err_lambda)
        rel_w.append(100 * e.rel_err_omega)
        rl, rw = PUBLISHED_RMSE[c]
        if (abs(r.orbit.lambda_eval.rmse_over_mean - rl) > RMSE_TOL
                or abs(r.orbit.omega_eval.rmse_over_mean - rw) > RMSE_TOL):
            failures.append(f"{c}: rmse")
    if len(rel_l) == len(PUBLISHED_PARAMS):
        if (abs(np.mean(rel_l) - PUBLISHED_ERROR_AVERAGE[1]) > REL_ERR_TOL_PP
                or abs(np.mean(rel_w) - PUBLISHED_ERROR_AVERAGE[3]) > REL_ERR_TOL_PP):
            failures.append("average row")
    return not failures, "all tables match" if not failures else "; ".join(failures)


CRITERIA = (
    (1, "equilibrium formula replication", criterion_1),
    (2, "bounds-decision replication", criterion_2),
    (3, "error-table arithmetic", criterion_3),
    (4, "conserved-quantity integration", criterion_4),
    (5, "small-amplitude period", criterion_5),
    (6, "synthetic parameter recovery", criterion_6),
    (7, "OLS oracle equivalence", criterion_7),
    (8, "diagnostic calibration", criterion_8),
    (9, "Theil decomposition", criterion_9),
    (10, "best-orbit self-consistency", criterion_10),
    (11, "dataset-conditional golden suite", criterion_11),
)


@pytest.mark.parametrize("num, name, check", CRITERIA, ids=[f"criterion_{c[0]:02d}" for c in CRITERIA])
def test_criterion(num, name, check, emit):
    ok, detail = check()
    emit(num, ok, name, detail)
    if ok is None:
        pytest.skip(detail)
    assert ok, detail


if __name__ == "__main__":
    results = []
    for num, name, check in CRITERIA:
        ok, detail = check()
        print(_line(num, ok, name, detail), flush=True)
        results.append(ok)
    sys.exit(0 if all(r is not False for r in results) else 1)
