"""Quick acceptance checks that need no external data.

Each check returns ``(name, passed, detail)``. The full-size versions with
larger draw counts live in the test suite; these are scaled down so that
``goodwin-cycles selftest`` finishes in a few seconds.
"""

from __future__ import annotations

from collections.abc import Callable

import numpy as np

from goodwin_cycles.config import PipelineConfig
from goodwin_cycles.evaluation import best_orbit, theil_decompose
from goodwin_cycles.model import (
    GoodwinParams,
    PhasePoint,
    conserved_quantity,
    equilibrium,
    measured_period,
    period,
    simulate,
)
from goodwin_cycles.pipeline import PARAM_NAMES, run_country
from goodwin_cycles.synthetic import make_country
from goodwin_cycles.timeseries import AnnualSeries

Check = tuple[str, bool, str]


def random_params(rng: np.random.Generator) -> GoodwinParams:
    """Parameters with an interior equilibrium, in the empirically plausible range."""
    while True:
        p = GoodwinParams(
            alpha=rng.uniform(0.01, 0.03),
            beta=rng.uniform(0.0, 0.02),
            delta=rng.uniform(0.03, 0.06),
            nu=rng.uniform(2.5, 3.5),
            gamma=rng.uniform(-0.9, -0.1),
            rho=0.0,
            k=rng.uniform(0.55, 0.95),
        )
        lam_target = rng.uniform(0.9, 0.98)
        rho = (p.alpha - p.gamma) / lam_target
        p = GoodwinParams(**{**p.as_dict(), "rho": rho})
        if p.has_center:
            return p


def random_interior_point(p: GoodwinParams, rng: np.random.Generator, spread: float = 0.03) -> PhasePoint:
    eq = equilibrium(p)
    return PhasePoint(eq.omega * (1 + rng.uniform(-spread, spread)),
                      eq.lam * (1 + rng.uniform(-spread, spread)))


def check_drift(n: int = 20, seed: int = 0) -> Check:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n):
        p = random_params(rng)
        tr = simulate(p, random_interior_point(p, rng), 0, 200)
        worst = max(worst, tr.max_drift)
    return "conserved-quantity drift < 1e-6", worst < 1e-6, f"worst {worst:.2e} over {n} runs"


def check_period(n: int = 5, seed: int = 1) -> Check:
    rng = np.random.default_rng(seed)
    worst_rel, worst_gap = 0.0, 0.0
    for _ in range(n):
        p = random_params(rng)
        eq = equilibrium(p)
        x0 = PhasePoint(eq.omega, eq.lam + 1e-3)
        t, gap = measured_period(p, x0)
        worst_rel = max(worst_rel, abs(t / period(p) - 1))
        worst_gap = max(worst_gap, gap)
    ok = worst_rel < 5e-3 and worst_gap < 1e-5
    return "small-orbit period", ok, f"max rel err {worst_rel:.2e}, max return gap {worst_gap:.2e}"


def check_recovery(seed: int = 0) -> Check:
    sc = make_country(seed=seed)
    rep = run_country(sc.raw, PipelineConfig())
    if rep.params is None:
        return "parameter recovery", False, "; ".join(rep.warnings)
    err = {n: abs(getattr(rep.params, n) - getattr(sc.truth, n)) for n in PARAM_NAMES}
    worst = max(err, key=err.get)
    ok = err[worst] < 1e-2 and rep.bounds is not None and rep.bounds.decision == "reject-at-1%"
    decision = rep.bounds.decision if rep.bounds else "n/a"
    return "parameter recovery", ok, f"worst |error| {err[worst]:.2e} ({worst}), bounds {decision}"


def check_pipeline_green(seed: int = 0) -> Check:
    rep = run_country(make_country(seed=seed).raw, PipelineConfig())
    failed = [s for s, ok in rep.stages.items() if not ok]
    return "fixture pipeline all green", rep.all_green, "failed: " + (", ".join(failed) or "none")


def check_break_detected(seed: int = 0) -> Check:
    rep = run_country(make_country(seed=seed, break_year=1985, break_shift=0.01).raw, PipelineConfig())
    flagged = any(not s.stable for s in rep.stability.values())
    ok = flagged and rep.orbit is not None
    return "structural break flagged", ok, f"stability red: {flagged}, report complete: {rep.orbit is not None}"


def check_theil(n: int = 50, seed: int = 2) -> Check:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n):
        o = rng.uniform(0.5, 1.0, 20)
        s = o + rng.normal(0, 0.05, 20)
        th = theil_decompose(o, s)
        worst = max(worst, abs(th.u_bias + th.u_variance + th.u_covariance - 1))
    shift = theil_decompose(o, o + 0.1)
    ok = worst < 1e-10 and (shift.u_bias, shift.u_variance) == (1.0, 0.0) and shift.u_covariance < 1e-12
    return "Theil proportions", ok, f"max |sum-1| {worst:.1e}"


def check_orbit_self_consistency(seed: int = 3) -> Check:
    rng = np.random.default_rng(seed)
    p = random_params(rng)
    x0 = random_interior_point(p, rng)
    tr = simulate(p, x0, 1960, 40)
    ev = best_orbit(p, (AnnualSeries(1960, tr.omega), AnnualSeries(1960, tr.lam)))
    v_true = conserved_quantity(p, x0)
    dv = abs(conserved_quantity(p, ev.best_initial[1]) - v_true) / abs(v_true)
    ok = ev.joint_mse < 1e-10 and dv < 1e-8
    return "best-orbit self-consistency", ok, f"joint MSE {ev.joint_mse:.1e}, |dV|/|V| {dv:.1e}"


CHECKS: tuple[Callable[[], Check], ...] = (
    check_drift,
    check_period,
    check_recovery,
    check_pipeline_green,
    check_break_detected,
    check_theil,
    check_orbit_self_consistency,
)


def run_selftest(echo: Callable[[str], None] = print) -> bool:
    all_ok = True
    for check in CHECKS:
        try:
            name, ok, detail = check()
        except Exception as exc:  # a crash is a failure, keep going
            name, ok, detail = check.__name__, False, f"{type(exc).__name__}: {exc}"
        all_ok = all_ok and ok
        echo(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
    return all_ok
