"""End-to-end study per country: ingest, estimate, test, simulate, evaluate.

``run_country`` executes the stages in a fixed order and records a pass/fail
flag for each. Only ingestion and derivation failures are fatal; a failed
test (no cointegration, serial correlation, an unstable regression) is
recorded as a warning and the report carries on with whatever can still be
computed.
"""

from __future__ import annotations

import math
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from goodwin_cycles.config import PipelineConfig
from goodwin_cycles.econometrics import (
    AdfResult,
    BoundsTestResult,
    RegressionFit,
    StabilityTestResult,
    adf_test,
    bounds_test,
    cusum_from_fit,
    diagnose,
    fit_uecm,
    levels_model,
    log_trend,
    restricted_ecm,
)
from goodwin_cycles.errors import GoodwinError
from goodwin_cycles.evaluation import (
    EquilibriumErrors,
    OrbitEvaluation,
    best_orbit,
    equilibrium_errors,
)
from goodwin_cycles.ingest import (
    CountrySeries,
    DerivedSeries,
    derive,
    empirical_means,
    load_country_csv,
)
from goodwin_cycles.model import (
    Equilibrium,
    GoodwinParams,
    equilibrium,
    measured_period,
    period,
)
from goodwin_cycles.timeseries import SummaryStats, log_growth, summarize

STAGES = (
    "derive",
    "unit_root",
    "uecm",
    "bounds_test",
    "levels_model",
    "restricted_ecm",
    "stability",
    "parameters",
    "equilibrium",
    "equilibrium_errors",
    "orbit",
)

ADF_VARIABLES = (
    "real_wage_growth",
    "employment_rate",
    "productivity_growth",
    "inflation",
    "nominal_wage_growth",
)

PARAM_NAMES = ("alpha", "beta", "delta", "nu", "gamma", "rho", "k")


@dataclass(frozen=True)
class ParamEstimates:
    params: GoodwinParams
    provenance: dict[str, str]
    productivity_fit: RegressionFit
    labour_fit: RegressionFit
    levels_fit: RegressionFit


@dataclass
class CountryReport:
    """Everything the study produces for one country.

    ``stages`` maps each stage name to its pass flag; stages that could not
    run are ``False`` and explained in ``warnings``. ``notes`` hold
    informational messages that do not affect any flag. ``error`` is set only
    for fatal ingestion/derivation failures, in which case the report is a
    stub.
    """

    country: str
    window: tuple[int, int] | None = None
    nobs: int = 0
    derived: DerivedSeries | None = None
    summary: dict[str, SummaryStats] = field(default_factory=dict)
    adf: dict[str, AdfResult] = field(default_factory=dict)
    uecm: RegressionFit | None = None
    uecm_lag: int | None = None
    uecm_ljung_box: dict[int, float] = field(default_factory=dict)
    bounds: BoundsTestResult | None = None
    levels: RegressionFit | None = None
    recm: RegressionFit | None = None
    stability: dict[str, StabilityTestResult] = field(default_factory=dict)
    estimates: ParamEstimates | None = None
    equilibrium: Equilibrium | None = None
    period_linear: float | None = None
    period_measured: float | None = None
    errors: EquilibriumErrors | None = None
    orbit: OrbitEvaluation | None = None
    stages: dict[str, bool] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    error: str | None = None

    @property
    def params(self) -> GoodwinParams | None:
        return self.estimates.params if self.estimates else None

    @property
    def provenance(self) -> dict[str, str]:
        return self.estimates.provenance if self.estimates else {}

    @property
    def complete(self) -> bool:
        return self.error is None

    @property
    def all_green(self) -> bool:
        return self.complete and all(self.stages.get(s, False) for s in STAGES)

    def warn(self, message: str) -> None:
        self.warnings.append(message)


def _span(s) -> str:
    return f"{s.start_year}-{s.end_year}"


def estimate_params_detailed(
    d: DerivedSeries, cfg: PipelineConfig | None = None, *, levels_fit: RegressionFit | None = None
) -> ParamEstimates:
    """Estimate the seven model parameters and say where each came from.

    ``levels_fit`` reuses an already fitted long-run Phillips regression.
    """
    _, alpha, prod_fit = log_trend(d.productivity)
    _, beta, lab_fit = log_trend(d.N)
    z = d.real_wage_growth
    if levels_fit is None:
        levels_fit = levels_model(z, d.lam)
    gamma, rho = levels_fit.coef("const"), levels_fit.coef("lambda")
    delta = float(np.mean(d.delta.values))
    nu = float(np.mean(d.nu.values))
    k = float(np.mean(d.k_rate.values))
    params = GoodwinParams(alpha=alpha, beta=beta, delta=delta, nu=nu, gamma=gamma, rho=rho, k=k)
    lv = f"levels regression z_t = gamma + rho*lambda_t, {_span(levels_fit.residuals)}"
    provenance = {
        "alpha": f"slope of ln(Y/L) on a linear trend, {_span(d.productivity)}",
        "beta": f"slope of ln(N) on a linear trend, {_span(d.N)}",
        "delta": f"mean of depreciation/capital, {_span(d.delta)}",
        "nu": f"mean of capital/output, {_span(d.nu)}",
        "gamma": f"intercept of the {lv}",
        "rho": f"slope of the {lv}",
        "k": f"mean of investment/profits, {_span(d.k_rate)}",
    }
    return ParamEstimates(params, provenance, prod_fit, lab_fit, levels_fit)


def estimate_params(d: DerivedSeries, cfg: PipelineConfig | None = None) -> GoodwinParams:
    """Trend growth rates, sample means and the long-run Phillips curve."""
    return estimate_params_detailed(d, cfg).params


def _adf_battery(
    raw: CountrySeries, d: DerivedSeries, cfg: PipelineConfig
) -> tuple[dict[str, AdfResult], list[str]]:
    """ADF tests on the five growth/level series; constant series are skipped."""
    series = {
        "real_wage_growth": d.real_wage_growth,
        "employment_rate": d.lam,
        "productivity_growth": log_growth(d.productivity),
        "inflation": log_growth(raw.gdp_deflator),
        "nominal_wage_growth": log_growth(raw.nominal_wage_rate()),
    }
    results, skipped = {}, []
    for name, s in series.items():
        v = s.values
        if np.ptp(v) <= 1e-12 * max(1.0, float(np.max(np.abs(v)))):
            skipped.append(name)
            continue
        results[name] = adf_test(s, spec=cfg.adf_spec, max_lags=cfg.adf_max_lags)
    return results, skipped


def _run_stage(report: CountryReport, name: str, fn: Callable[[], bool], needs: str | None = None) -> None:
    """Run one stage; a ``GoodwinError``/``ArithmeticError``/``ValueError`` marks it failed.

    ``needs`` names an upstream result that is missing, so the stage is skipped.
    """
    if needs is not None:
        report.stages[name] = False
        report.warn(f"{name}: skipped, no {needs}")
        return
    try:
        ok = fn()
    except (GoodwinError, ArithmeticError, ValueError) as exc:
        report.stages[name] = False
        report.warn(f"{name}: {type(exc).__name__}: {exc}")
        return
    report.stages[name] = bool(ok)


def run_country(raw: CountrySeries, cfg: PipelineConfig) -> CountryReport:
    """Full study for one country, in procedure order.

    Raises only if the model variables cannot be constructed.
    """
    d = derive(raw, cfg.k_deflator)
    rep = CountryReport(
        country=raw.country,
        window=(int(raw.start_year), int(raw.end_year)),
        nobs=len(raw),
        derived=d,
        summary={
            "omega": summarize(d.omega),
            "lambda": summarize(d.lam),
        },
    )
    rep.stages["derive"] = True
    z, lam = d.real_wage_growth, d.lam

    def unit_root():
        rep.adf, skipped = _adf_battery(raw, d, cfg)
        for name in skipped:
            rep.notes.append(f"unit_root: {name} is constant, ADF not applicable")
        return True

    def uecm():
        rep.uecm, rep.uecm_lag = fit_uecm(z, lam, cfg.max_lag_p)
        report = diagnose(rep.uecm.residuals)
        rep.uecm_ljung_box = report.ljung_box
        if not report.serially_uncorrelated:
            rep.warn("uecm: residuals show serial correlation at 5%")
            return False
        return True

    def bounds():
        rep.bounds = bounds_test(rep.uecm)
        if not rep.bounds.rejects:
            rep.warn(f"bounds_test: no evidence of a long-run relation ({rep.bounds.decision})")
            return False
        return True

    def levels():
        rep.levels = levels_model(z, lam)
        ok = True
        if rep.levels.diagnostics is not None and not rep.levels.diagnostics.serially_uncorrelated:
            rep.warn("levels_model: residuals show serial correlation at 5%")
            ok = False
        if rep.levels.coef("lambda") <= 0:
            rep.warn("levels_model: Phillips slope is not positive")
            ok = False
        return ok

    def recm():
        rep.recm = restricted_ecm(z, lam, rep.levels)
        if not rep.recm.flags["error_correction"]:
            rep.warn("restricted_ecm: error-correction coefficient is not negative and significant")
            return False
        return True

    def stability():
        ok = True
        for key, fit in (("uecm", rep.uecm), ("levels", rep.levels)):
            if fit is None:
                continue
            res = cusum_from_fit(fit)
            rep.stability[key] = res
            if not res.cusum_ok:
                rep.warn(f"stability: CUSUM leaves the 99% band for the {key} regression")
            if not res.cusumsq_ok:
                rep.warn(f"stability: CUSUMSQ leaves the 99% band for the {key} regression")
            ok = ok and res.stable
        if not rep.stability:
            raise ValueError("no regression available")
        return ok

    def parameters():
        rep.estimates = estimate_params_detailed(d, cfg, levels_fit=rep.levels)
        p = rep.estimates.params
        if not 0.0 < p.k <= 1.0:
            rep.warn(f"parameters: accumulation rate k = {p.k:.3f} is outside (0, 1]")
        if not p.has_center:
            rep.warn("parameters: estimates do not give an interior cycle centre")
            return False
        return True

    def equilibria():
        p = rep.params
        rep.equilibrium = equilibrium(p)
        rep.period_linear = period(p)
        if rep.equilibrium.lam >= 1.0:
            rep.warn(f"equilibrium: employment rate {rep.equilibrium.lam:.4f} is not below 1")
            return False
        return rep.equilibrium.interior

    def errors():
        eq = rep.equilibrium
        rep.errors = equilibrium_errors(empirical_means(d), (eq.omega, eq.lam))
        return True

    def orbit():
        rep.orbit = best_orbit(rep.params, d, mode=cfg.mse_mode)
        year, x0 = rep.orbit.best_initial
        if rep.orbit.simulated.exceeds_full_employment:
            rep.warn("orbit: simulated employment rate exceeds 1")
        try:
            rep.period_measured, _ = measured_period(rep.params, x0)
        except (GoodwinError, ValueError) as exc:
            rep.warn(f"orbit: no measured period ({exc})")
        return math.isfinite(rep.orbit.joint_mse)

    _run_stage(rep, "unit_root", unit_root)
    _run_stage(rep, "uecm", uecm)
    _run_stage(rep, "bounds_test", bounds, None if rep.uecm else "UECM fit")
    _run_stage(rep, "levels_model", levels)
    _run_stage(rep, "restricted_ecm", recm, None if rep.levels else "levels fit")
    _run_stage(rep, "stability", stability)
    _run_stage(rep, "parameters", parameters)
    _run_stage(rep, "equilibrium", equilibria, None if rep.estimates else "parameter estimates")
    no_eq = None if rep.period_linear is not None else "equilibrium"
    _run_stage(rep, "equilibrium_errors", errors, no_eq)
    _run_stage(rep, "orbit", orbit, no_eq)
    return rep


def load_and_run(country: str, cfg: PipelineConfig) -> CountryReport:
    """Ingest and study one country; fatal errors become a stub report."""
    try:
        raw = load_country_csv(
            cfg.csv_path(country), country, window=cfg.window(country), column_map=cfg.column_map
        )
        return run_country(raw, cfg)
    except (GoodwinError, OSError, ValueError, ArithmeticError) as exc:
        return CountryReport(country=country, error=f"{type(exc).__name__}: {exc}")


def run_study(cfg: PipelineConfig, countries: list[str] | None = None,
              max_workers: int | None = None) -> list[CountryReport]:
    """Run every configured country concurrently; results keep config order."""
    names = list(countries) if countries else list(cfg.countries)
    if not names:
        raise ValueError("no countries configured")
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        return list(pool.map(lambda c: load_and_run(c, cfg), names))
