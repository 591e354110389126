"""CSV output for a study.

Every file starts with a ``# config_hash: <hash>`` comment line followed by
a header row. Numbers are written with ``%.10g``; a missing value is an
empty cell. File layouts are listed in ``TABLE_COLUMNS``; per-country files
are ``trajectory_<country>.csv``, ``stability_<country>.csv`` and
``derived_<country>.csv``.
"""

from __future__ import annotations

import csv
import math
from collections.abc import Iterable, Sequence
from pathlib import Path

import numpy as np

from goodwin_cycles.config import PipelineConfig
from goodwin_cycles.econometrics import RegressionFit
from goodwin_cycles.errors import IoFailure
from goodwin_cycles.ingest import derived_table
from goodwin_cycles.pipeline import ADF_VARIABLES, PARAM_NAMES, STAGES, CountryReport

LB_LAGS = (1, 2, 3, 4, 5)
_THEIL = ("rmse_over_mean", "u_bias", "u_variance", "u_covariance")
_TREND = (
    "log_level0", "growth", "growth_se", "growth_p", "r_squared", "adj_r_squared",
    "f_stat", "f_pvalue", "ljung_box_q5", "ljung_box_p5", "ljung_box_q10", "ljung_box_p10",
    "jb_stat", "jb_p", "arch_stat", "arch_p", "nobs",
)

TABLE_COLUMNS: dict[str, tuple[str, ...]] = {
    "summary_statistics": (
        "country", "first_year", "last_year", "nobs",
        "omega_mean", "omega_std", "lambda_mean", "lambda_std",
    ),
    "parameter_estimates": (
        "country", *PARAM_NAMES, "omega_G", "lambda_G", "T_G", "T_measured",
    ),
    "parameter_provenance": ("country", "parameter", "value", "source"),
    "equilibrium_errors": (
        "country", "abs_err_lambda", "rel_err_lambda", "abs_err_omega", "rel_err_omega",
    ),
    "orbit_mse": (
        "country",
        *(f"{c}_lambda" for c in _THEIL),
        *(f"{c}_omega" for c in _THEIL),
        "joint_mse", "best_year", "best_omega", "best_lambda", "mode",
    ),
    "productivity_growth": ("country", *_TREND),
    "labor_force_growth": ("country", *_TREND),
    "unit_root": ("country", *ADF_VARIABLES),
    "unit_root_detail": ("country", "variable", "statistic", "p_value", "lags", "nobs", "spec"),
    "uecm_serial_correlation": ("country", "lag_p", *(f"lag{m}" for m in LB_LAGS)),
    "bounds_test": (
        "country", "f_statistic", "decision",
        "lower_1pct", "upper_1pct", "lower_5pct", "upper_5pct", "lower_10pct", "upper_10pct",
    ),
    "levels_model": (
        "country", "gamma", "rho", "gamma_p", "rho_p", "adj_r_squared",
        *(f"lag{m}" for m in LB_LAGS),
    ),
    "restricted_ecm": (
        "country", "phi10", "phi11", "phi12", "phi10_p", "phi11_p", "phi12_p",
        "adj_r_squared", "error_correction",
    ),
    "stability": ("country", "regression", "cusum_ok", "cusumsq_ok", "n_recursive"),
    "pipeline_status": ("country", *STAGES, "error", "warnings"),
}

TRAJECTORY_COLUMNS = ("year", "omega_obs", "lambda_obs", "omega_sim", "lambda_sim")
STABILITY_PATH_COLUMNS = (
    "regression", "year", "recursive_residual", "cusum", "cusum_lower", "cusum_upper",
    "cusumsq", "cusumsq_lower", "cusumsq_upper",
)
AVERAGE_ROW_TABLES = ("equilibrium_errors", "orbit_mse")


def fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if math.isnan(x):
            return ""
        return f"{x:.10g}"
    return str(x)


def _write(path: Path, columns: Sequence[str], rows: Iterable[Sequence], config_hash: str) -> Path:
    try:
        with path.open("w", newline="", encoding="utf-8") as fh:
            fh.write(f"# config_hash: {config_hash}\n")
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(columns)
            for row in rows:
                w.writerow([fmt(v) for v in row])
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc
    return path


def _average(rows: list[list], columns: Sequence[str], numeric: Sequence[str]) -> list:
    """Unweighted mean over the rows that have a value in each numeric column."""
    out: list = ["Average"] + [None] * (len(columns) - 1)
    for name in numeric:
        i = columns.index(name)
        vals = [r[i] for r in rows if r[i] is not None]
        out[i] = float(np.mean(vals)) if vals else None
    return out


def _trend_row(country: str, fit: RegressionFit | None) -> list:
    if fit is None:
        return [country] + [None] * len(_TREND)
    dg = fit.diagnostics
    lb = (dg.ljung_box_q.get(5), dg.ljung_box.get(5), dg.ljung_box_q.get(10), dg.ljung_box.get(10)) \
        if dg else (None,) * 4
    jb = dg.jarque_bera if dg else (None, None)
    arch = dg.arch_lm if dg else (None, None)
    i = fit.index("trend")
    return [
        country, fit.coefficients[0], fit.coefficients[i], fit.std_errors[i], fit.p_values[i],
        fit.r_squared, fit.adj_r_squared, fit.f_stat, fit.f_pvalue, *lb, *jb, *arch, fit.nobs,
    ]


def table_rows(reports: Sequence[CountryReport]) -> dict[str, list[list]]:
    """All cross-country tables as lists of rows (without the header)."""
    t: dict[str, list[list]] = {name: [] for name in TABLE_COLUMNS}
    for r in reports:
        c = r.country
        if r.summary:
            om, la = r.summary["omega"], r.summary["lambda"]
            t["summary_statistics"].append(
                [c, r.window[0], r.window[1], r.nobs, om.mean, om.std, la.mean, la.std]
            )
        else:
            t["summary_statistics"].append([c] + [None] * 7)

        p = r.params
        eq = r.equilibrium
        t["parameter_estimates"].append([
            c,
            *((getattr(p, n) for n in PARAM_NAMES) if p else [None] * len(PARAM_NAMES)),
            eq.omega if eq else None,
            eq.lam if eq else None,
            r.period_linear,
            r.period_measured,
        ])
        for n in PARAM_NAMES:
            if p:
                t["parameter_provenance"].append([c, n, getattr(p, n), r.provenance[n]])

        e = r.errors
        t["equilibrium_errors"].append(
            [c, e.abs_err_lambda, e.rel_err_lambda, e.abs_err_omega, e.rel_err_omega]
            if e else [c] + [None] * 4
        )

        o = r.orbit
        if o:
            def theil(ev):
                return [getattr(ev, f) for f in _THEIL] if ev else [None] * 4
            year, x0 = o.best_initial
            t["orbit_mse"].append(
                [c, *theil(o.lambda_eval), *theil(o.omega_eval), o.joint_mse, year, x0.omega,
                 x0.lam, o.mode]
            )
        else:
            t["orbit_mse"].append([c] + [None] * (len(TABLE_COLUMNS["orbit_mse"]) - 1))

        est = r.estimates
        t["productivity_growth"].append(_trend_row(c, est.productivity_fit if est else None))
        t["labor_force_growth"].append(_trend_row(c, est.labour_fit if est else None))

        t["unit_root"].append([c, *(r.adf[v].p_value if v in r.adf else None for v in ADF_VARIABLES)])
        for v in ADF_VARIABLES:
            if v in r.adf:
                a = r.adf[v]
                t["unit_root_detail"].append([c, v, a.statistic, a.p_value, a.lags_used, a.nobs, a.spec])

        t["uecm_serial_correlation"].append(
            [c, r.uecm_lag, *(r.uecm_ljung_box.get(m) for m in LB_LAGS)]
        )

        b = r.bounds
        if b:
            flat = [x for _lvl, lo, hi in b.bounds for x in (lo, hi)]
            t["bounds_test"].append([c, b.f_statistic, b.decision, *flat])
        else:
            t["bounds_test"].append([c] + [None] * 8)

        lv = r.levels
        if lv:
            lb = lv.diagnostics.ljung_box if lv.diagnostics else {}
            t["levels_model"].append([
                c, lv.coef("const"), lv.coef("lambda"), lv.pvalue("const"), lv.pvalue("lambda"),
                lv.adj_r_squared, *(lb.get(m) for m in LB_LAGS),
            ])
        else:
            t["levels_model"].append([c] + [None] * 10)

        rc = r.recm
        if rc:
            names = ("const", "d_lambda_lag1", "ect_lag1")
            t["restricted_ecm"].append([
                c, *(rc.coef(n) for n in names), *(rc.pvalue(n) for n in names),
                rc.adj_r_squared, rc.flags["error_correction"],
            ])
        else:
            t["restricted_ecm"].append([c] + [None] * 8)

        for key, s in r.stability.items():
            t["stability"].append([c, key, s.cusum_ok, s.cusumsq_ok, s.recursive_residuals.size])

        t["pipeline_status"].append(
            [c, *(r.stages.get(s) for s in STAGES), r.error, "; ".join(r.warnings)]
        )

    for name in AVERAGE_ROW_TABLES:
        cols = TABLE_COLUMNS[name]
        numeric = [n for n in cols[1:] if n not in ("best_year", "best_omega", "best_lambda", "mode")]
        t[name].append(_average(t[name], cols, numeric))
    return t


def _trajectory_rows(r: CountryReport) -> list[list]:
    d, o = r.derived, r.orbit
    sim = o.simulated
    rows = []
    for i, year in enumerate(d.omega.years):
        rows.append([int(year), d.omega.values[i], d.lam.values[i], sim.omega[i], sim.lam[i]])
    if o.mode == "per-variable":
        for row, w in zip(rows, o.omega_simulated.omega):
            row[3] = w
    return rows


def _stability_rows(r: CountryReport) -> list[list]:
    rows = []
    fits = {"uecm": r.uecm, "levels": r.levels}
    for key, s in r.stability.items():
        fit = fits[key]
        first = fit.residuals.start_year + fit.nparams
        lo, hi = s.cusum_bounds
        slo, shi = s.cusumsq_bounds
        for i in range(s.recursive_residuals.size):
            rows.append([
                key, first + i, s.recursive_residuals[i], s.cusum_path[i], lo[i], hi[i],
                s.cusumsq_path[i], slo[i], shi[i],
            ])
    return rows


def emit_reports(reports: Sequence[CountryReport], cfg: PipelineConfig) -> list[Path]:
    """Write all tables and per-country files into ``cfg.output_dir``."""
    if not reports:
        raise ValueError("no reports to emit")
    out = Path(cfg.output_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise IoFailure(f"cannot create {out}: {exc}") from exc
    h = cfg.fingerprint()
    written = []
    for name, rows in table_rows(reports).items():
        written.append(_write(out / f"{name}.csv", TABLE_COLUMNS[name], rows, h))
    for r in reports:
        if r.orbit is not None:
            written.append(
                _write(out / f"trajectory_{r.country}.csv", TRAJECTORY_COLUMNS, _trajectory_rows(r), h)
            )
        if r.stability:
            written.append(
                _write(out / f"stability_{r.country}.csv", STABILITY_PATH_COLUMNS,
                       _stability_rows(r), h)
            )
        if r.derived is not None:
            table = derived_table(r.derived)
            cols = tuple(table[0])
            written.append(
                _write(out / f"derived_{r.country}.csv", cols, ([row[k] for k in cols] for row in table), h)
            )
    return written
