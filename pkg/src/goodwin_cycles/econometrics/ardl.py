"""Phillips-curve estimation by bounds testing and error correction.

Given real wage growth ``z`` and the employment rate ``lambda`` on the same
years, the procedure is:

1. ``fit_uecm``: unrestricted error-correction model
   ``dz_t = c + f1*dlam_{t-1} + f2*z_{t-1} + f3*lam_{t-1} + sum_i g_i*dz_{t-i}``
   with the number of lagged ``dz`` terms chosen by BIC.
2. ``bounds_test``: F-test of ``f2 = f3 = 0`` against I(0)/I(1) bounds.
3. ``levels_model``: long-run ``z_t = gamma + rho*lam_t``.
4. ``restricted_ecm``: ``dz_t`` on ``dlam_{t-1}`` and the lagged levels residual.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from goodwin_cycles.econometrics.diagnostics import diagnose
from goodwin_cycles.econometrics.ols import RegressionFit, fit_arrays, ols, restricted_f
from goodwin_cycles.errors import TooFewObservations, WrongModelShape
from goodwin_cycles.timeseries import AnnualSeries, align

# Narayan (2005) critical bounds for 50 observations, one regressor:
# (significance level, I(0) lower bound, I(1) upper bound)
NARAYAN_N50 = ((0.01, 7.560, 8.685), (0.05, 5.220, 6.070), (0.10, 4.190, 4.940))

# Pesaran, Shin & Smith (2001) asymptotic bounds, unrestricted intercept, one regressor
PSS_ASYMPTOTIC = ((0.01, 6.84, 7.84), (0.05, 4.94, 5.73), (0.10, 4.04, 4.78))

UECM_LEVELS = ("z_lag1", "lambda_lag1")


@dataclass(frozen=True)
class BoundsTestResult:
    f_statistic: float
    bounds: tuple[tuple[float, float, float], ...]
    decision: str

    @property
    def rejects(self) -> bool:
        return self.decision.startswith("reject")


def _uecm_design(z: np.ndarray, lam: np.ndarray, p: int, first: int):
    t = np.arange(first, z.size)
    cols = [np.ones(t.size), lam[t - 1] - lam[t - 2], z[t - 1], lam[t - 1]]
    names = ["const", "d_lambda_lag1", "z_lag1", "lambda_lag1"]
    for i in range(1, p + 1):
        cols.append(z[t - i] - z[t - i - 1])
        names.append(f"d_z_lag{i}")
    return z[t] - z[t - 1], np.column_stack(cols), names


def fit_uecm(z: AnnualSeries, lam: AnnualSeries, max_lag_p: int = 4) -> tuple[RegressionFit, int]:
    """Fit the unrestricted ECM, choosing the number of lagged ``dz`` terms by BIC."""
    z, lam = align(z, lam)
    zv, lv = z.values, lam.values
    common_first = max(2, max_lag_p + 1)
    if zv.size - common_first <= 4 + max_lag_p:
        raise TooFewObservations(
            f"{zv.size} observations are too few for a UECM with up to {max_lag_p} lags"
        )
    best_p, best_bic = 0, np.inf
    for p in range(max_lag_p + 1):
        y, X, names = _uecm_design(zv, lv, p, common_first)
        bic = fit_arrays(y, X, names=names, has_intercept=True).bic
        if bic < best_bic - 1e-12:
            best_p, best_bic = p, bic
    first = max(2, best_p + 1)
    y, X, names = _uecm_design(zv, lv, best_p, first)
    fit = fit_arrays(y, X, names=names, has_intercept=True, start_year=z.start_year + first)
    return fit, best_p


def bounds_decision(f_stat: float, bounds=NARAYAN_N50) -> str:
    """Classify an F-statistic against ordered (level, lower, upper) bounds."""
    ordered = sorted(bounds)
    for level, _lower, upper in ordered:
        if f_stat > upper:
            return f"reject-at-{level * 100:g}%"
    _level, lower, _upper = ordered[-1]
    if f_stat < lower:
        return "fail-to-reject"
    return "inconclusive"


def bounds_test(fit: RegressionFit, bounds=NARAYAN_N50) -> BoundsTestResult:
    if any(name not in fit.names for name in UECM_LEVELS):
        raise WrongModelShape(f"regression with columns {fit.names} is not a UECM")
    f = restricted_f(fit, UECM_LEVELS)
    return BoundsTestResult(f, tuple(sorted(bounds)), bounds_decision(f, bounds))


def levels_model(z: AnnualSeries, lam: AnnualSeries) -> RegressionFit:
    """Long-run Phillips curve ``z_t = gamma + rho*lambda_t``; coefficients are (gamma, rho)."""
    z, lam = align(z, lam)
    if len(z) < 4:
        raise TooFewObservations("the levels model needs at least 4 observations")
    fit = ols(z, [lam], names=["lambda"])
    report = diagnose(fit.residuals) if fit.nobs > 8 else None
    return replace(fit, diagnostics=report)


def restricted_ecm(z: AnnualSeries, lam: AnnualSeries, levels_fit: RegressionFit) -> RegressionFit:
    """Error-correction regression on the lagged levels-model residual.

    ``flags['error_correction']`` is true when the adjustment coefficient is
    negative and significant at 5%.
    """
    z, lam = align(z, lam)
    gamma, rho = levels_fit.coef("const"), levels_fit.coef("lambda")
    zv, lv = z.values, lam.values
    t = np.arange(2, zv.size)
    v_lag = zv[t - 1] - gamma - rho * lv[t - 1]
    X = np.column_stack([np.ones(t.size), lv[t - 1] - lv[t - 2], v_lag])
    y = zv[t] - zv[t - 1]
    fit = fit_arrays(
        y,
        X,
        names=["const", "d_lambda_lag1", "ect_lag1"],
        has_intercept=True,
        start_year=z.start_year + 2,
    )
    adj = fit.coef("ect_lag1")
    flags = {"error_correction": bool(adj < 0 and fit.pvalue("ect_lag1") < 0.05)}
    report = diagnose(fit.residuals) if fit.nobs > 8 else None
    return replace(fit, diagnostics=report, flags=flags)
