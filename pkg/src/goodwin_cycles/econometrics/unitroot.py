"""Augmented Dickey-Fuller test with BIC lag selection.

p-values come from MacKinnon's (1994) response surfaces for a single
I(1) series: ``p = Phi(b0 + b1*tau + b2*tau^2 [+ b3*tau^3])``, with the
small-p polynomial used left of the cut-off ``tau_star``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import stats

from goodwin_cycles.econometrics.ols import fit_arrays
from goodwin_cycles.errors import SeriesTooShort
from goodwin_cycles.timeseries import AnnualSeries

# (tau_min, tau_star, tau_max, small-p coefs, large-p coefs), ascending powers
_SURFACES = {
    "c": (
        -18.83,
        -1.61,
        2.74,
        (2.1659, 1.4412, 0.038269),
        (1.7339, 0.93202, -0.12745, -0.010368),
    ),
    "ct": (
        -16.18,
        -2.89,
        0.70,
        (3.2512, 1.6047, 0.049588),
        (2.5261, 0.61654, -0.37956, -0.060285),
    ),
}

SPECS = ("c", "ct")


@dataclass(frozen=True)
class AdfResult:
    statistic: float
    p_value: float
    lags_used: int
    spec: str
    nobs: int


def mackinnon_pvalue(tau: float, spec: str = "c") -> float:
    tau_min, tau_star, tau_max, small, large = _SURFACES[spec]
    if tau > tau_max:
        return 1.0
    if tau < tau_min:
        return 0.0
    coefs = small if tau <= tau_star else large
    return float(stats.norm.cdf(np.polynomial.polynomial.polyval(tau, coefs)))


def default_max_lags(n: int) -> int:
    return int(np.floor(4.0 * (n / 100.0) ** 0.25))


def _design(x: np.ndarray, lags: int, first: int, spec: str) -> tuple[np.ndarray, np.ndarray]:
    """ADF regression rows for differenced-sample indices ``first..``.

    Row ``t`` (index into ``dx``) explains ``dx[t] = x[t+1] - x[t]``.
    """
    dx = np.diff(x)
    idx = np.arange(first, dx.size)
    cols = [np.ones(idx.size)]
    if spec == "ct":
        cols.append(idx + 1.0)
    cols.append(x[idx])
    for i in range(1, lags + 1):
        cols.append(dx[idx - i])
    return dx[idx], np.column_stack(cols)


def adf_test(s, spec: str = "c", max_lags: int | None = None) -> AdfResult:
    """ADF unit-root test of ``s`` under a constant or constant+trend.

    The lag order minimises BIC over ``0..max_lags`` on a common sample
    (ties go to the shorter lag); the chosen model is then re-estimated on
    the longest sample it admits.
    """
    if spec not in SPECS:
        raise ValueError(f"spec must be one of {SPECS}, got {spec!r}")
    x = s.values if isinstance(s, AnnualSeries) else np.asarray(s, dtype=float).ravel()
    n = x.size
    if n < 15:
        raise SeriesTooShort(f"ADF needs at least 15 observations, got {n}")
    if max_lags is None:
        max_lags = default_max_lags(n)
    ndet = 2 if spec == "ct" else 1
    # keep enough residual degrees of freedom in the common sample
    max_lags = max(0, min(max_lags, (n - 1 - ndet - 1) // 2 - 1))

    best_lag, best_bic = 0, np.inf
    for lag in range(max_lags + 1):
        y, X = _design(x, lag, max_lags, spec)
        fit = fit_arrays(y, X)
        if fit.bic < best_bic - 1e-12:
            best_lag, best_bic = lag, fit.bic
    y, X = _design(x, best_lag, best_lag, spec)
    fit = fit_arrays(y, X)
    pos = ndet  # coefficient on the lagged level
    tau = float(fit.t_values[pos])
    return AdfResult(tau, mackinnon_pvalue(tau, spec), best_lag, spec, fit.nobs)
