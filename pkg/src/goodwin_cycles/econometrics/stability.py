"""CUSUM and CUSUM-of-squares stability tests on recursive residuals."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from goodwin_cycles.econometrics.ols import RegressionFit
from goodwin_cycles.errors import RankDeficient, TooFewObservations
from goodwin_cycles.timeseries import AnnualSeries

# Brown-Durbin-Evans boundary parameter for the 99% level
CUSUM_A99 = 1.143

# Edgerton & Wells (1994) response surface for the CUSUMSQ half-width at
# one-sided level 0.005 (i.e. a two-sided 99% band)
_EW_0005 = (1.6276236, -0.6703724, -1.2365861)


@dataclass(frozen=True)
class StabilityTestResult:
    recursive_residuals: np.ndarray
    cusum_path: np.ndarray
    cusum_bounds: tuple[np.ndarray, np.ndarray]
    cusumsq_path: np.ndarray
    cusumsq_bounds: tuple[np.ndarray, np.ndarray]
    cusum_ok: bool
    cusumsq_ok: bool

    @property
    def stable(self) -> bool:
        return self.cusum_ok and self.cusumsq_ok


def recursive_residuals(y: np.ndarray, X: np.ndarray) -> np.ndarray:
    """Standardized one-step prediction errors w_r for r = k+1..n."""
    n, k = X.shape
    w = np.empty(n - k)
    for j, r in enumerate(range(k, n)):
        Xr, yr = X[:r], y[:r]
        xtx = Xr.T @ Xr
        try:
            xtx_inv = np.linalg.inv(xtx)
        except np.linalg.LinAlgError:
            raise RankDeficient(f"first {r} rows of the design are rank deficient") from None
        if np.linalg.cond(xtx) > 1e14:
            raise RankDeficient(f"first {r} rows of the design are rank deficient")
        beta = xtx_inv @ (Xr.T @ yr)
        x = X[r]
        w[j] = (y[r] - x @ beta) / np.sqrt(1.0 + x @ xtx_inv @ x)
    return w


def cusumsq_halfwidth(m: int) -> float:
    """Critical half-width c0 for m recursive residuals at the 99% level."""
    nn = 0.5 * m - 1
    a, b, c = _EW_0005
    return a / nn**0.5 + b / nn + c / nn**1.5


def cusum(y, X, intercept: bool = False) -> StabilityTestResult:
    """CUSUM and CUSUMSQ paths with 99% bounds.

    ``X`` is a design matrix (or a sequence of regressor arrays/series);
    set ``intercept`` to prepend a constant column.
    """
    yv = y.values if isinstance(y, AnnualSeries) else np.asarray(y, dtype=float).ravel()
    if isinstance(X, np.ndarray):
        Xm = X.astype(float)
        if Xm.ndim == 1:
            Xm = Xm[:, None]
    else:
        Xm = np.column_stack(
            [c.values if isinstance(c, AnnualSeries) else np.asarray(c, dtype=float) for c in X]
        )
    if intercept:
        Xm = np.column_stack([np.ones(yv.size), Xm])
    n, k = Xm.shape
    if n <= k + 2:
        raise TooFewObservations(f"CUSUM needs more than {k + 2} observations, got {n}")

    w = recursive_residuals(yv, Xm)
    m = w.size
    scale = max(1.0, float(np.max(np.abs(yv))))
    if np.all(np.abs(w) <= 1e-10 * scale):
        # exact fit: nothing accumulates
        w = np.zeros(m)

    j = np.arange(1, m + 1)
    a = CUSUM_A99
    upper = a * np.sqrt(m) + 2.0 * a * j / np.sqrt(m)
    sq_line = j / m
    c0 = cusumsq_halfwidth(m)

    sd = w.std(ddof=1)
    if sd > 0:
        path = np.cumsum(w) / sd
        sq = np.cumsum(w**2) / np.sum(w**2)
        cusum_ok = bool(np.all(np.abs(path) <= upper))
        cusumsq_ok = bool(np.all(np.abs(sq - sq_line) <= c0))
    else:
        path = np.zeros(m)
        sq = np.zeros(m)
        cusum_ok = cusumsq_ok = True

    return StabilityTestResult(
        recursive_residuals=w,
        cusum_path=path,
        cusum_bounds=(-upper, upper),
        cusumsq_path=sq,
        cusumsq_bounds=(sq_line - c0, sq_line + c0),
        cusum_ok=cusum_ok,
        cusumsq_ok=cusumsq_ok,
    )


def cusum_from_fit(fit: RegressionFit) -> StabilityTestResult:
    return cusum(fit.endog, fit.exog)
