"""Ordinary least squares with classical (homoskedastic) inference."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from scipy import stats

from goodwin_cycles.errors import RankDeficient, TooFewObservations
from goodwin_cycles.timeseries import AnnualSeries, align_all


@dataclass(frozen=True)
class RegressionFit:
    """Result of an OLS regression.

    ``endog`` and ``exog`` keep the exact estimation sample so that follow-up
    procedures (restricted F-tests, recursive residuals) can refit without
    rebuilding the lag structure.
    """

    names: tuple[str, ...]
    coefficients: np.ndarray
    std_errors: np.ndarray
    t_values: np.ndarray
    p_values: np.ndarray
    r_squared: float
    adj_r_squared: float
    f_stat: float
    f_pvalue: float
    ssr: float
    residuals: AnnualSeries
    nobs: int
    nparams: int
    has_intercept: bool
    cov_params: np.ndarray = field(repr=False)
    endog: np.ndarray = field(repr=False)
    exog: np.ndarray = field(repr=False)
    diagnostics: Any = None
    flags: dict = field(default_factory=dict)

    @property
    def df_resid(self) -> int:
        return self.nobs - self.nparams

    @property
    def sigma2(self) -> float:
        return self.ssr / self.df_resid

    @property
    def bic(self) -> float:
        return information_criterion(self.ssr, self.nobs, self.nparams)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def coef(self, name: str) -> float:
        return float(self.coefficients[self.index(name)])

    def pvalue(self, name: str) -> float:
        return float(self.p_values[self.index(name)])

    def summary_row(self) -> dict[str, float]:
        row: dict[str, float] = {}
        for i, name in enumerate(self.names):
            row[f"{name}"] = float(self.coefficients[i])
            row[f"{name}_se"] = float(self.std_errors[i])
            row[f"{name}_p"] = float(self.p_values[i])
        row.update(
            r_squared=self.r_squared,
            adj_r_squared=self.adj_r_squared,
            f_stat=self.f_stat,
            f_pvalue=self.f_pvalue,
            nobs=self.nobs,
        )
        return row


def information_criterion(ssr: float, nobs: int, nparams: int) -> float:
    """BIC in the ``n ln(SSR/n) + k ln n`` form."""
    with np.errstate(divide="ignore"):
        return float(nobs * np.log(ssr / nobs) + nparams * np.log(nobs))


def fit_arrays(
    y: np.ndarray,
    X: np.ndarray,
    *,
    names: Sequence[str] | None = None,
    has_intercept: bool = False,
    start_year: int = 0,
) -> RegressionFit:
    """OLS on raw arrays. ``X`` must already contain any intercept column."""
    y = np.asarray(y, dtype=float).ravel()
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X[:, None]
    n, k = X.shape
    if y.size != n:
        raise ValueError(f"endog has {y.size} rows, exog has {n}")
    if n <= k:
        raise TooFewObservations(f"{n} observations for {k} parameters")
    if names is None:
        names = tuple(f"x{i}" for i in range(k))
    names = tuple(names)
    if len(names) != k:
        raise ValueError("one name per regressor column is required")

    q, r = np.linalg.qr(X)
    diag = np.abs(np.diag(r))
    if diag.min() <= diag.max() * max(n, k) * np.finfo(float).eps * 10:
        raise RankDeficient(f"design matrix with columns {names} is not of full column rank")
    beta = np.linalg.solve(r, q.T @ y)
    resid = y - X @ beta
    ssr = float(resid @ resid)
    df = n - k
    rinv = np.linalg.solve(r, np.eye(k))
    xtx_inv = rinv @ rinv.T
    cov = (ssr / df) * xtx_inv
    se = np.sqrt(np.diag(cov))
    with np.errstate(divide="ignore", invalid="ignore"):
        tvals = beta / se
    pvals = 2.0 * stats.t.sf(np.abs(tvals), df)

    if has_intercept:
        sst = float(((y - y.mean()) ** 2).sum())
    else:
        sst = float(y @ y)
    r2 = 1.0 - ssr / sst if sst > 0 else 0.0
    k_slopes = k - 1 if has_intercept else k
    adj = 1.0 - (1.0 - r2) * (n - 1 if has_intercept else n) / df
    if k_slopes > 0:
        if ssr > 0:
            f = ((sst - ssr) / k_slopes) / (ssr / df)
            fp = float(stats.f.sf(f, k_slopes, df))
        else:
            f, fp = np.inf, 0.0
    else:
        f, fp = np.nan, np.nan

    return RegressionFit(
        names=names,
        coefficients=beta,
        std_errors=se,
        t_values=tvals,
        p_values=pvals,
        r_squared=float(r2),
        adj_r_squared=float(adj),
        f_stat=float(f),
        f_pvalue=float(fp),
        ssr=ssr,
        residuals=AnnualSeries(start_year, resid, "residuals"),
        nobs=n,
        nparams=k,
        has_intercept=has_intercept,
        cov_params=cov,
        endog=y,
        exog=X,
    )


def ols(
    y: AnnualSeries,
    X: Sequence[AnnualSeries],
    intercept: bool = True,
    names: Sequence[str] | None = None,
) -> RegressionFit:
    """Regress ``y`` on the regressor series over their common year window.

    Parameters
    ----------
    y : AnnualSeries
        Dependent variable.
    X : sequence of AnnualSeries
        Regressors; may be empty when ``intercept`` is set.
    intercept : bool
        Prepend a constant column named ``const``.
    names : sequence of str, optional
        Names for the regressors in ``X`` (not including ``const``). Defaults
        to the series labels.
    """
    series = align_all(y, *X)
    y_al, xs = series[0], series[1:]
    if names is None:
        names = [s.label or f"x{i}" for i, s in enumerate(xs, start=1)]
    cols = [s.values for s in xs]
    col_names = list(names)
    if intercept:
        cols.insert(0, np.ones(len(y_al)))
        col_names.insert(0, "const")
    if not cols:
        raise ValueError("regression has no regressors")
    design = np.column_stack(cols)
    return fit_arrays(
        y_al.values,
        design,
        names=col_names,
        has_intercept=intercept,
        start_year=y_al.start_year,
    )


def wald_f(fit: RegressionFit, names: Sequence[str]) -> float:
    """Wald F-statistic for the joint restriction that ``names`` are all zero."""
    idx = [fit.index(n) for n in names]
    b = fit.coefficients[idx]
    v = fit.cov_params[np.ix_(idx, idx)]
    return float(b @ np.linalg.solve(v, b) / len(idx))


def restricted_f(fit: RegressionFit, names: Sequence[str]) -> float:
    """F-statistic from the SSRs of ``fit`` and the refit without ``names``."""
    drop = {fit.index(n) for n in names}
    keep = [i for i in range(fit.nparams) if i not in drop]
    if keep:
        restricted = fit_arrays(fit.endog, fit.exog[:, keep], names=[fit.names[i] for i in keep])
        ssr_r = restricted.ssr
    else:
        ssr_r = float(fit.endog @ fit.endog)
    q = len(drop)
    return float(((ssr_r - fit.ssr) / q) / (fit.ssr / fit.df_resid))
