"""Residual diagnostics: Ljung-Box, Jarque-Bera and Engle's ARCH-LM."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from goodwin_cycles.econometrics.ols import fit_arrays
from goodwin_cycles.errors import RankDeficient, SeriesTooShort
from goodwin_cycles.timeseries import AnnualSeries

LB_LAGS = (1, 2, 3, 4, 5)


def _values(x) -> np.ndarray:
    if isinstance(x, AnnualSeries):
        return x.values
    return np.asarray(x, dtype=float).ravel()


def autocorrelations(x, nlags: int) -> np.ndarray:
    """Sample autocorrelations rho_1..rho_nlags around the sample mean."""
    v = _values(x)
    d = v - v.mean()
    denom = d @ d
    if denom == 0:
        return np.zeros(nlags)
    return np.array([d[k:] @ d[:-k] / denom for k in range(1, nlags + 1)])


def ljung_box_statistic(residuals, m: int) -> float:
    v = _values(residuals)
    n = v.size
    if m < 1:
        raise ValueError("lag must be at least 1")
    if n <= m + 1:
        raise SeriesTooShort(f"Ljung-Box at lag {m} needs more than {m + 1} observations, got {n}")
    rho = autocorrelations(v, m)
    k = np.arange(1, m + 1)
    return float(n * (n + 2) * np.sum(rho**2 / (n - k)))


def ljung_box(residuals, m: int) -> float:
    """p-value of the Ljung-Box Q test of no autocorrelation up to lag ``m``."""
    q = ljung_box_statistic(residuals, m)
    return float(stats.chi2.sf(q, m))


def jarque_bera(residuals) -> tuple[float, float]:
    """Jarque-Bera normality statistic and its chi-square(2) p-value.

    A series with zero dispersion carries no evidence against normality and
    returns ``(0.0, 1.0)``.
    """
    v = _values(residuals)
    n = v.size
    if n < 8:
        raise SeriesTooShort(f"Jarque-Bera needs at least 8 observations, got {n}")
    d = v - v.mean()
    m2 = np.mean(d**2)
    if m2 == 0:
        return 0.0, 1.0
    skew = np.mean(d**3) / m2**1.5
    kurt = np.mean(d**4) / m2**2
    jb = n / 6.0 * (skew**2 + (kurt - 3.0) ** 2 / 4.0)
    return float(jb), float(stats.chi2.sf(jb, 2))


def arch_lm(residuals, lags: int = 1) -> tuple[float, float]:
    """Engle's LM test: n * R^2 from regressing e_t^2 on a constant and its lags.

    Squared residuals with no usable variation (an exact fit) return ``(0.0, 1.0)``.
    """
    v = _values(residuals)
    n = v.size
    if lags < 1:
        raise ValueError("lags must be at least 1")
    if n <= lags + 2:
        raise SeriesTooShort(f"ARCH-LM with {lags} lags needs more than {lags + 2} observations")
    e2 = v**2
    if np.ptp(e2) == 0:
        return 0.0, 1.0
    y = e2[lags:]
    cols = [np.ones(y.size)] + [e2[lags - j : n - j] for j in range(1, lags + 1)]
    try:
        fit = fit_arrays(y, np.column_stack(cols), has_intercept=True)
    except RankDeficient:
        return 0.0, 1.0
    stat = y.size * fit.r_squared
    return float(stat), float(stats.chi2.sf(stat, lags))


@dataclass(frozen=True)
class DiagnosticsReport:
    ljung_box: dict[int, float]
    ljung_box_q: dict[int, float]
    jarque_bera: tuple[float, float]
    arch_lm: tuple[float, float]
    notes: list[str] = field(default_factory=list)

    @property
    def serially_uncorrelated(self) -> bool:
        return "serial-correlation" not in self.notes


def diagnose(residuals, lb_lags=LB_LAGS, arch_lags: int = 1, level: float = 0.05) -> DiagnosticsReport:
    """Run the residual battery and flag rejections at ``level``."""
    v = _values(residuals)
    lb = {m: ljung_box(v, m) for m in lb_lags}
    lbq = {m: ljung_box_statistic(v, m) for m in lb_lags}
    jb = jarque_bera(v)
    arch = arch_lm(v, arch_lags)
    notes = []
    if any(p < level for p in lb.values()):
        notes.append("serial-correlation")
    if jb[1] < level:
        notes.append("non-normal")
    if arch[1] < level:
        notes.append("arch-effects")
    return DiagnosticsReport(lb, lbq, jb, arch, notes)
