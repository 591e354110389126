from __future__ import annotations

from dataclasses import replace

import numpy as np

from goodwin_cycles.econometrics.diagnostics import diagnose
from goodwin_cycles.econometrics.ols import RegressionFit, fit_arrays
from goodwin_cycles.errors import SeriesTooShort
from goodwin_cycles.timeseries import AnnualSeries, log_transform


def log_trend(s: AnnualSeries) -> tuple[float, float, RegressionFit]:
    """Exponential trend ``ln s_t = level0 + growth*t`` with ``t = 0, 1, 2, ...``.

    Returns the intercept (log of the initial level), the growth rate and the
    fit, which carries the residual diagnostics reported alongside growth
    regressions (Ljung-Box Q at lag 5 is the conventional headline number).
    """
    if len(s) < 3:
        raise SeriesTooShort("a log-trend regression needs at least 3 observations")
    y = log_transform(s).values
    t = np.arange(len(s), dtype=float)
    fit = fit_arrays(
        y,
        np.column_stack([np.ones_like(t), t]),
        names=["const", "trend"],
        has_intercept=True,
        start_year=s.start_year,
    )
    if fit.nobs > 8 and fit.ssr > 1e-24 * float(y @ y):
        fit = replace(fit, diagnostics=diagnose(fit.residuals, lb_lags=(1, 2, 3, 4, 5, 10)))
    return float(fit.coefficients[0]), float(fit.coefficients[1]), fit
