from goodwin_cycles.econometrics.ardl import (
    NARAYAN_N50,
    PSS_ASYMPTOTIC,
    BoundsTestResult,
    bounds_decision,
    bounds_test,
    fit_uecm,
    levels_model,
    restricted_ecm,
)
from goodwin_cycles.econometrics.diagnostics import (
    DiagnosticsReport,
    arch_lm,
    diagnose,
    jarque_bera,
    ljung_box,
    ljung_box_statistic,
)
from goodwin_cycles.econometrics.ols import RegressionFit, fit_arrays, ols, restricted_f, wald_f
from goodwin_cycles.econometrics.stability import StabilityTestResult, cusum, cusum_from_fit
from goodwin_cycles.econometrics.trend import log_trend
from goodwin_cycles.econometrics.unitroot import AdfResult, adf_test, mackinnon_pvalue

__all__ = [
    "NARAYAN_N50",
    "PSS_ASYMPTOTIC",
    "AdfResult",
    "BoundsTestResult",
    "DiagnosticsReport",
    "RegressionFit",
    "StabilityTestResult",
    "adf_test",
    "arch_lm",
    "bounds_decision",
    "bounds_test",
    "cusum",
    "cusum_from_fit",
    "diagnose",
    "fit_arrays",
    "fit_uecm",
    "jarque_bera",
    "levels_model",
    "ljung_box",
    "ljung_box_statistic",
    "log_trend",
    "mackinnon_pvalue",
    "ols",
    "restricted_ecm",
    "restricted_f",
    "wald_f",
]
