from __future__ import annotations

import numpy as np
import pytest
from statsmodels.tsa.adfvalues import mackinnonp
from statsmodels.tsa.stattools import adfuller

from goodwin_cycles.econometrics import adf_test, mackinnon_pvalue
from goodwin_cycles.econometrics.unitroot import default_max_lags
from goodwin_cycles.errors import SeriesTooShort
from goodwin_cycles.timeseries import AnnualSeries


class TestResponseSurface:
    @pytest.mark.parametrize("spec", ["c", "ct"])
    def test_matches_statsmodels(self, spec):
        for tau in np.linspace(-20, 3, 401):
            assert mackinnon_pvalue(tau, spec) == pytest.approx(mackinnonp(tau, spec), abs=1e-12)

    def test_monotone(self):
        taus = np.linspace(-10, 2, 500)
        p = [mackinnon_pvalue(t, "c") for t in taus]
        assert np.all(np.diff(p) >= -1e-12)

    def test_known_critical_values(self):
        # 5% asymptotic critical values: -2.86 (constant), -3.41 (trend)
        assert mackinnon_pvalue(-2.86, "c") == pytest.approx(0.05, abs=5e-3)
        assert mackinnon_pvalue(-3.41, "ct") == pytest.approx(0.05, abs=5e-3)


class TestAdf:
    @pytest.mark.parametrize("spec", ["c", "ct"])
    def test_matches_statsmodels(self, rng, spec):
        for _ in range(5):
            x = np.cumsum(rng.normal(size=80))
            res = adf_test(x, spec, max_lags=4)
            ref = adfuller(x, maxlag=4, regression=spec, autolag="BIC")
            assert res.statistic == pytest.approx(ref[0], rel=1e-10)
            assert res.p_value == pytest.approx(ref[1], abs=1e-10)
            assert res.lags_used == ref[2] and res.nobs == ref[3]

    def test_random_walk_not_rejected(self, rng):
        assert adf_test(np.cumsum(rng.normal(size=200))).p_value > 0.10

    def test_stationary_ar_rejected(self, rng):
        e = rng.normal(size=200)
        x = np.empty(200)
        x[0] = e[0]
        for t in range(1, 200):
            x[t] = 0.3 * x[t - 1] + e[t]
        assert adf_test(x).p_value < 0.05

    def test_linear_trend_removed(self, rng):
        # an exact line makes the regression singular, so add a whisper of noise
        x = np.arange(60.0) + 1e-6 * rng.normal(size=60)
        res = adf_test(x, "ct")
        assert res.statistic < -5
        assert res.p_value < 0.01

    def test_affine_invariance(self, rng):
        x = np.cumsum(rng.normal(size=100))
        a = adf_test(x)
        b = adf_test(3.5 * x - 20.0)
        assert b.statistic == pytest.approx(a.statistic, rel=1e-9)
        assert b.p_value == pytest.approx(a.p_value, rel=1e-9)
        assert b.lags_used == a.lags_used

    def test_accepts_series(self, rng):
        s = AnnualSeries(1960, np.cumsum(rng.normal(size=51)))
        res = adf_test(s)
        assert 0 <= res.p_value <= 1 and res.spec == "c"

    def test_default_max_lags(self):
        assert default_max_lags(51) == 3
        assert default_max_lags(100) == 4

    def test_too_short(self):
        with pytest.raises(SeriesTooShort):
            adf_test(np.arange(14.0))

    def test_bad_spec(self, rng):
        with pytest.raises(ValueError):
            adf_test(rng.normal(size=30), "nc")
