from __future__ import annotations

import numpy as np
import pytest
import statsmodels.api as sm

from goodwin_cycles.econometrics import cusum, cusum_from_fit, ols
from goodwin_cycles.econometrics.stability import CUSUM_A99, cusumsq_halfwidth, recursive_residuals
from goodwin_cycles.errors import RankDeficient, TooFewObservations
from goodwin_cycles.timeseries import AnnualSeries


def design(rng, n):
    return np.column_stack([np.ones(n), rng.normal(size=n)])


class TestRecursiveResiduals:
    def test_matches_statsmodels(self, rng):
        X = design(rng, 40)
        y = X @ [1.0, 0.5] + rng.normal(size=40)
        ref = sm.RecursiveLS(y, X).fit().resid_recursive[2:]
        np.testing.assert_allclose(recursive_residuals(y, X), ref, rtol=1e-9, atol=1e-12)

    def test_brute_force(self, rng):
        X = design(rng, 15)
        y = rng.normal(size=15)
        w = recursive_residuals(y, X)
        for j, r in enumerate(range(2, 15)):
            b = np.linalg.lstsq(X[:r], y[:r], rcond=None)[0]
            f = 1 + X[r] @ np.linalg.inv(X[:r].T @ X[:r]) @ X[r]
            assert w[j] == pytest.approx((y[r] - X[r] @ b) / np.sqrt(f), rel=1e-10)

    def test_rank_deficient_start(self):
        X = np.column_stack([np.ones(10), np.r_[np.zeros(3), np.arange(7.0)]])
        with pytest.raises(RankDeficient):
            recursive_residuals(np.arange(10.0), X)


class TestCusum:
    def test_stable(self, rng):
        x = rng.normal(size=50)
        y = 1 + 0.5 * x + 0.1 * rng.normal(size=50)
        res = cusum(y, [x], intercept=True)
        assert res.cusum_ok
        assert res.cusum_path.size == 48 and res.cusumsq_path.size == 48

    def test_slope_break(self, rng):
        x = rng.normal(size=50)
        slope = np.where(np.arange(50) < 25, 0.5, 5.0)
        y = 1 + slope * x + 0.1 * rng.normal(size=50)
        res = cusum(y, [x], intercept=True)
        assert not (res.cusum_ok and res.cusumsq_ok)
        assert not res.stable

    def test_exact_fit(self, rng):
        x = rng.normal(size=30)
        res = cusum(2 + 3 * x, [x], intercept=True)
        assert np.all(res.cusum_path == 0) and np.all(res.recursive_residuals == 0)
        assert res.cusum_ok and res.cusumsq_ok

    def test_bounds_shape(self, rng):
        X = design(rng, 60)
        res = cusum(rng.normal(size=60), X)
        m = 58
        lo, hi = res.cusum_bounds
        assert hi[0] == pytest.approx(CUSUM_A99 * (np.sqrt(m) + 2 / np.sqrt(m)))
        assert hi[-1] == pytest.approx(3 * CUSUM_A99 * np.sqrt(m))
        np.testing.assert_allclose(lo, -hi)
        slo, shi = res.cusumsq_bounds
        np.testing.assert_allclose(shi - slo, 2 * cusumsq_halfwidth(m))
        assert res.cusumsq_path[-1] == pytest.approx(1.0)

    def test_halfwidth_decreasing(self):
        widths = [cusumsq_halfwidth(m) for m in (20, 40, 62, 122, 202)]
        assert all(a > b for a, b in zip(widths, widths[1:]))

    @pytest.mark.parametrize("m", [40, 62, 122])
    def test_halfwidth_size(self, rng, m):
        # under the null the path leaves the band about 1% of the time
        w = rng.normal(size=(20000, m)) ** 2
        s = np.cumsum(w, axis=1) / w.sum(axis=1, keepdims=True)
        dev = np.abs(s - np.arange(1, m + 1) / m).max(axis=1)
        assert 0.005 < np.mean(dev > cusumsq_halfwidth(m)) < 0.02

    def test_from_fit(self, rng):
        x = AnnualSeries(0, rng.normal(size=40))
        y = AnnualSeries(0, 1 + x.values + 0.1 * rng.normal(size=40))
        fit = ols(y, [x])
        a = cusum_from_fit(fit)
        b = cusum(y.values, [x.values], intercept=True)
        np.testing.assert_allclose(a.cusum_path, b.cusum_path)
        assert a.cusum_path.size == fit.nobs - fit.nparams

    def test_too_few(self):
        with pytest.raises(TooFewObservations):
            cusum(np.arange(4.0), np.ones((4, 2)))
