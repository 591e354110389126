"""Synthetic country generator with known parameters.

The generator works backwards from the quantities the estimators target:
productivity and labour force are exact exponentials, the employment rate
follows a Goodwin orbit plus small noise, real wage growth satisfies the
linear Phillips relation plus noise, and the capital-output ratio,
depreciation rate and accumulation rate are constants. The raw AMECO-style
columns are then filled in so that ``derive`` recovers all of it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from goodwin_cycles.ingest import CountrySeries
from goodwin_cycles.model import GoodwinParams, PhasePoint, equilibrium, simulate
from goodwin_cycles.timeseries import AnnualSeries

DEFAULT_TRUTH = GoodwinParams(
    alpha=0.02, beta=0.01, delta=0.05, nu=3.0, gamma=-0.45, rho=0.5, k=0.7
)


@dataclass(frozen=True)
class SyntheticCountry:
    raw: CountrySeries
    truth: GoodwinParams
    omega: np.ndarray
    lam: np.ndarray
    z: np.ndarray


def make_country(
    country: str = "synthetica",
    truth: GoodwinParams = DEFAULT_TRUTH,
    *,
    start_year: int = 1960,
    n_years: int = 51,
    amplitude: float = 0.035,
    lambda_noise: float = 0.002,
    z_noise: float = 1e-3,
    inflation_noise: float = 0.01,
    break_year: int | None = None,
    break_shift: float = 0.0,
    seed: int = 0,
) -> SyntheticCountry:
    """Build raw series for a country with known Goodwin parameters.

    ``amplitude`` displaces the employment rate from equilibrium at the
    start of the orbit. ``break_year``/``break_shift`` add a permanent shift
    to the Phillips intercept from that year on, for stability-test checks.
    """
    rng = np.random.default_rng(seed)
    eq = equilibrium(truth)
    orbit = simulate(truth, PhasePoint(eq.omega, eq.lam + amplitude), start_year, n_years - 1)
    t = np.arange(n_years, dtype=float)
    years = start_year + np.arange(n_years)

    lam = orbit.lam + lambda_noise * rng.standard_normal(n_years)
    gamma_t = np.full(n_years, truth.gamma)
    if break_year is not None:
        gamma_t[years >= break_year] += break_shift
    z = gamma_t + truth.rho * lam + z_noise * rng.standard_normal(n_years)
    z[0] = 0.0  # no growth observation for the first year

    a0, N0 = 20.0, 10_000.0
    productivity = a0 * np.exp(truth.alpha * t)
    labour_force = N0 * np.exp(truth.beta * t)
    wage_rate = orbit.omega[0] * a0 * np.exp(np.cumsum(z))
    omega = wage_rate / productivity

    L = lam * labour_force
    Y = productivity * L
    W = omega * Y
    self_share = np.linspace(0.15, 0.10, n_years)
    self_employed = self_share * L
    employees = L - self_employed
    # inflation: 3% plus white noise, drawn last so the other draws stay put
    inflation = 0.03 + inflation_noise * rng.standard_normal(n_years)
    inflation[0] = 0.0
    price = np.exp(np.cumsum(inflation))
    inv_price = np.exp(0.025 * t)
    K = truth.nu * Y

    cols = {
        "gdp_current": 1.1 * Y * price,
        "net_taxes": 0.1 * Y * price,
        "gdp_deflator": price,
        "compensation": W * price * employees / L,
        "employees": employees,
        "self_employed": self_employed,
        "unemployed": labour_force - L,
        "net_capital_stock": K,
        "consumption_fixed_capital": truth.delta * inv_price * K,
        "investment_deflator": inv_price,
        "gross_capital_formation": truth.k * (Y - W) * price,
    }
    raw = CountrySeries(country, *(AnnualSeries(start_year, v, name) for name, v in cols.items()))
    return SyntheticCountry(raw, truth, omega, lam, z[1:])
