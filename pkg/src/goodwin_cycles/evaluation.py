"""Fit measures: equilibrium-vs-mean errors and Theil-decomposed orbit errors."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from goodwin_cycles.errors import LengthMismatch, SeriesTooShort, ZeroMse
from goodwin_cycles.model import GoodwinParams, PhasePoint, Trajectory, simulate_span
from goodwin_cycles.timeseries import AnnualSeries, align


@dataclass(frozen=True)
class EquilibriumErrors:
    abs_err_lambda: float
    rel_err_lambda: float
    abs_err_omega: float
    rel_err_omega: float


def equilibrium_errors(emp: tuple[float, float], est: tuple[float, float]) -> EquilibriumErrors:
    """Compare empirical means ``(omega, lambda)`` with model equilibria ``(omega_G, lambda_G)``."""
    mean_omega, mean_lambda = emp
    omega_g, lambda_g = est
    if mean_omega <= 0 or mean_lambda <= 0:
        raise ValueError("empirical means must be positive")
    d_lam = abs(mean_lambda - lambda_g)
    d_om = abs(mean_omega - omega_g)
    return EquilibriumErrors(d_lam, d_lam / mean_lambda, d_om, d_om / mean_omega)


_ROUNDOFF = 1e-12


@dataclass(frozen=True)
class TheilDecomposition:
    mse: float
    rmse_over_mean: float
    u_bias: float
    u_variance: float
    u_covariance: float


def _values(x) -> np.ndarray:
    if isinstance(x, AnnualSeries):
        return x.values
    return np.asarray(x, dtype=float).ravel()


def theil_decompose(observed, simulated) -> TheilDecomposition:
    """Split the MSE of ``simulated`` against ``observed`` into bias, variance
    and covariance proportions, using population (divisor n) moments so the
    three terms add up to the MSE exactly."""
    if isinstance(observed, AnnualSeries) and isinstance(simulated, AnnualSeries):
        if (observed.start_year, len(observed)) != (simulated.start_year, len(simulated)):
            raise LengthMismatch("observed and simulated series cover different years")
    o, s = _values(observed), _values(simulated)
    if o.size != s.size:
        raise LengthMismatch(f"{o.size} observed vs {s.size} simulated values")
    if o.size < 2:
        raise SeriesTooShort("Theil decomposition needs at least 2 points")
    m_o, m_s = o.mean(), s.mean()
    if m_o <= 0:
        raise ValueError("observed mean must be positive")
    mse = float(np.mean((s - o) ** 2))
    if mse == 0:
        raise ZeroMse("simulated and observed series coincide; proportions are undefined")
    sd_o, sd_s = o.std(), s.std()
    cov = np.mean((s - m_s) * (o - m_o))
    bias = (m_s - m_o) ** 2
    var = (sd_s - sd_o) ** 2
    # 2(1-r)*sd_s*sd_o, written without dividing by the standard deviations
    covar = max(2.0 * (sd_s * sd_o - cov), 0.0)
    # terms at roundoff level are zero; the three terms sum to the MSE
    # algebraically, so normalising by their sum only removes roundoff
    terms = np.array([bias, var, covar], dtype=float)
    terms[terms < _ROUNDOFF * mse] = 0.0
    u = terms / terms.sum()
    return TheilDecomposition(
        mse=mse,
        rmse_over_mean=math.sqrt(mse) / m_o,
        u_bias=float(u[0]),
        u_variance=float(u[1]),
        u_covariance=float(u[2]),
    )


@dataclass(frozen=True)
class OrbitEvaluation:
    """Winning orbit(s) of the initial-condition search.

    In ``joint`` mode one trajectory serves both variables and the
    ``omega_*`` fields repeat the lambda ones.
    """

    best_initial: tuple[int, PhasePoint]
    simulated: Trajectory
    lambda_eval: TheilDecomposition | None
    omega_eval: TheilDecomposition | None
    joint_mse: float
    mode: str
    omega_best_initial: tuple[int, PhasePoint]
    omega_simulated: Trajectory
    candidate_mse: np.ndarray


def _safe_theil(o, s) -> TheilDecomposition | None:
    try:
        return theil_decompose(o, s)
    except ZeroMse:
        return None


def best_orbit(p: GoodwinParams, observed, *, mode: str = "joint", **sim_kwargs) -> OrbitEvaluation:
    """Try every observed (omega, lambda) pair as the orbit's anchor.

    ``observed`` is a ``DerivedSeries`` or an ``(omega, lambda)`` pair of
    annual series.

    Each candidate orbit passes through its pair at that pair's own year and
    is integrated backwards to the first and forwards to the last sample
    year. ``mode='joint'`` minimises MSE_lambda + MSE_omega; ``'per-variable'``
    picks the best orbit for each variable separately. Ties go to the
    earliest year.
    """
    if mode not in ("joint", "per-variable"):
        raise ValueError(f"unknown mode {mode!r}")
    if hasattr(observed, "omega"):
        omega, lam = observed.omega, observed.lam
    else:
        omega, lam = observed
    omega, lam = align(omega, lam)
    n = len(omega)
    if n < 3:
        raise SeriesTooShort("best_orbit needs at least 3 observed years")
    first, last = omega.start_year, omega.end_year
    ow, ol = omega.values, lam.values

    trajs: list[Trajectory] = []
    mse = np.empty((n, 2))
    for i, year in enumerate(omega.years):
        x0 = PhasePoint(float(ow[i]), float(ol[i]))
        tr = simulate_span(p, x0, int(year), first, last, **sim_kwargs)
        trajs.append(tr)
        mse[i, 0] = np.mean((tr.lam - ol) ** 2)
        mse[i, 1] = np.mean((tr.omega - ow) ** 2)
    joint = mse.sum(axis=1)

    if mode == "joint":
        i_l = i_w = int(np.argmin(joint))
    else:
        i_l = int(np.argmin(mse[:, 0]))
        i_w = int(np.argmin(mse[:, 1]))
    t_l, t_w = trajs[i_l], trajs[i_w]
    return OrbitEvaluation(
        best_initial=(t_l.anchor_year, t_l.initial),
        simulated=t_l,
        lambda_eval=_safe_theil(ol, t_l.lam),
        omega_eval=_safe_theil(ow, t_w.omega),
        joint_mse=float(joint[i_l]),
        mode=mode,
        omega_best_initial=(t_w.anchor_year, t_w.initial),
        omega_simulated=t_w,
        candidate_mse=joint,
    )
