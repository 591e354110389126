"""Goodwin growth-cycle model with a constant accumulation rate ``k``.

State is the pair (wage share omega, employment rate lambda):

    omega' = omega * (gamma + rho*lambda - alpha)
    lambda' = lambda * (k*(1 - omega)/nu - (alpha + beta + delta))

The system is Lotka-Volterra in disguise, so every interior orbit is closed
and lies on a level set of

    V = (k/nu)*omega - (k/nu - (alpha+beta+delta))*ln(omega) + rho*lambda - (alpha-gamma)*ln(lambda)

which the integrator uses as its accuracy gauge.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, fields

import numpy as np

from goodwin_cycles.errors import ComplexPeriod, DriftToleranceUnmet, NonPositiveState, ZeroRho


@dataclass(frozen=True)
class GoodwinParams:
    alpha: float
    beta: float
    delta: float
    nu: float
    gamma: float
    rho: float
    k: float

    def __post_init__(self) -> None:
        for f in fields(self):
            v = float(getattr(self, f.name))
            if not math.isfinite(v):
                raise ValueError(f"parameter {f.name} must be finite, got {v}")
            object.__setattr__(self, f.name, v)
        if self.nu <= 0:
            raise ValueError(f"capital-to-output ratio must be positive, got {self.nu}")
        if not 0 < self.k <= 1:
            warnings.warn(
                f"accumulation rate k={self.k:g} lies outside (0, 1]", RuntimeWarning, stacklevel=3
            )

    @property
    def growth(self) -> float:
        """alpha + beta + delta, the rate employment must outgrow to rise."""
        return self.alpha + self.beta + self.delta

    @property
    def phillips_gap(self) -> float:
        return self.alpha - self.gamma

    @property
    def profit_gap(self) -> float:
        return self.k / self.nu - self.growth

    @property
    def has_center(self) -> bool:
        return self.rho > 0 and self.phillips_gap > 0 and self.profit_gap > 0

    def as_dict(self) -> dict[str, float]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


@dataclass(frozen=True)
class PhasePoint:
    omega: float
    lam: float

    def as_array(self) -> np.ndarray:
        return np.array([self.omega, self.lam])


@dataclass(frozen=True)
class Equilibrium:
    point: PhasePoint
    interior_lambda: bool
    interior_omega: bool

    @property
    def omega(self) -> float:
        return self.point.omega

    @property
    def lam(self) -> float:
        return self.point.lam

    @property
    def interior(self) -> bool:
        return self.interior_lambda and self.interior_omega


def rhs(p: GoodwinParams, x: PhasePoint) -> tuple[float, float]:
    return _rhs(p, x.omega, x.lam)


def _rhs(p: GoodwinParams, w: float, l: float) -> tuple[float, float]:
    return (
        w * (p.gamma + p.rho * l - p.alpha),
        l * (p.k * (1.0 - w) / p.nu - p.growth),
    )


def equilibrium(p: GoodwinParams) -> Equilibrium:
    if p.rho == 0:
        raise ZeroRho("the Phillips slope rho is zero; equilibrium employment is undefined")
    lam = (p.alpha - p.gamma) / p.rho
    omega = 1.0 - p.growth * p.nu / p.k
    return Equilibrium(PhasePoint(omega, lam), 0 < lam <= 1, 0 < omega < 1)


def period(p: GoodwinParams) -> float:
    """Linearized cycle period 2*pi / sqrt((alpha-gamma)(k/nu - alpha-beta-delta))."""
    a, b = p.phillips_gap, p.profit_gap
    if a <= 0 or b <= 0:
        raise ComplexPeriod(
            f"no interior center: alpha-gamma={a:.6g}, k/nu-(alpha+beta+delta)={b:.6g}"
        )
    return 2.0 * math.pi / math.sqrt(a * b)


def conserved_quantity(p: GoodwinParams, x: PhasePoint) -> float:
    return _energy(p, x.omega, x.lam)


def _energy(p: GoodwinParams, w, l):
    kn = p.k / p.nu
    return kn * w - p.profit_gap * np.log(w) + p.rho * l - p.phillips_gap * np.log(l)


@dataclass(frozen=True)
class Trajectory:
    """Annual samples of an orbit, in ascending calendar order.

    ``anchor_year`` is the year at which the orbit passes through ``initial``.
    """

    start_year: int
    omega: np.ndarray
    lam: np.ndarray
    params: GoodwinParams
    initial: PhasePoint
    anchor_year: int
    max_drift: float = 0.0
    steps_per_year: int = 0

    @property
    def years(self) -> np.ndarray:
        return np.arange(self.start_year, self.start_year + self.omega.size)

    @property
    def points(self) -> list[PhasePoint]:
        return [PhasePoint(float(w), float(l)) for w, l in zip(self.omega, self.lam)]

    @property
    def exceeds_full_employment(self) -> bool:
        return bool(np.any(self.lam > 1.0))

    def __len__(self) -> int:
        return self.omega.size

    def to_csv_rows(self) -> list[tuple[int, float, float]]:
        return [(int(y), float(w), float(l)) for y, w, l in zip(self.years, self.omega, self.lam)]


def _rk4_path(p: GoodwinParams, w: float, l: float, n_years: int, steps: int, direction: float):
    """Integrate |n_years| years, returning states at each whole year."""
    h = direction / steps
    h2, h6 = h / 2.0, h / 6.0
    a, g, r = p.alpha, p.gamma, p.rho
    kn, gr = p.k / p.nu, p.growth
    out_w = np.empty(n_years + 1)
    out_l = np.empty(n_years + 1)
    out_w[0], out_l[0] = w, l
    for year in range(1, n_years + 1):
        for _ in range(steps):
            k1w = w * (g + r * l - a)
            k1l = l * (kn * (1.0 - w) - gr)
            w2, l2 = w + h2 * k1w, l + h2 * k1l
            k2w = w2 * (g + r * l2 - a)
            k2l = l2 * (kn * (1.0 - w2) - gr)
            w3, l3 = w + h2 * k2w, l + h2 * k2l
            k3w = w3 * (g + r * l3 - a)
            k3l = l3 * (kn * (1.0 - w3) - gr)
            w4, l4 = w + h * k3w, l + h * k3l
            k4w = w4 * (g + r * l4 - a)
            k4l = l4 * (kn * (1.0 - w4) - gr)
            w += h6 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w)
            l += h6 * (k1l + 2.0 * k2l + 2.0 * k3l + k4l)
        if not (w > 0 and l > 0 and math.isfinite(w) and math.isfinite(l)):
            return out_w[:year], out_l[:year], False
        out_w[year], out_l[year] = w, l
    return out_w, out_l, True


def simulate(
    p: GoodwinParams,
    x0: PhasePoint,
    start_year: int,
    n_years: int,
    *,
    drift_tol: float = 1e-6,
    steps_per_year: int = 32,
    max_refinements: int = 8,
) -> Trajectory:
    """Integrate the model from ``x0`` at ``start_year`` for ``n_years`` years.

    Classical RK4 with ``steps_per_year`` substeps, halving the step until the
    relative drift of the conserved quantity stays below ``drift_tol`` over
    the whole horizon. A negative ``n_years`` integrates backwards in time;
    the returned samples are always in ascending calendar order.
    """
    if not (x0.omega > 0 and x0.lam > 0):
        raise NonPositiveState(f"initial state {x0} is outside the positive quadrant")
    if n_years == 0:
        raise ValueError("n_years must be non-zero")
    direction = 1.0 if n_years > 0 else -1.0
    span = abs(int(n_years))
    v0 = float(_energy(p, x0.omega, x0.lam))
    ref = abs(v0) if v0 != 0 else 1.0

    steps = int(steps_per_year)
    drift = np.inf
    for _ in range(max_refinements + 1):
        w, l, ok = _rk4_path(p, x0.omega, x0.lam, span, steps, direction)
        if ok:
            drift = float(np.max(np.abs(_energy(p, w, l) - v0)) / ref)
            if drift < drift_tol:
                break
        steps *= 2
    else:
        if not ok:
            raise NonPositiveState("integration left the positive quadrant")
        raise DriftToleranceUnmet(
            f"conserved-quantity drift {drift:.3g} exceeds {drift_tol:g} "
            f"even with {steps // 2} steps per year"
        )

    if direction < 0:
        w, l = w[::-1], l[::-1]
        first = start_year - span
    else:
        first = start_year
    return Trajectory(
        start_year=first,
        omega=w,
        lam=l,
        params=p,
        initial=x0,
        anchor_year=start_year,
        max_drift=drift,
        steps_per_year=steps,
    )


def simulate_span(p: GoodwinParams, x0: PhasePoint, anchor_year: int, first_year: int,
                  last_year: int, **kwargs) -> Trajectory:
    """Orbit through ``x0`` at ``anchor_year``, sampled over ``first_year..last_year``."""
    if not first_year <= anchor_year <= last_year:
        raise ValueError("anchor year must lie inside the requested span")
    back = fwd = None
    if anchor_year > first_year:
        back = simulate(p, x0, anchor_year, first_year - anchor_year, **kwargs)
    if last_year > anchor_year:
        fwd = simulate(p, x0, anchor_year, last_year - anchor_year, **kwargs)
    parts_w, parts_l = [], []
    drift, steps = 0.0, 0
    if back is not None:
        parts_w.append(back.omega[:-1])
        parts_l.append(back.lam[:-1])
        drift, steps = max(drift, back.max_drift), max(steps, back.steps_per_year)
    parts_w.append(np.array([x0.omega]))
    parts_l.append(np.array([x0.lam]))
    if fwd is not None:
        parts_w.append(fwd.omega[1:])
        parts_l.append(fwd.lam[1:])
        drift, steps = max(drift, fwd.max_drift), max(steps, fwd.steps_per_year)
    return Trajectory(
        start_year=first_year,
        omega=np.concatenate(parts_w),
        lam=np.concatenate(parts_l),
        params=p,
        initial=x0,
        anchor_year=anchor_year,
        max_drift=drift,
        steps_per_year=steps,
    )


def _rk4_step(p: GoodwinParams, w: float, l: float, h: float) -> tuple[float, float]:
    k1 = _rhs(p, w, l)
    k2 = _rhs(p, w + h / 2 * k1[0], l + h / 2 * k1[1])
    k3 = _rhs(p, w + h / 2 * k2[0], l + h / 2 * k2[1])
    k4 = _rhs(p, w + h * k3[0], l + h * k3[1])
    return (
        w + h / 6 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]),
        l + h / 6 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]),
    )


def measured_period(p: GoodwinParams, x0: PhasePoint, *, step: float = 0.01,
                    max_periods: float = 20.0) -> tuple[float, float]:
    """Numerical return time of the orbit through ``x0``.

    The section is the ray from the equilibrium through ``x0``; the return is
    located by bisection on the final RK4 step. Returns ``(period, distance)``
    where ``distance`` is the Euclidean gap to ``x0`` at the return.
    """
    eq = equilibrium(p)
    ew, el = eq.omega, eq.lam
    dw, dl = x0.omega - ew, x0.lam - el
    if dw == 0 and dl == 0:
        raise ValueError("the equilibrium has no cycle")

    def side(w, l):
        return dw * (l - el) - dl * (w - ew)

    def ahead(w, l):
        return dw * (w - ew) + dl * (l - el) > 0

    try:
        horizon = max_periods * period(p)
    except ComplexPeriod:
        horizon = 1e4
    w, l, t = x0.omega, x0.lam, 0.0
    s_prev = 0.0
    while t < horizon:
        w_new, l_new = _rk4_step(p, w, l, step)
        s_new = side(w_new, l_new)
        if t > 0 and s_prev != 0 and (s_prev > 0) != (s_new > 0) and ahead(w_new, l_new):
            lo, hi = 0.0, step
            for _ in range(60):
                mid = 0.5 * (lo + hi)
                wm, lm = _rk4_step(p, w, l, mid)
                if (side(wm, lm) > 0) == (s_prev > 0):
                    lo = mid
                else:
                    hi = mid
            wm, lm = _rk4_step(p, w, l, 0.5 * (lo + hi))
            return t + 0.5 * (lo + hi), math.hypot(wm - x0.omega, lm - x0.lam)
        w, l, t, s_prev = w_new, l_new, t + step, s_new
    raise DriftToleranceUnmet("no return to the starting section within the search horizon")
