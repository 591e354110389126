"""Annual time-series container and the handful of transforms built on it.

Everything downstream (ingestion, regressions, evaluation) passes
``AnnualSeries`` objects around, so the invariants are enforced once, here:
consecutive years, finite values, and immutability of the stored array.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from goodwin_cycles.errors import NoOverlap, NonFiniteValue, NonPositiveValue, SeriesTooShort


@dataclass(frozen=True, eq=False)
class AnnualSeries:
    """A gap-free sequence of annual observations starting at ``start_year``."""

    start_year: int
    values: np.ndarray
    label: str = ""

    def __post_init__(self) -> None:
        arr = np.array(self.values, dtype=float).ravel()
        if arr.size == 0:
            raise SeriesTooShort(f"series {self.label!r} is empty")
        if not np.all(np.isfinite(arr)):
            raise NonFiniteValue(f"series {self.label!r} contains NaN or infinite values")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)
        object.__setattr__(self, "start_year", int(self.start_year))

    def __len__(self) -> int:
        return self.values.size

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AnnualSeries):
            return NotImplemented
        return (
            self.start_year == other.start_year
            and self.label == other.label
            and np.array_equal(self.values, other.values)
        )

    def __hash__(self) -> int:
        return hash((self.start_year, self.label, self.values.tobytes()))

    @property
    def end_year(self) -> int:
        return self.start_year + len(self) - 1

    @property
    def years(self) -> np.ndarray:
        return np.arange(self.start_year, self.end_year + 1)

    def window(self, first: int, last: int) -> AnnualSeries:
        """Restrict to the closed year interval ``[first, last]``."""
        lo = max(first, self.start_year)
        hi = min(last, self.end_year)
        if lo > hi:
            raise NoOverlap(
                f"{self.label!r} covers {self.start_year}-{self.end_year}, "
                f"requested {first}-{last}"
            )
        i0 = lo - self.start_year
        return AnnualSeries(lo, self.values[i0 : i0 + hi - lo + 1], self.label)

    def relabel(self, label: str) -> AnnualSeries:
        return AnnualSeries(self.start_year, self.values, label)

    def __getitem__(self, year: int) -> float:
        i = year - self.start_year
        if not 0 <= i < len(self):
            raise KeyError(year)
        return float(self.values[i])


@dataclass(frozen=True)
class SummaryStats:
    mean: float
    std: float
    min: float
    max: float
    n: int = field(default=0)


def _require_positive(s: AnnualSeries) -> None:
    if np.any(s.values <= 0):
        bad = s.years[s.values <= 0][0]
        raise NonPositiveValue(f"{s.label!r} has a non-positive value in {bad}")


def _require_length(s: AnnualSeries, n: int) -> None:
    if len(s) < n:
        raise SeriesTooShort(f"{s.label!r} has {len(s)} observations, need at least {n}")


def log_transform(s: AnnualSeries) -> AnnualSeries:
    _require_positive(s)
    return AnnualSeries(s.start_year, np.log(s.values), s.label)


def log_growth(s: AnnualSeries) -> AnnualSeries:
    """Log difference ``ln s_t - ln s_{t-1}``, dated at the later year."""
    _require_length(s, 2)
    _require_positive(s)
    return AnnualSeries(s.start_year + 1, np.diff(np.log(s.values)), s.label)


def diff(s: AnnualSeries) -> AnnualSeries:
    _require_length(s, 2)
    return AnnualSeries(s.start_year + 1, np.diff(s.values), s.label)


def summarize(s: AnnualSeries) -> SummaryStats:
    _require_length(s, 2)
    v = s.values
    return SummaryStats(
        mean=float(v.mean()),
        std=float(v.std(ddof=1)),
        min=float(v.min()),
        max=float(v.max()),
        n=len(s),
    )


def align(a: AnnualSeries, b: AnnualSeries) -> tuple[AnnualSeries, AnnualSeries]:
    """Restrict two series to their common year window."""
    lo = max(a.start_year, b.start_year)
    hi = min(a.end_year, b.end_year)
    if lo > hi:
        raise NoOverlap(
            f"{a.label!r} ({a.start_year}-{a.end_year}) and "
            f"{b.label!r} ({b.start_year}-{b.end_year}) do not overlap"
        )
    return a.window(lo, hi), b.window(lo, hi)


def align_all(*series: AnnualSeries) -> list[AnnualSeries]:
    lo = max(s.start_year for s in series)
    hi = min(s.end_year for s in series)
    if lo > hi:
        raise NoOverlap("series have no common year window")
    return [s.window(lo, hi) for s in series]
