"""Raw per-country CSV ingestion and construction of the model variables.

CSV layout: UTF-8, comma separated, a ``year`` column followed by the raw
columns in ``RAW_COLUMNS`` (any order, extra columns ignored). A column may
start late or stop early; the country is cut to the window where every
column is present, and a blank cell strictly inside that window is an error.
"""

from __future__ import annotations

import csv
import math
from collections.abc import Mapping
from dataclasses import dataclass, fields
from pathlib import Path

import numpy as np

from goodwin_cycles.errors import (
    DivisionDomain,
    EmptyWindow,
    GapInYears,
    MalformedRow,
    MissingColumn,
    NonPositiveProfit,
    NonPositiveValue,
)
from goodwin_cycles.timeseries import AnnualSeries, log_growth

RAW_COLUMNS = (
    "gdp_current",
    "net_taxes",
    "gdp_deflator",
    "compensation",
    "employees",
    "self_employed",
    "unemployed",
    "net_capital_stock",
    "consumption_fixed_capital",
    "investment_deflator",
    "gross_capital_formation",
)

_POSITIVE = (
    "gdp_deflator",
    "investment_deflator",
    "employees",
    "net_capital_stock",
)
_NON_NEGATIVE = ("self_employed", "unemployed")

DEFAULT_WINDOW = (1960, 2010)
# German data stop before unification
COUNTRY_WINDOWS = {"germany": (1960, 1990), "deu": (1960, 1990), "de": (1960, 1990)}

K_DEFLATORS = ("gdp", "investment")


@dataclass(frozen=True)
class CountrySeries:
    country: str
    gdp_current: AnnualSeries
    net_taxes: AnnualSeries
    gdp_deflator: AnnualSeries
    compensation: AnnualSeries
    employees: AnnualSeries
    self_employed: AnnualSeries
    unemployed: AnnualSeries
    net_capital_stock: AnnualSeries
    consumption_fixed_capital: AnnualSeries
    investment_deflator: AnnualSeries
    gross_capital_formation: AnnualSeries

    def __post_init__(self) -> None:
        spans = {(s.start_year, len(s)) for s in self.raw_series()}
        if len(spans) != 1:
            raise ValueError(f"{self.country}: raw series are not aligned to a common window")
        for name in _POSITIVE:
            s = getattr(self, name)
            if np.any(s.values <= 0):
                raise NonPositiveValue(f"{self.country}: {name} must be strictly positive")
        for name in _NON_NEGATIVE:
            if np.any(getattr(self, name).values < 0):
                raise NonPositiveValue(f"{self.country}: {name} must be non-negative")

    def raw_series(self) -> list[AnnualSeries]:
        return [getattr(self, c) for c in RAW_COLUMNS]

    @property
    def start_year(self) -> int:
        return self.gdp_current.start_year

    @property
    def end_year(self) -> int:
        return self.gdp_current.end_year

    @property
    def years(self) -> np.ndarray:
        return self.gdp_current.years

    def __len__(self) -> int:
        return len(self.gdp_current)

    def window(self, first: int, last: int) -> CountrySeries:
        lo, hi = max(first, self.start_year), min(last, self.end_year)
        if lo > hi:
            raise EmptyWindow(
                f"{self.country}: data cover {self.start_year}-{self.end_year}, "
                f"window is {first}-{last}"
            )
        return CountrySeries(self.country, *(s.window(lo, hi) for s in self.raw_series()))

    def nominal_wage_rate(self) -> AnnualSeries:
        e, se = self.employees.values, self.self_employed.values
        nominal_bill = (1.0 + se / e) * self.compensation.values
        return AnnualSeries(self.start_year, nominal_bill / (e + se), "nominal_wage_rate")


@dataclass(frozen=True)
class DerivedSeries:
    country: str
    Y: AnnualSeries
    W: AnnualSeries
    L: AnnualSeries
    N: AnnualSeries
    omega: AnnualSeries
    lam: AnnualSeries
    wage_rate: AnnualSeries
    productivity: AnnualSeries
    nu: AnnualSeries
    delta: AnnualSeries
    k_rate: AnnualSeries
    r: AnnualSeries

    @property
    def profits(self) -> AnnualSeries:
        return AnnualSeries(self.Y.start_year, self.Y.values - self.W.values, "profits")

    @property
    def real_wage_growth(self) -> AnnualSeries:
        return log_growth(self.wage_rate).relabel("z")

    def __len__(self) -> int:
        return len(self.Y)


def window_for(country: str, windows: Mapping[str, tuple[int, int]] | None = None,
               default: tuple[int, int] = DEFAULT_WINDOW) -> tuple[int, int]:
    key = country.strip().lower()
    if windows and key in windows:
        return windows[key]
    return COUNTRY_WINDOWS.get(key, default)


def _parse_float(text: str, path: Path, line: int, column: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise MalformedRow(f"{path}:{line}: column {column!r} has non-numeric value {text!r}") from None
    if not math.isfinite(v):
        raise MalformedRow(f"{path}:{line}: column {column!r} is not finite")
    return v


def load_country_csv(
    path: str | Path,
    country: str,
    *,
    window: tuple[int, int] | None = None,
    column_map: Mapping[str, str] | None = None,
) -> CountrySeries:
    """Read one country's raw series.

    ``column_map`` renames source headers to the canonical names. ``window``
    defaults to the country's configured sample (1960-1990 for Germany,
    1960-2010 otherwise).
    """
    path = Path(path)
    rename = {k.strip(): v.strip() for k, v in (column_map or {}).items()}
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise MalformedRow(f"{path}: file is empty") from None
        header = [rename.get(h.strip(), h.strip()) for h in header]
        for col in ("year", *RAW_COLUMNS):
            if col not in header:
                raise MissingColumn(f"{path}: missing required column {col!r}")
        pos = {c: header.index(c) for c in ("year", *RAW_COLUMNS)}

        years: list[int] = []
        cells: dict[str, list[float | None]] = {c: [] for c in RAW_COLUMNS}
        for line, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != len(header):
                raise MalformedRow(f"{path}:{line}: expected {len(header)} fields, got {len(row)}")
            try:
                year = int(float(row[pos["year"]]))
            except ValueError:
                raise MalformedRow(f"{path}:{line}: bad year {row[pos['year']]!r}") from None
            if years and year != years[-1] + 1:
                if year <= years[-1]:
                    raise MalformedRow(f"{path}:{line}: years must be strictly ascending")
                raise GapInYears(f"{path}: no rows for {years[-1] + 1}-{year - 1}")
            years.append(year)
            for c in RAW_COLUMNS:
                text = row[pos[c]].strip()
                cells[c].append(None if text == "" else _parse_float(text, path, line, c))

    if not years:
        raise EmptyWindow(f"{path}: no data rows")

    # maximal window where every column is present
    lo, hi = 0, len(years) - 1
    for c in RAW_COLUMNS:
        present = [i for i, v in enumerate(cells[c]) if v is not None]
        if not present:
            raise EmptyWindow(f"{path}: column {c!r} has no values")
        lo, hi = max(lo, present[0]), min(hi, present[-1])
    if lo > hi:
        raise EmptyWindow(f"{path}: columns have no common year window")
    for c in RAW_COLUMNS:
        missing = [years[i] for i in range(lo, hi + 1) if cells[c][i] is None]
        if missing:
            raise GapInYears(f"{path}: column {c!r} is blank in {missing[0]}")

    first = years[lo]
    raw = CountrySeries(
        country,
        *(AnnualSeries(first, np.array(cells[c][lo : hi + 1], dtype=float), c) for c in RAW_COLUMNS),
    )
    w0, w1 = window if window is not None else window_for(country)
    return raw.window(w0, w1)


def write_country_csv(raw: CountrySeries, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(("year", *RAW_COLUMNS))
        cols = [s.values for s in raw.raw_series()]
        for i, year in enumerate(raw.years):
            w.writerow((int(year), *(repr(float(c[i])) for c in cols)))
    return path


def derive(raw: CountrySeries, k_deflator: str = "gdp") -> DerivedSeries:
    """Construct output, wages, employment and the model ratios from raw data.

    ``k_deflator`` selects the deflator applied to gross capital formation
    before dividing by real profits: ``"gdp"`` (default) or ``"investment"``.
    """
    if k_deflator not in K_DEFLATORS:
        raise ValueError(f"k_deflator must be one of {K_DEFLATORS}")
    v = {c: getattr(raw, c).values for c in RAW_COLUMNS}
    if np.any(v["employees"] == 0) or np.any(v["gdp_deflator"] == 0):
        raise DivisionDomain(f"{raw.country}: zero employees or GDP deflator")

    Y = (v["gdp_current"] - v["net_taxes"]) / v["gdp_deflator"]
    W = (1.0 + v["self_employed"] / v["employees"]) * v["compensation"] / v["gdp_deflator"]
    L = v["employees"] + v["self_employed"]
    N = L + v["unemployed"]
    profits = Y - W
    if np.any(profits <= 0):
        year = raw.years[np.argmax(profits <= 0)]
        raise NonPositiveProfit(f"{raw.country}: wage bill reaches output in {year}")
    if np.any(Y <= 0):
        raise NonPositiveValue(f"{raw.country}: output at factor cost is not positive")
    K = v["net_capital_stock"]
    deflator = v["gdp_deflator"] if k_deflator == "gdp" else v["investment_deflator"]

    def s(values, label):
        return AnnualSeries(raw.start_year, values, label)

    return DerivedSeries(
        country=raw.country,
        Y=s(Y, "Y"),
        W=s(W, "W"),
        L=s(L, "L"),
        N=s(N, "N"),
        omega=s(W / Y, "omega"),
        lam=s(L / N, "lambda"),
        wage_rate=s(W / L, "wage_rate"),
        productivity=s(Y / L, "productivity"),
        nu=s(K / Y, "nu"),
        delta=s(v["consumption_fixed_capital"] / (v["investment_deflator"] * K), "delta"),
        k_rate=s(v["gross_capital_formation"] / deflator / profits, "k"),
        r=s(profits / K, "r"),
    )


def empirical_means(d: DerivedSeries) -> tuple[float, float]:
    """Sample means of (omega, lambda)."""
    return float(d.omega.values.mean()), float(d.lam.values.mean())


def derived_table(d: DerivedSeries) -> list[dict[str, float]]:
    names = [f.name for f in fields(d) if f.name != "country"]
    rows = []
    for i, year in enumerate(d.Y.years):
        row = {"year": int(year)}
        row.update({n: float(getattr(d, n).values[i]) for n in names})
        rows.append(row)
    return rows
