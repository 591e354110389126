"""Pipeline configuration.

Config files are INI-style::

    [pipeline]
    data_dir = data
    output_dir = out
    max_lag_p = 4
    adf_spec = c            ; c | ct
    adf_max_lags =          ; blank: floor(4 * (n/100)^(1/4))
    k_deflator = gdp        ; gdp | investment
    mse_mode = joint        ; joint | per-variable
    seed = 0
    default_window = 1960-2010

    [countries]
    australia =             ; blank: default window (germany: 1960-1990)
    germany = 1960-1990

    [columns]
    ; optional source header -> canonical column renames
    GDP_CUR = gdp_current

Relative paths are resolved against the config file's directory. The
environment variables ``GOODWIN_DATA_DIR`` and ``GOODWIN_OUTPUT_DIR``
override the two directories.
"""

from __future__ import annotations

import configparser
import hashlib
import json
import os
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

from goodwin_cycles.econometrics.unitroot import SPECS
from goodwin_cycles.ingest import DEFAULT_WINDOW, K_DEFLATORS, window_for

MSE_MODES = ("joint", "per-variable")


@dataclass(frozen=True)
class PipelineConfig:
    data_dir: Path = Path("data")
    output_dir: Path = Path("out")
    countries: dict[str, tuple[int, int]] = field(default_factory=dict)
    max_lag_p: int = 4
    adf_spec: str = "c"
    adf_max_lags: int | None = None
    k_deflator: str = "gdp"
    mse_mode: str = "joint"
    seed: int = 0
    default_window: tuple[int, int] = DEFAULT_WINDOW
    column_map: dict[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.adf_spec not in SPECS:
            raise ValueError(f"adf_spec must be one of {SPECS}")
        if self.k_deflator not in K_DEFLATORS:
            raise ValueError(f"k_deflator must be one of {K_DEFLATORS}")
        if self.mse_mode not in MSE_MODES:
            raise ValueError(f"mse_mode must be one of {MSE_MODES}")
        if self.max_lag_p < 0:
            raise ValueError("max_lag_p must be non-negative")

    def window(self, country: str) -> tuple[int, int]:
        return window_for(country, self.countries, self.default_window)

    def csv_path(self, country: str) -> Path:
        return Path(self.data_dir) / f"{country}.csv"

    def fingerprint(self) -> str:
        """Short stable hash of every setting that affects results, stamped into output files."""
        d = asdict(self)
        d["data_dir"] = str(self.data_dir)
        del d["output_dir"]
        blob = json.dumps(d, sort_keys=True, default=list).encode()
        return hashlib.sha256(blob).hexdigest()[:16]


def _parse_window(text: str) -> tuple[int, int]:
    first, _, last = text.strip().partition("-")
    if not last:
        raise ValueError(f"window {text!r} must look like 1960-2010")
    return int(first), int(last)


def apply_env(cfg: PipelineConfig) -> PipelineConfig:
    changes = {}
    if os.environ.get("GOODWIN_DATA_DIR"):
        changes["data_dir"] = Path(os.environ["GOODWIN_DATA_DIR"])
    if os.environ.get("GOODWIN_OUTPUT_DIR"):
        changes["output_dir"] = Path(os.environ["GOODWIN_OUTPUT_DIR"])
    return replace(cfg, **changes) if changes else cfg


def load_config(path: str | Path) -> PipelineConfig:
    path = Path(path)
    parser = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    parser.optionxform = str  # keep header case in [columns]
    with path.open(encoding="utf-8") as fh:
        parser.read_file(fh)
    sec = parser["pipeline"] if parser.has_section("pipeline") else {}
    base = path.parent

    def get(key, default=None):
        v = sec.get(key, "") if sec else ""
        v = v.strip()
        return v if v else default

    default_window = _parse_window(get("default_window")) if get("default_window") else DEFAULT_WINDOW
    countries: dict[str, tuple[int, int]] = {}
    if parser.has_section("countries"):
        for name, value in parser["countries"].items():
            key = name.strip().lower()
            countries[key] = (
                _parse_window(value) if value.strip() else window_for(key, None, default_window)
            )
    column_map = dict(parser["columns"].items()) if parser.has_section("columns") else {}
    adf_max = get("adf_max_lags")
    cfg = PipelineConfig(
        data_dir=base / get("data_dir", "data"),
        output_dir=base / get("output_dir", "out"),
        countries=countries,
        max_lag_p=int(get("max_lag_p", 4)),
        adf_spec=get("adf_spec", "c"),
        adf_max_lags=int(adf_max) if adf_max is not None else None,
        k_deflator=get("k_deflator", "gdp"),
        mse_mode=get("mse_mode", "joint"),
        seed=int(get("seed", 0)),
        default_window=default_window,
        column_map=column_map,
    )
    return apply_env(cfg)
