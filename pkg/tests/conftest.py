from __future__ import annotations

import numpy as np
import pytest

from goodwin_cycles.config import PipelineConfig
from goodwin_cycles.pipeline import run_country
from goodwin_cycles.synthetic import make_country


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240601)


@pytest.fixture(scope="session")
def fixture_country():
    return make_country(seed=0)


@pytest.fixture(scope="session")
def fixture_report(fixture_country):
    return run_country(fixture_country.raw, PipelineConfig())


@pytest.fixture(scope="session")
def break_report():
    sc = make_country("breakland", seed=0, break_year=1985, break_shift=0.01)
    return run_country(sc.raw, PipelineConfig())
