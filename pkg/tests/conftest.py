import json

import pytest

from ceswork import CesParams, EconomicProblem, PreferencePair, Prices
from ceswork.pareto import GridSpec, SweepSpec


@pytest.fixture
def unit_problem() -> EconomicProblem:
    return EconomicProblem(params=CesParams(F=1.0, a=0.5, r=1.0), prices=Prices(1.0, 1.0, 1.0))


@pytest.fixture
def sample_pair() -> PreferencePair:
    return PreferencePair.from_weights((2.0, 2.0, 1.0), (1.0, 1.0, 3.0), mu1=0.8, mu2=0.5)


@pytest.fixture
def reducing_pair() -> PreferencePair:
    # revenue-quantum trade-off ratio 1.5 sits below the technology's top
    # marginal product of 2, so the combined family actually shrinks
    return PreferencePair.from_weights((2.0, 2.0, 1.0), (2.0, 2.0, 3.0), mu1=0.8, mu2=0.5)


@pytest.fixture
def small_grid() -> GridSpec:
    return GridSpec(0.1, 10.0, 0.1, 10.0, 20, 20, "log")


@pytest.fixture
def sweep() -> SweepSpec:
    return SweepSpec(samples=40, seed=42)


SAMPLE_CONFIG = {
    "ces": {"F": 1.0, "a": 0.5, "r": 1.0},
    "prices": {"pK": 1.0, "pL": 1.0, "pQ": 1.0},
    "quantum1": {"w1": 2.0, "w2": 2.0, "w3": 1.0, "mu": 0.8},
    "quantum2": {"w1": 1.0, "w2": 1.0, "w3": 3.0, "mu": 0.5},
    "grid": {
        "kMin": 0.1, "kMax": 10.0, "lMin": 0.1, "lMax": 10.0,
        "nK": 100, "nL": 100, "scale": "log",
    },
    "sweep": {"samples": 500, "seed": 42},
    "output": {"dir": "out", "format": "csv"},
}

# a technology/weights combination where both quanta bite, so the
# membership map shows all three tiers
DEMO_CONFIG = {
    **SAMPLE_CONFIG,
    "ces": {"F": 0.6, "a": 0.3, "r": 1.0},
    "quantum1": {"w1": 2.0, "w2": 2.0, "w3": 1.5, "mu": 0.8},
    "quantum2": {"w1": 2.0, "w2": 2.0, "w3": 3.0, "mu": 0.5},
}


@pytest.fixture
def sample_config_dict() -> dict:
    return json.loads(json.dumps(SAMPLE_CONFIG))


@pytest.fixture
def demo_config_dict() -> dict:
    return json.loads(json.dumps(DEMO_CONFIG))


@pytest.fixture
def config_file(tmp_path, sample_config_dict):
    path = tmp_path / "config.json"
    path.write_text(json.dumps(sample_config_dict))
    return path


@pytest.fixture
def demo_config_file(tmp_path, demo_config_dict):
    path = tmp_path / "demo.json"
    path.write_text(json.dumps(demo_config_dict))
    return path
