import math
from pathlib import Path

import pytest

from ramancavity.config import RunConfig, load_config

ROOT = Path(__file__).resolve().parents[1]
CONFIGS = ROOT / "configs"

LAMBDA_PROBE = 589.6e-9
GAMMA10 = 2 * math.pi * 1e8


@pytest.fixture(scope="session")
def fig2_config():
    return load_config(CONFIGS / "paper_fig2.cfg")


@pytest.fixture(scope="session")
def fig3_config():
    return load_config(CONFIGS / "paper_fig3.cfg")


@pytest.fixture(scope="session")
def default_config():
    return RunConfig()


@pytest.fixture(scope="session")
def atom(default_config):
    return default_config.atom()
