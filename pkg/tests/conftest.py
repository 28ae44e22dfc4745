"""
Test configuration for frontal-lab
"""
import json
import sys
from pathlib import Path

import numpy as np
import pytest

# Add repository root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.frontal import surface_from_expressions
from src.generators import (
    gen_extendable_K,
    gen_extendable_normal,
    gen_false_singularity,
    gen_rank0_front,
    gen_rank1_front,
)
from src.models import Domain

UNIT = Domain(-1.0, 1.0, -1.0, 1.0)
HALF = Domain(-0.5, 0.5, -0.5, 0.5)

EXTENDABLE_X = ["u", "2/5*v^5 + v^2", "u*v^2"]
EXTENDABLE_W1 = ["1", "0", "v^2"]
EXTENDABLE_W2 = ["0", "1", "u/(v^3 + 1)"]


@pytest.fixture
def plane():
    """x = (u, v, 0) with the coordinate basis"""
    return surface_from_expressions(["u", "v", "0"], ["1", "0", "0"], ["0", "1", "0"], UNIT)


@pytest.fixture
def cuspidal_edge():
    """Rank-1 front with lambda_hat = z: y = (w, z^2/2, z^3/3)"""
    return gen_rank1_front("z", "0", "0", UNIT)


@pytest.fixture
def extendable_normal():
    """x = (u, 2/5 v^5 + v^2, u v^2) with an explicit basis"""
    return surface_from_expressions(EXTENDABLE_X, EXTENDABLE_W1, EXTENDABLE_W2, HALF)


@pytest.fixture(scope="session")
def extendable_normal_generated():
    """The same surface from the extendable-normal representation formula"""
    return gen_extendable_normal("2/5*v^5 + v^2", "-3*u*v/(2*(1 + v^3)^3)", "1", "0", HALF)


@pytest.fixture
def rank0_cubic():
    """Rank-0 front from h = (u^3 + v^3)/6"""
    return gen_rank0_front("(u^3 + v^3)/6", UNIT)


@pytest.fixture
def saddle():
    """Graph of s t composed with m = (u^3, v): negative extended K"""
    return gen_false_singularity("graph", "u^3", "v", HALF, phi="s*t")


@pytest.fixture
def sphere():
    """Unit sphere chart composed with m = (u^3, v)"""
    return gen_false_singularity("sphere", "u^3", "v", HALF)


@pytest.fixture
def ellipsoid_like():
    """Graph of s^2 + 2 t^2 composed with m = (u^3, v): distinct principal curvatures"""
    return gen_false_singularity("graph", "u^3", "v", HALF, phi="s^2 + 2*t^2")


@pytest.fixture
def wave_K():
    """Extendable-K wave surface with c = -1, h1 = h2 = s^3/6"""
    return gen_extendable_K("wave", -1.0, UNIT, h1="s^3/6", h2="s^3/6")


@pytest.fixture
def rng():
    return np.random.default_rng(7)


@pytest.fixture
def write_config(tmp_path):
    """Write a run configuration into tmp_path and return its path"""
    def write(data: dict, name: str = "config.json") -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(data), encoding="utf-8")
        return path
    return write
