from __future__ import annotations

import dataclasses

import numpy as np
import pytest

from polisim.config import ModelParams, SimParams, load_config
from polisim.rng import derive_run_stream
from polisim.space import build_partition
from polisim.worldgen import generate_world


@pytest.fixture
def defaults() -> tuple[SimParams, ModelParams]:
    return load_config()


@pytest.fixture
def small_world():
    """Small but fully-populated world for market unit tests."""
    sim, model = load_config(overrides=[
        "num_agents=60", "num_families=20", "num_dwellings=28",
        "num_firms=8", "num_days=63",
    ])
    stream = derive_run_stream(123, 0)
    world = generate_world(sim, model, build_partition(1), stream)
    return world, sim, model, stream


def make_world(seed=0, design=1, **overrides):
    pairs = [f"{k}={v}" for k, v in overrides.items()]
    sim, model = load_config(overrides=pairs)
    sim = dataclasses.replace(sim, seed=seed, num_regions=design)
    stream = derive_run_stream(sim.seed, 0)
    world = generate_world(sim, model, build_partition(design), stream)
    return world, sim, model, stream


def brute_force_gini(values) -> float:
    """Independent pairwise-formula oracle: sum|xi-xj| / (2 n^2 mean)."""
    x = np.asarray(values, dtype=np.float64)
    n = x.size
    mean = x.mean()
    if mean == 0.0:
        return 0.0
    diff_sum = np.abs(x[:, None] - x[None, :]).sum()
    return float(diff_sum / (2.0 * n * n * mean))
