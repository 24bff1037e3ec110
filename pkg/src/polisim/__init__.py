"""Deterministic spatial agent-based economy simulator.

Citizens grouped into families, firms and regional governments interact in
goods, labor and housing markets on a bounded square; regional consumption
taxes feed a quality-of-life index that drives dwelling prices and household
mobility. Built for reproducible Monte Carlo batches and one-at-a-time
sensitivity sweeps with CSV output.
"""

from .config import ModelParams, SimParams, fingerprint, load_config
from .kernels import BACKEND
from .rng import RunStream, derive_run_stream, sample_fraction
from .runner import run_batch, run_sweep, simulate
from .scheduler import run_simulation
from .space import build_partition, distance, locate
from .worldgen import World, generate_world

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ModelParams",
    "RunStream",
    "SimParams",
    "World",
    "build_partition",
    "derive_run_stream",
    "distance",
    "fingerprint",
    "generate_world",
    "load_config",
    "locate",
    "run_batch",
    "run_simulation",
    "run_sweep",
    "sample_fraction",
    "simulate",
    "__version__",
]
