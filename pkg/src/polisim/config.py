"""Parameter definitions, validation, loading and fingerprinting.

Two records drive a simulation: :class:`SimParams` (run shape: counts, days,
regions, seed, output) and :class:`ModelParams` (behavioural constants of the
economy). Every field has a default and an admissible interval; values outside
the interval are rejected at load time.

Config files are flat ``key = value`` text, one entry per line, ``#`` comments.
The environment variable ``POLISIM_CONFIG`` may point to a default config file
used when none is given explicitly.

Note: the default for ``price_change_quantity`` (10) falls outside the
interval documented alongside it (100-2,000); the interval accepted here is
[1, 2000] so that both the default and the sensitivity grid validate. See
README for the discrepancy note.
"""

from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

RNG_ALGORITHM = "numpy-pcg64/seedseq(base_seed,run_index)"

VALID_REGION_COUNTS = (1, 4, 7)


class ConfigError(ValueError):
    """Raised for unknown keys or out-of-interval values."""


@dataclass(frozen=True)
class SimParams:
    """Run-level parameters (one record per batch invocation)."""

    num_days: int = 5040
    num_agents: int = 1000
    num_families: int = 400
    num_dwellings: int = 440
    num_firms: int = 110
    num_regions: int = 1
    seed: int = 0
    num_runs: int = 1
    output_dir: str = "out"


@dataclass(frozen=True)
class ModelParams:
    """Exogenous behavioural parameters of the economy.

    ``consumption_satisfaction`` is accepted and fingerprinted but not wired
    into any behaviour: the model defines no semantics for it. The
    ``*_min``/``*_max`` fields are the uniform bounds used by world
    generation; they are calibration choices, not model constants.
    """

    alpha: float = 0.25
    beta: float = 0.87
    price_change_quantity: float = 10.0
    labor_market_frequency: float = 0.28
    markup: float = 0.03
    market_size: int = 100
    consumption_satisfaction: float = 0.01
    housing_entry_share: float = 0.021
    tax_consumption: float = 0.21
    wage_base: float = 0.65
    # world-generation bounds (hidden keys; uniform draws are over these)
    age_min: int = 1
    age_max: int = 90
    qualification_min: int = 1
    qualification_max: int = 21
    initial_cash_min: float = 0.0
    initial_cash_max: float = 5.0
    dwelling_size_min: int = 20
    dwelling_size_max: int = 120
    sqm_value_min: float = 1.0
    sqm_value_max: float = 3.0
    firm_capital_min: float = 50.0
    firm_capital_max: float = 150.0


_SIM_FIELDS = {f.name for f in dataclasses.fields(SimParams)}
_MODEL_FIELDS = {f.name for f in dataclasses.fields(ModelParams)}
_INT_FIELDS = {
    "num_days", "num_agents", "num_families", "num_dwellings", "num_firms",
    "num_regions", "seed", "num_runs", "market_size",
    "age_min", "age_max", "qualification_min", "qualification_max",
    "dwelling_size_min", "dwelling_size_max",
}

# (low, high, low_open, high_open); None bound = unbounded on that side.
_INTERVALS: dict[str, tuple[float | None, float | None, bool, bool]] = {
    "num_days": (63, 12800, False, False),
    "num_agents": (10, 10000, False, False),
    "num_families": (4, 2000, False, False),
    "num_dwellings": (5, 2200, False, False),
    "num_firms": (2, 1000, False, False),
    "seed": (0, 2**64 - 1, False, False),
    "num_runs": (1, 1_000_000, False, False),
    "alpha": (0, 1, True, False),
    "beta": (0, 1, True, False),
    "price_change_quantity": (1, 2000, False, False),
    "labor_market_frequency": (0, 1, False, True),
    "markup": (0, 1, False, True),
    "market_size": (1, 1000, False, False),
    "consumption_satisfaction": (0, 1, False, True),
    "housing_entry_share": (0, 1, True, True),
    "tax_consumption": (0, 1, True, True),
    "wage_base": (0, 10, True, False),
    "age_min": (1, 200, False, False),
    "age_max": (1, 200, False, False),
    "qualification_min": (1, 50, False, False),
    "qualification_max": (1, 50, False, False),
    "initial_cash_min": (0, 1e9, False, False),
    "initial_cash_max": (0, 1e9, False, False),
    "dwelling_size_min": (1, 100000, False, False),
    "dwelling_size_max": (1, 100000, False, False),
    "sqm_value_min": (0, 1e9, True, False),
    "sqm_value_max": (0, 1e9, True, False),
    "firm_capital_min": (0, 1e9, False, False),
    "firm_capital_max": (0, 1e9, False, False),
}


def _interval_text(key: str) -> str:
    lo, hi, lo_open, hi_open = _INTERVALS[key]
    return f"{'(' if lo_open else '['}{lo}, {hi}{')' if hi_open else ']'}"


def _check_interval(key: str, value: float) -> None:
    if key not in _INTERVALS:
        return
    lo, hi, lo_open, hi_open = _INTERVALS[key]
    bad = (
        (lo is not None and (value < lo or (lo_open and value == lo)))
        or (hi is not None and (value > hi or (hi_open and value == hi)))
    )
    if bad:
        raise ConfigError(
            f"parameter '{key}' = {value} outside admissible interval {_interval_text(key)}"
        )


def _coerce(key: str, raw: str | int | float) -> object:
    if key == "output_dir":
        return str(raw)
    if key in _INT_FIELDS:
        try:
            value = int(str(raw).replace(",", ""))
        except ValueError:
            raise ConfigError(f"parameter '{key}': cannot parse integer from {raw!r}") from None
    else:
        try:
            value = float(raw)
        except ValueError:
            raise ConfigError(f"parameter '{key}': cannot parse number from {raw!r}") from None
    if key == "num_regions" and value not in VALID_REGION_COUNTS:
        raise ConfigError(f"parameter 'num_regions' = {value}; must be one of {VALID_REGION_COUNTS}")
    _check_interval(key, value)
    return value


def coerce_value(key: str, raw: str | int | float):
    """Parse and interval-check one parameter value; raises ConfigError."""
    if key not in _SIM_FIELDS and key not in _MODEL_FIELDS:
        raise ConfigError(f"unknown parameter '{key}'")
    return _coerce(key, raw)


def _parse_lines(lines: Iterable[str], source: str) -> dict[str, object]:
    out: dict[str, object] = {}
    for lineno, line in enumerate(lines, start=1):
        text = line.split("#", 1)[0].strip()
        if not text:
            continue
        if "=" not in text:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {line.strip()!r}")
        key, raw = (part.strip() for part in text.split("=", 1))
        if key not in _SIM_FIELDS and key not in _MODEL_FIELDS:
            raise ConfigError(f"{source}:{lineno}: unknown parameter '{key}'")
        out[key] = _coerce(key, raw)
    return out


def _cross_checks(sim: SimParams, model: ModelParams) -> None:
    if sim.num_dwellings <= sim.num_families:
        raise ConfigError(
            f"num_dwellings ({sim.num_dwellings}) must exceed num_families ({sim.num_families})"
        )
    for lo_key, hi_key in (
        ("age_min", "age_max"),
        ("qualification_min", "qualification_max"),
        ("initial_cash_min", "initial_cash_max"),
        ("dwelling_size_min", "dwelling_size_max"),
        ("sqm_value_min", "sqm_value_max"),
        ("firm_capital_min", "firm_capital_max"),
    ):
        if getattr(model, lo_key) > getattr(model, hi_key):
            raise ConfigError(f"{lo_key} must not exceed {hi_key}")


def load_config(
    file: str | Path | None = None,
    overrides: Iterable[str] = (),
) -> tuple[SimParams, ModelParams]:
    """Build validated parameter records.

    Precedence: override strings (``key=value``) > file entries > defaults.
    When ``file`` is None, the path in ``POLISIM_CONFIG`` is used if set.
    """
    values: dict[str, object] = {}
    if file is None:
        env_path = os.environ.get("POLISIM_CONFIG")
        if env_path:
            file = env_path
    if file is not None:
        path = Path(file)
        if not path.is_file():
            raise ConfigError(f"config file not found: {path}")
        values.update(_parse_lines(path.read_text().splitlines(), str(path)))
    for item in overrides:
        if "=" not in item:
            raise ConfigError(f"override must be 'key=value', got {item!r}")
        key, raw = (part.strip() for part in item.split("=", 1))
        if key not in _SIM_FIELDS and key not in _MODEL_FIELDS:
            raise ConfigError(f"unknown parameter '{key}'")
        values[key] = _coerce(key, raw)

    sim = SimParams(**{k: v for k, v in values.items() if k in _SIM_FIELDS})
    model = ModelParams(**{k: v for k, v in values.items() if k in _MODEL_FIELDS})
    _cross_checks(sim, model)
    return sim, model


def canonical_text(sim: SimParams, model: ModelParams) -> str:
    """Loadable ``key = value`` serialization, keys sorted, floats via repr."""
    entries: dict[str, object] = {}
    entries.update(dataclasses.asdict(sim))
    entries.update(dataclasses.asdict(model))
    lines = [f"{key} = {entries[key]}" for key in sorted(entries)]
    return "\n".join(lines) + "\n"


def fingerprint(sim: SimParams, model: ModelParams) -> str:
    """Canonical text of every dynamics-affecting parameter plus seed and RNG id.

    Bookkeeping fields (output_dir, num_runs) are excluded so that the same
    experiment written to two directories fingerprints identically.
    """
    entries: dict[str, object] = dataclasses.asdict(model)
    for key in ("num_days", "num_agents", "num_families", "num_dwellings",
                "num_firms", "num_regions", "seed"):
        entries[key] = getattr(sim, key)
    lines = [f"rng_algorithm = {RNG_ALGORITHM}"]
    lines.extend(f"{key} = {entries[key]}" for key in sorted(entries))
    return "\n".join(lines) + "\n"
