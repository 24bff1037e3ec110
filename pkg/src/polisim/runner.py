"""Command-line entry point and experiment orchestration.

Subcommands:

* ``run``        one simulation (optionally dumping the generated world and
                 the per-sale transaction log)
* ``batch``      N independent runs per regional design + summary table
* ``sweep``      one-at-a-time sensitivity sweep over a parameter grid,
                 every cell re-using the same fixed seed
* ``summarize``  rebuild summary.csv from an output directory

Outputs per run: ``series_<design>_<run>.csv`` (monthly indicators) and
``regions_<design>_<run>.csv`` (per-region monthly rows); ``summary.csv``
(long format: design, indicator, stat, value) and ``meta.txt`` (RNG id, full
parameter fingerprint, partition tables). CSV headers carry the fingerprint's
sha256 so outputs are self-identifying; floats are written with 9 significant
digits. Runs are independent - batch parallelism (``--workers``) produces
byte-identical files to serial execution.
"""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import multiprocessing
import sys
from pathlib import Path

import numpy as np

from . import stats
from .config import (
    RNG_ALGORITHM,
    ConfigError,
    ModelParams,
    SimParams,
    coerce_value,
    fingerprint,
    load_config,
)
from .rng import derive_run_stream
from .scheduler import RunResult, run_simulation
from .space import build_partition
from .worldgen import World, generate_world

SWEEP_VALUES: dict[str, list[float]] = {
    "alpha": [0.1, 0.14, 0.19, 0.23, 0.28, 0.32, 0.37, 0.41, 0.46, 0.5],
    "beta": [0.5, 0.55, 0.61, 0.66, 0.72, 0.77, 0.83, 0.88, 0.94, 0.99],
    "price_change_quantity": [10, 42, 74, 107, 139, 171, 203, 235, 268, 300],
    "markup": [0.01, 0.04, 0.06, 0.09, 0.12, 0.14, 0.17, 0.2, 0.22, 0.25],
    "labor_market_frequency": [0.1, 0.14, 0.19, 0.23, 0.28, 0.32, 0.37, 0.41, 0.46, 0.5],
    "market_size": [1, 3, 5, 7, 10, 15, 30, 50, 70, 110],
    "housing_entry_share": [0.01, 0.02, 0.03, 0.04, 0.05, 0.06, 0.07, 0.08, 0.09, 0.1],
    "tax_consumption": [0.01, 0.06, 0.11, 0.16, 0.21, 0.25, 0.3, 0.35, 0.4, 0.45],
}


def _fmt(value) -> str:
    if isinstance(value, float):
        return format(value, ".9g")
    return str(value)


def _digest(sim: SimParams, model: ModelParams) -> str:
    return hashlib.sha256(fingerprint(sim, model).encode()).hexdigest()


def _csv_header(kind: str, design: int, run_id: int, sim: SimParams, model: ModelParams) -> list[str]:
    return [
        f"# polisim {kind} v1",
        f"# design = {design}",
        f"# run = {run_id}",
        f"# fingerprint_sha256 = {_digest(sim, model)}",
        f"# rng = {RNG_ALGORITHM}",
    ]


def _write_records(path: Path, header: list[str], columns: list[str], records) -> None:
    lines = list(header)
    lines.append(",".join(columns))
    for rec in records:
        row = dataclasses.asdict(rec) if dataclasses.is_dataclass(rec) else rec
        lines.append(",".join(_fmt(row[c]) for c in columns))
    path.write_text("\n".join(lines) + "\n")


def read_csv(path: Path) -> list[dict]:
    """Read one of our CSVs, skipping '#' comment lines; numbers parsed."""
    rows: list[dict] = []
    columns: list[str] | None = None
    for line in path.read_text().splitlines():
        if not line or line.startswith("#"):
            continue
        if columns is None:
            columns = line.split(",")
            continue
        values = []
        for cell in line.split(","):
            try:
                values.append(int(cell))
            except ValueError:
                try:
                    values.append(float(cell))
                except ValueError:
                    values.append(cell)
        rows.append(dict(zip(columns, values)))
    if columns is None:
        raise ValueError(f"{path}: no header row")
    return rows


def partition_table(design: int) -> str:
    lines = [f"partition design={design} (region_id: x_min x_max y_min y_max)"]
    for geom in build_partition(design):
        lines.append(
            f"  {geom.region_id}: {geom.x_min:g} {geom.x_max:g} {geom.y_min:g} {geom.y_max:g}"
        )
    return "\n".join(lines)


def write_meta(out_dir: Path, sim: SimParams, model: ModelParams, designs: list[int]) -> None:
    parts = [
        f"rng = {RNG_ALGORITHM}",
        f"fingerprint_sha256 = {_digest(sim, model)}",
        "",
        "fingerprint:",
        fingerprint(sim, model).rstrip(),
        "",
    ]
    parts.extend(partition_table(d) for d in designs)
    (out_dir / "meta.txt").write_text("\n".join(parts) + "\n")


def simulate(sim: SimParams, model: ModelParams, run_id: int) -> tuple[World, RunResult]:
    """One full run: derive the stream, build the world, execute."""
    stream = derive_run_stream(sim.seed, run_id)
    partition = build_partition(sim.num_regions)
    world = generate_world(sim, model, partition, stream)
    result = run_simulation(world, sim, model, stream, run_id=run_id)
    return world, result


def _prepare_out_dir(out_dir: Path) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    probe = out_dir / ".write_probe"
    try:
        probe.write_text("")
    except OSError as exc:
        raise RuntimeError(f"output directory not writable: {out_dir}: {exc}") from exc
    probe.unlink()


def write_run_outputs(
    out_dir: Path, sim: SimParams, model: ModelParams, design: int, run_id: int, result: RunResult
) -> None:
    _write_records(
        out_dir / f"series_{design}_{run_id}.csv",
        _csv_header("series", design, run_id, sim, model),
        stats.SERIES_COLUMNS,
        result.series,
    )
    _write_records(
        out_dir / f"regions_{design}_{run_id}.csv",
        _csv_header("regions", design, run_id, sim, model),
        stats.REGION_COLUMNS,
        result.regions,
    )


def _batch_worker(args: tuple) -> tuple[int, int, dict, list[dict]]:
    sim, model, design, run_id, out_dir = args
    design_sim = dataclasses.replace(sim, num_regions=design)
    _, result = simulate(design_sim, model, run_id)
    write_run_outputs(Path(out_dir), design_sim, model, design, run_id, result)
    final = dataclasses.asdict(result.series[-1])
    last_month = result.series[-1].month_index
    final_regions = [
        dataclasses.asdict(r) for r in result.regions if r.month_index == last_month
    ]
    return design, run_id, final, final_regions


def run_batch(
    sim: SimParams,
    model: ModelParams,
    designs: list[int],
    num_runs: int,
    workers: int = 1,
    quiet: bool = True,
) -> Path:
    """Execute ``num_runs`` runs per design and write all output files."""
    out_dir = Path(sim.output_dir)
    _prepare_out_dir(out_dir)
    write_meta(out_dir, sim, model, designs)

    jobs = [
        (sim, model, design, run_id, str(out_dir))
        for design in designs
        for run_id in range(num_runs)
    ]
    if workers > 1:
        with multiprocessing.Pool(workers) as pool:
            outcomes = pool.map(_batch_worker, jobs)
    else:
        outcomes = []
        for job in jobs:
            outcomes.append(_batch_worker(job))
            if not quiet:
                print(f"  done design={job[2]} run={job[3]}", file=sys.stderr)

    outcomes.sort(key=lambda item: (item[0], item[1]))
    final_series: dict[int, list[dict]] = {d: [] for d in designs}
    final_regions: dict[int, list[list[dict]]] = {d: [] for d in designs}
    for design, _run_id, final, regions in outcomes:
        final_series[design].append(final)
        final_regions[design].append(regions)

    summary = stats.summarize(final_series, final_regions)
    _write_records(
        out_dir / "summary.csv",
        ["# polisim summary v1", f"# fingerprint_sha256 = {_digest(sim, model)}"],
        ["design", "indicator", "stat", "value"],
        summary,
    )
    return out_dir


def run_sweep(
    sim: SimParams,
    model: ModelParams,
    param: str,
    designs: list[int],
    values: list[float] | None = None,
    quiet: bool = True,
) -> Path:
    """One run per (value, design) cell, all with the run-0 stream of the
    configured seed, so cell differences are attributable to the parameter."""
    if param not in SWEEP_VALUES:
        raise ConfigError(
            f"unknown sweep parameter '{param}'; choose from {sorted(SWEEP_VALUES)}"
        )
    grid = SWEEP_VALUES[param] if values is None else values
    out_root = Path(sim.output_dir) / f"sweep_{param}"
    _prepare_out_dir(out_root)

    for value in grid:
        try:
            cell_value = coerce_value(param, value)
        except ConfigError as exc:
            raise ConfigError(f"sweep row {param}={value:g}: {exc}") from None
        for design in designs:
            cell_model = dataclasses.replace(model, **{param: cell_value})
            cell_dir = out_root / f"{param}_{value:g}_d{design}"
            cell_dir.mkdir(parents=True, exist_ok=True)
            cell_sim = dataclasses.replace(sim, num_regions=design, output_dir=str(cell_dir))
            _, result = simulate(cell_sim, cell_model, run_id=0)
            write_run_outputs(cell_dir, cell_sim, cell_model, design, 0, result)
            write_meta(cell_dir, cell_sim, cell_model, [design])
            if not quiet:
                print(f"  done {param}={value:g} design={design}", file=sys.stderr)
    return out_root


def summarize_dir(out_dir: Path) -> Path:
    """Recompute summary.csv from the series/regions files in a directory."""
    series_files = sorted(out_dir.glob("series_*_*.csv"))
    if not series_files:
        raise FileNotFoundError(f"no series files in {out_dir}")
    final_series: dict[int, list[dict]] = {}
    final_regions: dict[int, list[list[dict]]] = {}
    for path in series_files:
        design, run_id = (int(x) for x in path.stem.split("_")[1:3])
        rows = read_csv(path)
        final = rows[-1]
        region_rows = read_csv(out_dir / f"regions_{design}_{run_id}.csv")
        last_month = final["month_index"]
        final_series.setdefault(design, []).append(final)
        final_regions.setdefault(design, []).append(
            [r for r in region_rows if r["month_index"] == last_month]
        )
    summary = stats.summarize(final_series, final_regions)
    path = out_dir / "summary.csv"
    _write_records(path, ["# polisim summary v1"], ["design", "indicator", "stat", "value"], summary)
    return path


def _write_world_dump(out_dir: Path, world: World) -> None:
    dump = out_dir / "world"
    dump.mkdir(exist_ok=True)

    def table(name: str, columns: list[str], arrays: list[np.ndarray]) -> None:
        lines = [",".join(columns)]
        for i in range(arrays[0].shape[0]):
            lines.append(",".join(_fmt(a[i].item()) for a in arrays))
        (dump / f"{name}.csv").write_text("\n".join(lines) + "\n")

    ids_a = np.arange(world.num_agents)
    table("agents", ["id", "age", "qualification", "cash", "utility", "family_id", "employer_id"],
          [ids_a, world.age, world.qual, world.cash, world.utility, world.family_id, world.employer_id])
    ids_f = np.arange(world.num_families)
    table("families", ["id", "size", "dwelling_id"], [ids_f, world.fam_size, world.fam_dwelling])
    ids_d = np.arange(world.num_dwellings)
    table("dwellings", ["id", "x", "y", "size", "sqm_value", "price", "quality", "region_id", "occupant_family_id"],
          [ids_d, world.dw_x, world.dw_y, world.dw_size, world.dw_sqm, world.dw_price,
           world.dw_quality, world.dw_region, world.dw_occupant])
    ids_fi = np.arange(world.num_firms)
    table("firms", ["id", "x", "y", "region_id", "balance", "price", "inventory"],
          [ids_fi, world.firm_x, world.firm_y, world.firm_region, world.firm_balance,
           world.firm_price, world.firm_inventory])


def _common_overrides(args: argparse.Namespace) -> list[str]:
    overrides = list(args.set or [])
    if args.seed is not None:
        overrides.append(f"seed={args.seed}")
    if args.out is not None:
        overrides.append(f"output_dir={args.out}")
    return overrides


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", default=None, help="config file (flat key = value)")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--out", default=None, help="output directory")
    parser.add_argument("--set", action="append", metavar="KEY=VALUE",
                        help="parameter override (repeatable)")
    parser.add_argument("--quiet", action="store_true")


def _parse_designs(text: str) -> list[int]:
    designs = [int(x) for x in text.split(",") if x]
    for d in designs:
        if d not in (1, 4, 7):
            raise ConfigError(f"designs must be drawn from 1,4,7; got {d}")
    return designs


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="polisim", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="single simulation run")
    _add_common(p_run)
    p_run.add_argument("--design", type=int, default=None, help="number of regions (1, 4 or 7)")
    p_run.add_argument("--dump-world", action="store_true", help="write initial world CSVs")
    p_run.add_argument("--transactions", action="store_true",
                       help="write the per-sale transaction log (large)")

    p_batch = sub.add_parser("batch", help="independent runs per design")
    _add_common(p_batch)
    p_batch.add_argument("--runs", type=int, default=None, help="runs per design")
    p_batch.add_argument("--designs", default="1", help="comma list from {1,4,7}")
    p_batch.add_argument("--workers", type=int, default=1)

    p_sweep = sub.add_parser("sweep", help="one-at-a-time sensitivity sweep")
    _add_common(p_sweep)
    p_sweep.add_argument("--param", required=True)
    p_sweep.add_argument("--designs", default="1,4,7")
    p_sweep.add_argument("--values", default=None, help="comma list restricting the grid")

    p_sum = sub.add_parser("summarize", help="rebuild summary.csv for a directory")
    p_sum.add_argument("dir")

    args = parser.parse_args(argv)
    try:
        return _dispatch(args)
    except (ConfigError, FileNotFoundError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _dispatch(args: argparse.Namespace) -> int:
    if args.command == "summarize":
        path = summarize_dir(Path(args.dir))
        print(path)
        return 0

    sim, model = load_config(args.config, _common_overrides(args))

    if args.command == "run":
        if args.design is not None:
            sim = dataclasses.replace(sim, num_regions=args.design)
            if sim.num_regions not in (1, 4, 7):
                raise ConfigError("design must be 1, 4 or 7")
        out_dir = Path(sim.output_dir)
        _prepare_out_dir(out_dir)
        write_meta(out_dir, sim, model, [sim.num_regions])

        stream = derive_run_stream(sim.seed, 0)
        partition = build_partition(sim.num_regions)
        world = generate_world(sim, model, partition, stream)

        transactions: list[dict] = []
        audit = None
        if args.transactions:
            def audit(month: int, phase: str, payload: dict) -> None:
                if phase != "consumption":
                    return
                for receipt in payload["result"].receipts(world):
                    row = dataclasses.asdict(receipt)
                    row["month_index"] = month
                    transactions.append(row)

        if args.dump_world:
            _write_world_dump(out_dir, world)
        progress = None if args.quiet else (lambda year: print(f"  year {year}", file=sys.stderr))
        result = run_simulation(world, sim, model, stream, run_id=0, audit=audit, progress=progress)
        write_run_outputs(out_dir, sim, model, sim.num_regions, 0, result)
        if args.transactions:
            _write_records(
                out_dir / f"transactions_{sim.num_regions}_0.csv",
                _csv_header("transactions", sim.num_regions, 0, sim, model),
                ["month_index", "buyer_id", "firm_id", "region_id", "gross_value",
                 "tax", "net_to_firm", "quantity", "change_returned"],
                transactions,
            )
        print(out_dir)
        return 0

    if args.command == "batch":
        designs = _parse_designs(args.designs)
        num_runs = args.runs if args.runs is not None else sim.num_runs
        sim = dataclasses.replace(sim, num_runs=num_runs)
        out = run_batch(sim, model, designs, num_runs, workers=args.workers, quiet=args.quiet)
        print(out)
        return 0

    if args.command == "sweep":
        designs = _parse_designs(args.designs)
        values = None
        if args.values:
            values = [float(v) for v in args.values.split(",")]
        out = run_sweep(sim, model, args.param, designs, values=values, quiet=args.quiet)
        print(out)
        return 0

    raise AssertionError(f"unhandled command {args.command}")


if __name__ == "__main__":
    sys.exit(main())
