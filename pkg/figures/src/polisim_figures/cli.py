"""`plot` command: render trajectory bundles and final-month boxplots.

    plot --kind trajectory --indicator unemployment --designs 1 --in DIR --out FILE
    plot --kind boxplot --indicator gdp_cumulative --designs 1,4,7 --in DIR --out FILE

Images are deterministic for identical inputs: fixed figure geometry, no
timestamps or software stamps in the PNG metadata.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

KINDS = ("trajectory", "boxplot")
FIGSIZE = (8.0, 5.0)
DPI = 120


class FigureError(Exception):
    """User-facing failure: bad inputs or unknown indicator."""


@dataclass
class FigureSpec:
    indicator: str
    kind: str                      # "trajectory" or "boxplot"
    input_dir: Path
    output: Path
    designs: list[int] = field(default_factory=lambda: [1, 4, 7])


def read_series_csv(path: Path) -> dict[str, np.ndarray]:
    """Parse one series CSV ('#' comments, header row, numeric columns)."""
    columns: list[str] | None = None
    rows: list[list[float]] = []
    for line in path.read_text().splitlines():
        if not line or line.startswith("#"):
            continue
        if columns is None:
            columns = line.split(",")
            continue
        rows.append([float(cell) for cell in line.split(",")])
    if columns is None or not rows:
        raise FigureError(f"{path}: empty or malformed series file")
    data = np.asarray(rows)
    return {name: data[:, i] for i, name in enumerate(columns)}


def load_design(input_dir: Path, design: int) -> list[dict[str, np.ndarray]]:
    paths = sorted(
        input_dir.glob(f"series_{design}_*.csv"),
        key=lambda p: int(p.stem.split("_")[2]),
    )
    if not paths:
        raise FigureError(f"no series_{design}_*.csv files in {input_dir}")
    return [read_series_csv(p) for p in paths]


def check_indicator(indicator: str, runs: list[dict[str, np.ndarray]]) -> None:
    columns = [c for c in runs[0] if c not in ("run_id", "month_index")]
    if indicator not in columns:
        raise FigureError(
            f"unknown indicator '{indicator}'; valid columns: {', '.join(columns)}"
        )


def plot(spec: FigureSpec) -> Path:
    """Render the figure described by ``spec``; returns the image path."""
    if spec.kind not in KINDS:
        raise FigureError(f"kind must be one of {KINDS}, got '{spec.kind}'")

    fig, ax = plt.subplots(figsize=FIGSIZE, dpi=DPI)
    try:
        if spec.kind == "trajectory":
            if len(spec.designs) != 1:
                raise FigureError("trajectory bundles take exactly one design")
            design = spec.designs[0]
            runs = load_design(spec.input_dir, design)
            check_indicator(spec.indicator, runs)
            for run in runs:
                ax.plot(run["month_index"], run[spec.indicator],
                        color="steelblue", alpha=0.25, linewidth=0.7)
            ax.set_xlabel("month")
            ax.set_ylabel(spec.indicator)
            ax.set_title(f"{spec.indicator}, {len(runs)} runs, {design} region(s)")
        else:
            finals = []
            for design in spec.designs:
                runs = load_design(spec.input_dir, design)
                check_indicator(spec.indicator, runs)
                finals.append([run[spec.indicator][-1] for run in runs])
            ax.boxplot(finals, tick_labels=[str(d) for d in spec.designs], whis=1.5)
            ax.set_xlabel("regions")
            ax.set_ylabel(spec.indicator)
            ax.set_title(f"{spec.indicator}, final month, by regional design")

        ax.grid(True, alpha=0.3)
        fig.tight_layout()
        spec.output.parent.mkdir(parents=True, exist_ok=True)
        fig.savefig(spec.output, metadata={"Software": None})
    finally:
        plt.close(fig)
    return spec.output


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="plot", description=__doc__)
    parser.add_argument("--kind", required=True, choices=KINDS)
    parser.add_argument("--indicator", required=True)
    parser.add_argument("--designs", default="1,4,7",
                        help="comma list; trajectory takes exactly one")
    parser.add_argument("--in", dest="input_dir", required=True)
    parser.add_argument("--out", dest="output", required=True)
    args = parser.parse_args(argv)

    try:
        designs = [int(d) for d in args.designs.split(",") if d]
        spec = FigureSpec(
            indicator=args.indicator,
            kind=args.kind,
            input_dir=Path(args.input_dir),
            output=Path(args.output),
            designs=designs,
        )
        path = plot(spec)
    except (FigureError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
