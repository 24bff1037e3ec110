"""Monthly indicators and cross-run summary tables.

The Gini coefficient is computed on families' average member utility
(cumulative consumption value); family wealth is liquid cash plus the price
of the occupied dwelling, so housing equity is included. Summaries report
the 0.25/0.50/0.75 quantiles (linear interpolation between order statistics)
of final-month values across runs, plus median and standard deviation of
each run's max/min regional QLI and population.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

import numpy as np

from .labor_market import WORKING_AGE_MAX, WORKING_AGE_MIN
from .worldgen import World


@dataclass(frozen=True)
class RunRecord:
    run_id: int
    month_index: int
    gdp_month: float
    gdp_cumulative: float
    unemployment: float
    avg_workers_per_firm: float
    avg_price: float
    avg_firm_balance: float
    sum_firm_profit: float
    gini_utility: float
    median_family_wealth: float
    avg_utility: float


@dataclass(frozen=True)
class RegionRecord:
    run_id: int
    month_index: int
    region_id: int
    qli: float
    population: int
    tax_collected_month: float


SERIES_COLUMNS = [f.name for f in fields(RunRecord)]
REGION_COLUMNS = [f.name for f in fields(RegionRecord)]

# RunRecord fields that summarize() aggregates across runs
SUMMARY_INDICATORS = SERIES_COLUMNS[2:]


def gini(values) -> float:
    """Gini index: sum_ij |x_i - x_j| / (2 n^2 mean), for non-negative data.

    All-zero input is perfect equality (0). Computed via the sorted
    rank-weighted form, which equals the pairwise formula to rounding.
    """
    x = np.asarray(values, dtype=np.float64)
    if x.size == 0:
        raise ValueError("gini of empty list")
    if np.any(x < 0):
        raise ValueError("gini requires non-negative values")
    total = x.sum()
    if total == 0.0:
        return 0.0
    n = x.size
    x = np.sort(x)
    ranks = np.arange(1, n + 1, dtype=np.float64)
    return float((2.0 * np.sum(ranks * x) - (n + 1) * total) / (n * total))


def family_average_utility(world: World) -> np.ndarray:
    """Mean member utility per family, omitting zero-member families."""
    totals = np.bincount(world.family_id, weights=world.utility, minlength=world.num_families)
    occupied = world.fam_size > 0
    return totals[occupied] / world.fam_size[occupied]


def family_wealth(world: World) -> np.ndarray:
    """Family cash plus the current price of its dwelling (all families)."""
    return world.family_cash_totals() + world.dw_price[world.fam_dwelling]


def snapshot(
    world: World,
    run_id: int,
    month_index: int,
    gdp_month: float,
    gdp_cumulative: float,
    tax_collected: np.ndarray,
) -> tuple[RunRecord, list[RegionRecord]]:
    """End-of-month indicator row plus one row per region."""
    working = (world.age >= WORKING_AGE_MIN) & (world.age <= WORKING_AGE_MAX)
    n_working = int(working.sum())
    unemployed = int((working & (world.employer_id < 0)).sum())
    employed_total = int((world.employer_id >= 0).sum())

    record = RunRecord(
        run_id=run_id,
        month_index=month_index,
        gdp_month=gdp_month,
        gdp_cumulative=gdp_cumulative,
        unemployment=unemployed / n_working if n_working else 0.0,
        avg_workers_per_firm=employed_total / world.num_firms,
        avg_price=float(world.firm_price.mean()),
        avg_firm_balance=float(world.firm_balance.mean()),
        sum_firm_profit=float(world.firm_profit.sum()),
        gini_utility=gini(family_average_utility(world)),
        median_family_wealth=float(np.median(family_wealth(world))),
        avg_utility=float(world.utility.mean()),
    )
    regions = [
        RegionRecord(
            run_id=run_id,
            month_index=month_index,
            region_id=r,
            qli=float(world.region_qli[r]),
            population=int(world.region_pop[r]),
            tax_collected_month=float(tax_collected[r]),
        )
        for r in range(world.num_regions)
    ]
    return record, regions


def quantiles(values) -> tuple[float, float, float]:
    """(q25, median, q75) with linear interpolation."""
    x = np.asarray(values, dtype=np.float64)
    if x.size == 0:
        raise ValueError("quantiles of empty data")
    q = np.quantile(x, [0.25, 0.5, 0.75], method="linear")
    return float(q[0]), float(q[1]), float(q[2])


def summarize(
    final_series: dict[int, list[dict]],
    final_regions: dict[int, list[list[dict]]],
) -> list[dict]:
    """Cross-run summary rows, long format: design / indicator / stat / value.

    ``final_series``: design -> final-month RunRecord dicts, one per run.
    ``final_regions``: design -> per run, the final-month RegionRecord dicts.
    Adds the regional aggregates qli_mean (per-run mean over regions) and the
    per-run max/min of QLI and population (median + std across runs).
    """
    rows: list[dict] = []
    for design in sorted(final_series):
        records = final_series[design]
        for indicator in SUMMARY_INDICATORS:
            q25, med, q75 = quantiles([rec[indicator] for rec in records])
            for stat, value in (("q25", q25), ("median", med), ("q75", q75)):
                rows.append({"design": design, "indicator": indicator, "stat": stat, "value": value})

        per_run_regions = final_regions[design]
        qli_mean = [float(np.mean([r["qli"] for r in run])) for run in per_run_regions]
        q25, med, q75 = quantiles(qli_mean)
        for stat, value in (("q25", q25), ("median", med), ("q75", q75)):
            rows.append({"design": design, "indicator": "qli_mean", "stat": stat, "value": value})

        for name, key, reduce_fn in (
            ("qli_max", "qli", max), ("qli_min", "qli", min),
            ("pop_max", "population", max), ("pop_min", "population", min),
        ):
            values = np.array([reduce_fn(r[key] for r in run) for run in per_run_regions], dtype=np.float64)
            rows.append({"design": design, "indicator": name, "stat": "median", "value": float(np.median(values))})
            rows.append({"design": design, "indicator": name, "stat": "std", "value": float(values.std())})
    return rows
