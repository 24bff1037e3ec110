"""Calendar and the per-run execution loop.

A month is 21 days, a quarter 3 months, a year 12 months. Day 0 seeds the
economy: every firm posts one vacancy (no profit filter), the unemployed
register, matching runs, and the first day of production follows. Every day
firms produce. At each month end the phases run in a fixed order:

    wages -> consumption -> qli -> profits -> prices -> labor-decisions
    -> matching -> housing -> stats

Quarter ends re-snapshot the firms' reference balances inside the profit
phase. Region populations are refreshed after housing, so each month's QLI
update divides by the population as of the previous month's end. The phase
labels above are emitted to an optional audit callback, which also receives
conservation totals and the month's sale receipts.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import firm_ops, goods_market, government, housing_market, labor_market, stats
from .config import ModelParams, SimParams
from .rng import RunStream
from .worldgen import World

DAYS_PER_MONTH = 21
MONTHS_PER_QUARTER = 3
MONTHS_PER_YEAR = 12


@dataclass(frozen=True)
class Clock:
    day_index: int

    @property
    def is_month_end(self) -> bool:
        return (self.day_index + 1) % DAYS_PER_MONTH == 0

    @property
    def month(self) -> int:
        """1-based index of the month this day closes (valid at month end)."""
        return (self.day_index + 1) // DAYS_PER_MONTH

    @property
    def is_quarter_end(self) -> bool:
        return self.is_month_end and self.month % MONTHS_PER_QUARTER == 0

    @property
    def is_year_end(self) -> bool:
        return self.is_month_end and self.month % (MONTHS_PER_QUARTER * 4) == 0


@dataclass
class RunResult:
    series: list[stats.RunRecord]
    regions: list[stats.RegionRecord]


AuditFn = Callable[[int, str, dict], None]


def run_simulation(
    world: World,
    sim: SimParams,
    model: ModelParams,
    stream: RunStream,
    run_id: int = 0,
    audit: AuditFn | None = None,
    progress: Callable[[int], None] | None = None,
) -> RunResult:
    """Execute ``sim.num_days`` days and collect the monthly records."""
    qual_pow = np.power(world.qual.astype(np.float64), model.alpha)

    government.refresh_population(world)

    # day-0 seeding round: one vacancy per firm, then matching
    vacancies = np.arange(world.num_firms, dtype=np.int64)
    candidates = labor_market.register_candidates(world)
    labor_market.run_matching(world, vacancies, candidates, stream)
    daily_output = firm_ops.monthly_output_vector(world, qual_pow)
    prev_balance = world.firm_balance.copy()  # cash-flow baseline for month 1

    series: list[stats.RunRecord] = []
    regions: list[stats.RegionRecord] = []
    gdp_cumulative = 0.0

    for day in range(sim.num_days):
        clock = Clock(day)
        firm_ops.produce_daily(world, daily_output)
        if not clock.is_month_end:
            continue
        month = clock.month

        wage_debit, wage_credit = firm_ops.pay_wages(world, qual_pow, model.wage_base)
        if audit:
            audit(month, "wages", {"debit": wage_debit, "credit": wage_credit})

        goods_market.equalize_family_funds(world)
        carry = world.region_treasury.copy()
        result = goods_market.run_consumption(
            world, model.beta, model.tax_consumption, model.market_size, stream
        )
        tax_collected = world.region_treasury - carry
        gdp_cumulative += result.gdp
        if audit:
            audit(month, "consumption", {"result": result, "tax_collected": tax_collected.copy()})

        government.update_qli(world)
        if audit:
            audit(month, "qli", {})

        firm_ops.update_profit(world, clock.is_quarter_end)
        if audit:
            audit(month, "profits", {"quarter_end": clock.is_quarter_end})

        firm_ops.update_prices(world, model.price_change_quantity, model.markup)
        if audit:
            audit(month, "prices", {})

        vacancies = firm_ops.run_labor_decisions(
            world, model.labor_market_frequency, stream, prev_balance
        )
        if audit:
            audit(month, "labor-decisions", {"vacancies": vacancies.copy()})

        candidates = labor_market.register_candidates(world)
        hires = labor_market.run_matching(world, vacancies, candidates, stream)
        daily_output = firm_ops.monthly_output_vector(world, qual_pow)
        if audit:
            audit(month, "matching", {"hires": hires})

        housing_market.run_housing_round(world, model.housing_entry_share, stream)
        government.refresh_population(world)
        if audit:
            audit(month, "housing", {})

        record, region_records = stats.snapshot(
            world, run_id, month, result.gdp, gdp_cumulative, tax_collected
        )
        series.append(record)
        regions.extend(region_records)
        prev_balance = world.firm_balance.copy()
        if audit:
            audit(month, "stats", {})
        if progress and clock.is_year_end:
            progress(month // MONTHS_PER_YEAR)

    return RunResult(series=series, regions=regions)
