"""Monthly housing dynamics: valuation updates and the trading round.

Occupied dwellings are re-valued every month: price rides the region's QLI
growth multiplicatively and quality is size times the current QLI. Vacant
stock keeps the valuation it had when its last family left - nobody updates
an empty house - so vacancies drift cheap relative to occupied homes. That
lag is what keeps the market liquid: it is the source of the capital gains
the model's families live on.

A random share of families then enters the market. Families below the
all-family cash median hunt the cheapest vacancy and move only if it is
cheaper than their home, pocketing the difference. The rest scan vacancies
by quality (best first) and take the first one cheaper than their current
home - trading up in quality while capitalizing - or, failing that, buy the
single best-quality vacancy outright when its price is within current home
value plus cash. There is no counterparty (the stock traded is vacant), so
moves create or destroy cash against housing equity; that is the model's
design, not an accounting bug.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .rng import RunStream, sample_fraction
from .worldgen import World


@dataclass
class HousingRound:
    entrants: list[int]            # family ids, sampled order
    vacancies: np.ndarray          # dwelling ids, mutated as moves happen
    median_resources: float


def update_dwelling_prices(world: World) -> None:
    """Re-value occupied dwellings: price *= 1 + dQLI/QLI_prev, quality =
    size * QLI. Vacant dwellings keep their last valuation until re-occupied."""
    prev = world.region_qli_prev
    if np.any(prev <= 0.0):
        raise ValueError("previous QLI must be positive")
    factor = 1.0 + (world.region_qli - prev) / prev
    occupied = world.dw_occupant >= 0
    world.dw_price = np.where(occupied, world.dw_price * factor[world.dw_region], world.dw_price)
    world.dw_quality = np.where(
        occupied, world.dw_size * world.region_qli[world.dw_region], world.dw_quality
    )


def open_round(world: World, share: float, stream: RunStream) -> HousingRound:
    """Sample the entrants and freeze the vacancy set and cash median."""
    entrants = sample_fraction(stream, list(range(world.num_families)), share)
    vacancies = np.nonzero(world.dw_occupant < 0)[0].astype(np.int64)
    median = float(np.median(world.family_cash_totals()))
    return HousingRound(entrants=entrants, vacancies=vacancies, median_resources=median)


def _cheapest(world: World, vacancies: np.ndarray) -> int:
    order = np.lexsort((vacancies, world.dw_price[vacancies]))
    return int(order[0])


def _quality_order(world: World, vacancies: np.ndarray) -> np.ndarray:
    return np.lexsort((vacancies, -world.dw_quality[vacancies]))


def process_family(world: World, family: int, round_: HousingRound) -> bool:
    """One family's move decision; returns True if it moved.

    Ties in price or quality go to the lower dwelling id. The price delta is
    split equally across members; the old home joins the round's vacancy pool
    at its current valuation and the target leaves it.
    """
    if world.fam_size[family] <= 0:
        return False
    if len(round_.vacancies) == 0:
        return False
    current = int(world.fam_dwelling[family])
    current_price = float(world.dw_price[current])
    members = np.nonzero(world.family_id == family)[0]
    fam_cash = float(world.cash[members].sum())
    vacancies = round_.vacancies

    if fam_cash < round_.median_resources:
        slot = _cheapest(world, vacancies)
        if current_price <= float(world.dw_price[vacancies[slot]]):
            return False
    else:
        order = _quality_order(world, vacancies)
        slot = -1
        for j in order:
            if float(world.dw_price[vacancies[j]]) < current_price:
                slot = int(j)
                break
        if slot < 0:
            # no capitalizing upgrade available: pay up for the best one
            best = int(order[0])
            if current_price + fam_cash > float(world.dw_price[vacancies[best]]):
                slot = best
        if slot < 0:
            return False

    target = int(vacancies[slot])
    target_price = float(world.dw_price[target])
    world.cash[members] += (current_price - target_price) / world.fam_size[family]
    world.dw_occupant[current] = -1
    world.dw_occupant[target] = family
    world.fam_dwelling[family] = target
    round_.vacancies[slot] = current  # vacated home re-enters the pool
    return True


def run_housing_round(world: World, share: float, stream: RunStream) -> int:
    """Valuation update, then the trading round; returns the number of moves."""
    update_dwelling_prices(world)
    round_ = open_round(world, share, stream)
    moves = 0
    for family in round_.entrants:
        if process_family(world, family, round_):
            moves += 1
    return moves
