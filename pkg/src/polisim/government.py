"""Regional treasuries and the monthly quality-of-life update.

Each region converts the month's collected consumption tax into a linear QLI
increase per resident: qli += treasury / population. The QLI used by the
dwelling-price update keeps its previous value in ``region_qli_prev``. An
emptied region (possible in the 7-region design) cannot divide per capita;
its treasury carries over untouched until someone moves back in.
"""

from __future__ import annotations

import numpy as np

from .worldgen import World


def update_qli(world: World) -> None:
    """Spend every region's treasury on QLI; populations are the counts
    refreshed after the previous month's housing round."""
    if np.any(world.region_treasury < 0.0):
        raise ValueError("negative treasury: tax accounting corrupted")
    world.region_qli_prev = world.region_qli.copy()
    pop = world.region_pop
    spendable = pop > 0
    increment = np.zeros_like(world.region_qli)
    increment[spendable] = world.region_treasury[spendable] / pop[spendable]
    world.region_qli = world.region_qli + increment
    world.region_treasury = np.where(spendable, 0.0, world.region_treasury)


def refresh_population(world: World) -> np.ndarray:
    """Recount residents per region from current family dwellings."""
    regions = world.dw_region[world.fam_dwelling]
    pop = np.bincount(regions, weights=world.fam_size, minlength=world.num_regions)
    world.region_pop = pop.astype(np.int64)
    return world.region_pop
