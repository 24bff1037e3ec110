from __future__ import annotations

import numpy as np
import pytest

from polisim import government
from tests.conftest import make_world


def test_qli_update_example():
    world, _, _, _ = make_world(seed=1, design=4)
    world.region_qli[:] = 1.0
    world.region_treasury[:] = 0.0
    world.region_treasury[2] = 50.0
    world.region_pop[:] = 100
    government.update_qli(world)
    assert world.region_qli[2] == pytest.approx(1.5, abs=1e-12)
    assert world.region_treasury[2] == 0.0
    assert np.all(world.region_qli_prev == 1.0)


def test_qli_unchanged_without_revenue():
    world, _, _, _ = make_world(seed=1)
    world.region_qli[:] = 3.0
    world.region_treasury[:] = 0.0
    government.update_qli(world)
    assert np.all(world.region_qli == 3.0)


def test_zero_population_carries_treasury():
    world, _, _, _ = make_world(seed=1, design=4)
    world.region_qli[:] = 2.0
    world.region_treasury[:] = 10.0
    world.region_pop[:] = 50
    world.region_pop[1] = 0
    government.update_qli(world)
    assert world.region_qli[1] == 2.0
    assert world.region_treasury[1] == 10.0
    assert world.region_qli[0] == pytest.approx(2.2)
    assert world.region_treasury[0] == 0.0


def test_negative_treasury_rejected():
    world, _, _, _ = make_world(seed=1)
    world.region_treasury[0] = -1.0
    with pytest.raises(ValueError):
        government.update_qli(world)


def test_population_single_region():
    world, sim, _, _ = make_world(seed=2, design=1)
    pop = government.refresh_population(world)
    assert pop.tolist() == [sim.num_agents]


def test_population_partition_and_moves():
    world, sim, _, _ = make_world(seed=3, design=7)
    pop = government.refresh_population(world)
    assert pop.sum() == sim.num_agents

    # move one family across regions and recount
    fam = 0
    old_dw = int(world.fam_dwelling[fam])
    old_region = int(world.dw_region[old_dw])
    other = np.nonzero((world.dw_occupant < 0) & (world.dw_region != old_region))[0]
    new_dw = int(other[0])
    new_region = int(world.dw_region[new_dw])
    size = int(world.fam_size[fam])
    world.dw_occupant[old_dw] = -1
    world.dw_occupant[new_dw] = fam
    world.fam_dwelling[fam] = new_dw
    pop2 = government.refresh_population(world)
    assert pop2[old_region] == pop[old_region] - size
    assert pop2[new_region] == pop[new_region] + size
    assert pop2.sum() == sim.num_agents
