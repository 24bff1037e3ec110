"""World state and its generation: agents, families, dwellings, firms, regions.

State is kept as parallel numpy arrays (one block per entity class) rather
than per-entity objects: the monthly market loops then reduce to array kernels.
Links are integer id columns; -1 means "none".

Generation draw order is fixed and documented so replay is stable:
per agent (age, qualification, cash), per dwelling (x, y, size, sqm value),
per firm (x, y, capital), then one draw per agent for family allocation and
one per family for dwelling allocation - ``3A + 4D + 3F + A + Fam`` uniforms
in total. Attribute bounds are calibration choices with no canonical values;
they are config fields, so they are fingerprinted with the run.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .config import ModelParams, SimParams
from .rng import RunStream
from .space import RegionGeometry, XY_MAX, XY_MIN, locate_many


@dataclass
class World:
    partition: list[RegionGeometry]
    # agents
    age: np.ndarray
    qual: np.ndarray
    cash: np.ndarray
    utility: np.ndarray
    family_id: np.ndarray
    employer_id: np.ndarray
    # families
    fam_dwelling: np.ndarray
    fam_size: np.ndarray
    # dwellings
    dw_x: np.ndarray
    dw_y: np.ndarray
    dw_size: np.ndarray
    dw_sqm: np.ndarray
    dw_price: np.ndarray
    dw_quality: np.ndarray
    dw_region: np.ndarray
    dw_occupant: np.ndarray
    # firms
    firm_x: np.ndarray
    firm_y: np.ndarray
    firm_region: np.ndarray
    firm_balance: np.ndarray
    firm_price: np.ndarray
    firm_inventory: np.ndarray
    firm_ref_balance: np.ndarray
    firm_profit: np.ndarray
    firm_sold_cum: np.ndarray
    # regions
    region_qli: np.ndarray
    region_qli_prev: np.ndarray
    region_treasury: np.ndarray
    region_pop: np.ndarray = field(default=None)  # set by government.refresh_population

    @property
    def num_agents(self) -> int:
        return self.age.shape[0]

    @property
    def num_families(self) -> int:
        return self.fam_dwelling.shape[0]

    @property
    def num_dwellings(self) -> int:
        return self.dw_x.shape[0]

    @property
    def num_firms(self) -> int:
        return self.firm_x.shape[0]

    @property
    def num_regions(self) -> int:
        return self.region_qli.shape[0]

    def employee_counts(self) -> np.ndarray:
        employed = self.employer_id >= 0
        return np.bincount(self.employer_id[employed], minlength=self.num_firms)

    def employees_of(self, firm: int) -> np.ndarray:
        """Agent ids employed by ``firm``, ascending."""
        return np.nonzero(self.employer_id == firm)[0]

    def family_cash_totals(self) -> np.ndarray:
        return np.bincount(self.family_id, weights=self.cash, minlength=self.num_families)

    def agent_locations(self) -> tuple[np.ndarray, np.ndarray]:
        """Each agent's location = its family's current dwelling."""
        dw = self.fam_dwelling[self.family_id]
        return self.dw_x[dw], self.dw_y[dw]


INITIAL_QLI = 1.0
INITIAL_PRODUCT_PRICE = 1.0


def generate_world(
    sim: SimParams,
    model: ModelParams,
    partition: list[RegionGeometry],
    stream: RunStream,
) -> World:
    """Create all entities and run the two initial allocations."""
    n_a, n_f, n_d, n_fi = sim.num_agents, sim.num_families, sim.num_dwellings, sim.num_firms
    n_r = len(partition)

    u = stream.uniforms(3 * n_a).reshape(n_a, 3)
    age = (model.age_min + u[:, 0] * (model.age_max - model.age_min + 1)).astype(np.int32)
    qual = (model.qualification_min
            + u[:, 1] * (model.qualification_max - model.qualification_min + 1)).astype(np.int32)
    cash = model.initial_cash_min + u[:, 2] * (model.initial_cash_max - model.initial_cash_min)

    u = stream.uniforms(4 * n_d).reshape(n_d, 4)
    dw_x = XY_MIN + u[:, 0] * (XY_MAX - XY_MIN)
    dw_y = XY_MIN + u[:, 1] * (XY_MAX - XY_MIN)
    dw_size = (model.dwelling_size_min
               + u[:, 2] * (model.dwelling_size_max - model.dwelling_size_min + 1)).astype(np.int32)
    dw_sqm = model.sqm_value_min + u[:, 3] * (model.sqm_value_max - model.sqm_value_min)
    dw_price = dw_size * dw_sqm
    dw_quality = dw_size * INITIAL_QLI
    dw_region = locate_many(partition, dw_x, dw_y)

    u = stream.uniforms(3 * n_fi).reshape(n_fi, 3)
    firm_x = XY_MIN + u[:, 0] * (XY_MAX - XY_MIN)
    firm_y = XY_MIN + u[:, 1] * (XY_MAX - XY_MIN)
    firm_balance = model.firm_capital_min + u[:, 2] * (model.firm_capital_max - model.firm_capital_min)
    firm_region = locate_many(partition, firm_x, firm_y)

    world = World(
        partition=partition,
        age=age,
        qual=qual,
        cash=cash,
        utility=np.zeros(n_a),
        family_id=np.full(n_a, -1, dtype=np.int32),
        employer_id=np.full(n_a, -1, dtype=np.int32),
        fam_dwelling=np.full(n_f, -1, dtype=np.int32),
        fam_size=np.zeros(n_f, dtype=np.int32),
        dw_x=dw_x,
        dw_y=dw_y,
        dw_size=dw_size,
        dw_sqm=dw_sqm,
        dw_price=dw_price,
        dw_quality=dw_quality.astype(np.float64),
        dw_region=dw_region,
        dw_occupant=np.full(n_d, -1, dtype=np.int32),
        firm_x=firm_x,
        firm_y=firm_y,
        firm_region=firm_region,
        firm_balance=firm_balance,
        firm_price=np.full(n_fi, INITIAL_PRODUCT_PRICE),
        firm_inventory=np.zeros(n_fi),
        firm_ref_balance=firm_balance.copy(),  # day-0 register: first profit baseline
        firm_profit=np.zeros(n_fi),
        firm_sold_cum=np.zeros(n_fi),
        region_qli=np.full(n_r, INITIAL_QLI),
        region_qli_prev=np.full(n_r, INITIAL_QLI),
        region_treasury=np.zeros(n_r),
        region_pop=np.zeros(n_r, dtype=np.int64),
    )
    allocate_agents_to_families(world, stream)
    allocate_families_to_dwellings(world, stream)
    return world


def allocate_agents_to_families(world: World, stream: RunStream) -> None:
    """Assign each agent a uniformly random family; sizes are endogenous."""
    n_f = world.num_families
    if n_f == 0:
        raise ValueError("cannot allocate agents: no families")
    u = stream.uniforms(world.num_agents)
    world.family_id[:] = (u * n_f).astype(np.int32)
    world.fam_size[:] = np.bincount(world.family_id, minlength=n_f)


def allocate_families_to_dwellings(world: World, stream: RunStream) -> None:
    """Give each family a distinct, uniformly random vacant dwelling."""
    n_f, n_d = world.num_families, world.num_dwellings
    if n_d <= n_f:
        raise ValueError(f"need more dwellings ({n_d}) than families ({n_f})")
    picks = stream.partial_shuffle(n_d, n_f)
    world.fam_dwelling[:] = picks.astype(np.int32)
    world.dw_occupant[:] = -1
    world.dw_occupant[picks] = np.arange(n_f, dtype=np.int32)
