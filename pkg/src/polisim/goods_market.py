"""Monthly household consumption with tax withheld at the point of sale.

Family funds are pooled and split equally among members first; each agent
then draws a budget, picks a firm from a random sample by price or proximity,
and buys as much as the budget and the firm's stock allow. The batch path
(:func:`run_consumption`) drives the backend kernel; the single-operation
functions mirror the kernel's arithmetic one agent at a time and are the unit
test surface.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .rng import RunStream
from .space import distance
from .worldgen import World


@dataclass(frozen=True)
class SaleReceipt:
    buyer_id: int
    firm_id: int
    region_id: int
    gross_value: float
    tax: float
    net_to_firm: float
    quantity: float
    change_returned: float


@dataclass
class ConsumptionResult:
    gdp: float
    # dense per-agent arrays; firm = -1 where no purchase happened
    firm: np.ndarray
    gross: np.ndarray
    tax: np.ndarray
    quantity: np.ndarray
    change: np.ndarray

    def receipts(self, world: World) -> list[SaleReceipt]:
        buyers = np.nonzero(self.firm >= 0)[0]
        return [
            SaleReceipt(
                buyer_id=int(a),
                firm_id=int(self.firm[a]),
                region_id=int(world.firm_region[self.firm[a]]),
                gross_value=float(self.gross[a]),
                tax=float(self.tax[a]),
                net_to_firm=float(self.gross[a] - self.tax[a]),
                quantity=float(self.quantity[a]),
                change_returned=float(self.change[a]),
            )
            for a in buyers
        ]


def equalize_family_funds(world: World) -> None:
    """Each member's cash becomes family total / member count."""
    totals = world.family_cash_totals()
    size = world.fam_size
    per_member = np.divide(totals, size, out=np.zeros_like(totals), where=size > 0)
    world.cash = per_member[world.family_id]


def draw_consumption_budget(cash: float, beta: float, stream: RunStream) -> float:
    """Budget in [0, cash] below one cash unit, else [0, cash**beta]; zero
    (and no draw) when the agent has nothing."""
    if cash <= 0.0:
        return 0.0
    bound = cash if cash < 1.0 else math.pow(cash, beta)
    return stream.uniform() * bound


def choose_firm(
    agent_x: float,
    agent_y: float,
    world: World,
    market_size: int,
    stream: RunStream,
) -> int:
    """Sample min(market_size, firms) firms; fair coin between the cheapest
    and the closest of the sample (first occurrence wins ties)."""
    n = world.num_firms
    if n == 0:
        raise ValueError("no firms to choose from")
    k = min(int(market_size), n)
    sample = stream.partial_shuffle(n, k)
    best_price = math.inf
    best_price_f = -1
    best_dist = math.inf
    best_dist_f = -1
    for f in sample:
        f = int(f)
        p = float(world.firm_price[f])
        if p < best_price:
            best_price = p
            best_price_f = f
        d = distance(float(world.firm_x[f]), float(world.firm_y[f]), agent_x, agent_y)
        if d < best_dist:
            best_dist = d
            best_dist_f = f
    return best_price_f if stream.uniform() < 0.5 else best_dist_f


def execute_sale(world: World, buyer_id: int, firm_id: int, budget: float, tau: float) -> SaleReceipt:
    """Buy min(budget/price, stock) units; withhold tax for the firm's region.

    Tax = tau * gross and the firm is credited gross - tax, so the receipt
    decomposition is exact. A zero budget or empty stock is a no-op receipt.
    """
    if budget < 0.0:
        raise ValueError("budget must be non-negative")
    region = int(world.firm_region[firm_id])
    stock = float(world.firm_inventory[firm_id])
    if budget == 0.0 or stock <= 0.0:
        return SaleReceipt(buyer_id, firm_id, region, 0.0, 0.0, 0.0, 0.0, budget)
    price = float(world.firm_price[firm_id])
    desired = budget / price
    sold = desired if desired <= stock else stock
    gross = sold * price
    tax = gross * tau
    world.firm_inventory[firm_id] = stock - sold
    world.cash[buyer_id] -= gross
    world.firm_balance[firm_id] += gross - tax
    world.region_treasury[region] += tax
    world.firm_sold_cum[firm_id] += gross
    world.utility[buyer_id] += gross
    return SaleReceipt(buyer_id, firm_id, region, gross, tax, gross - tax, sold, budget - gross)


def run_consumption(world: World, beta: float, tau: float, market_size: int, stream: RunStream) -> ConsumptionResult:
    """Whole-population consumption for one month, agents in id order.

    Draw layout (dense, independent of individual cash states): one budget
    uniform per agent, k sample uniforms per agent, one coin per agent.
    """
    n = world.num_agents
    k = min(int(market_size), world.num_firms)
    u_budget = stream.uniforms(n)
    u_sample = stream.uniforms(n * k).reshape(n, k)
    u_coin = stream.uniforms(n)

    agent_x, agent_y = world.agent_locations()
    out_firm = np.empty(n, dtype=np.int64)
    out_gross = np.empty(n)
    out_tax = np.empty(n)
    out_qty = np.empty(n)
    out_change = np.empty(n)

    gdp = kernels.goods_market_month(
        world.cash, world.utility,
        np.ascontiguousarray(agent_x), np.ascontiguousarray(agent_y),
        world.firm_x, world.firm_y, world.firm_price,
        world.firm_inventory, world.firm_balance, world.firm_sold_cum,
        world.firm_region, world.region_treasury,
        float(beta), float(tau), k,
        u_budget, u_sample, u_coin,
        out_firm, out_gross, out_tax, out_qty, out_change,
    )
    return ConsumptionResult(float(gdp), out_firm, out_gross, out_tax, out_qty, out_change)
