"""Firm behaviours: production, price setting, wages, profit ledger, hiring
and firing decisions.

Production and wages share the exponent ``alpha``: a worker with
qualification E produces E**alpha units per day and earns wage_base * E**alpha
per month, so better-qualified workers both produce and earn more. Prices
follow inventory: below the threshold quantity the price is marked up, above
it the price falls back to the cost price of 1. Firm balances may go negative
(there is no bankruptcy process; firing on negative profit is the only
corrective force).
"""

from __future__ import annotations

import math

import numpy as np

from .rng import RunStream
from .worldgen import World

COST_PRICE = 1.0

POST_VACANCY = "post_vacancy"
FIRE = "fire_random_employee"
NO_ACTION = "none"


def production_output(qualifications, alpha: float) -> float:
    """Daily output of one firm: sum of E**alpha over its workforce."""
    total = 0.0
    for q in qualifications:
        total += math.pow(float(q), alpha)
    return total


def monthly_output_vector(world: World, qual_pow: np.ndarray) -> np.ndarray:
    """Per-firm daily output under the current employment links.

    ``qual_pow`` is the precomputed per-agent E**alpha (qualification and
    alpha are both fixed for a run). bincount accumulates in agent-id order,
    matching :func:`production_output` run over each firm's employee list.
    """
    employed = world.employer_id >= 0
    return np.bincount(
        world.employer_id[employed], weights=qual_pow[employed], minlength=world.num_firms
    )


def produce_daily(world: World, output: np.ndarray) -> None:
    world.firm_inventory += output


def update_prices(world: World, delta: float, markup: float) -> None:
    """Inventory below delta: price * (1 + markup); above: back to cost price."""
    inv = world.firm_inventory
    price = world.firm_price
    world.firm_price = np.where(
        inv < delta, price * (1.0 + markup), np.where(inv > delta, COST_PRICE, price)
    )


def wage_of(qualification: float, wage_base: float, alpha: float) -> float:
    return wage_base * math.pow(float(qualification), alpha)


def pay_wages(world: World, qual_pow: np.ndarray, wage_base: float) -> tuple[float, float]:
    """Credit each employee its wage, debit employers; returns (debit, credit)
    totals for conservation audits."""
    employed = world.employer_id >= 0
    wages = wage_base * qual_pow[employed]
    world.cash[employed] += wages
    bill = np.bincount(world.employer_id[employed], weights=wages, minlength=world.num_firms)
    world.firm_balance -= bill
    return float(bill.sum()), float(wages.sum())


def update_profit(world: World, quarter_end: bool) -> None:
    """Monthly profit = balance minus the last quarterly reference balance;
    on quarter boundaries the reference is re-snapshot after the profit."""
    world.firm_profit = world.firm_balance - world.firm_ref_balance
    if quarter_end:
        world.firm_ref_balance = world.firm_balance.copy()


def labor_decision(
    profit: float,
    cashflow: float,
    n_employees: int,
    skip_prob: float,
    stream: RunStream,
) -> str:
    """Single-firm monthly decision.

    With probability ``skip_prob`` (the labor-market frequency parameter) the
    firm skips the evaluation this month. Otherwise it posts one vacancy when
    the quarter-to-date profit or the month's net cash flow is positive, or
    when it has no employees; it fires one random employee when the profit is
    negative and the cash flow gives no relief.
    """
    if stream.uniform() < skip_prob:
        return NO_ACTION
    if profit > 0.0 or cashflow > 0.0 or n_employees == 0:
        return POST_VACANCY
    if profit < 0.0:
        return FIRE
    return NO_ACTION


def run_labor_decisions(
    world: World, skip_prob: float, stream: RunStream, prev_balance: np.ndarray
) -> np.ndarray:
    """Apply each firm's decision in firm-id order; fires clear the employee's
    employer link immediately. ``prev_balance`` is the balance at the last
    month's close, so balance - prev_balance is this month's net cash flow.
    Returns the firm ids posting a vacancy."""
    counts = world.employee_counts()
    cashflow = world.firm_balance - prev_balance
    vacancies = []
    for f in range(world.num_firms):
        action = labor_decision(
            float(world.firm_profit[f]), float(cashflow[f]), int(counts[f]), skip_prob, stream
        )
        if action == POST_VACANCY:
            vacancies.append(f)
        elif action == FIRE:
            employees = world.employees_of(f)
            victim = employees[stream.choice_index(len(employees))]
            world.employer_id[victim] = -1
    return np.asarray(vacancies, dtype=np.int64)
