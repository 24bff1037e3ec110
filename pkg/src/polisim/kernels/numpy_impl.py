"""Pure-numpy versions of the compiled kernels.

Semantics (and floating-point results) are identical to the numba
implementations: the firm sampling is the same index arithmetic run as
vectorized swap steps, distances are the same sqrt(dx*dx + dy*dy), argmins
keep the first occurrence exactly like the kernels' strict-< scans, and the
sequential parts (stock contention, swap-remove matching) run the same
scalar arithmetic via math.* calls. Used when numba is unavailable or when
POLISIM_BACKEND=numpy.
"""

from __future__ import annotations

import math

import numpy as np


def goods_market_month(
    cash,
    utility,
    agent_x,
    agent_y,
    firm_x,
    firm_y,
    firm_price,
    firm_inventory,
    firm_balance,
    firm_sold_cum,
    firm_region,
    region_treasury,
    beta,
    tau,
    k_sample,
    u_budget,
    u_sample,
    u_coin,
    out_firm,
    out_gross,
    out_tax,
    out_qty,
    out_change,
):
    n_agents = cash.shape[0]
    n_firms = firm_price.shape[0]
    rows = np.arange(n_agents)

    # Fisher-Yates sample, step i vectorized across agents
    sample = np.broadcast_to(np.arange(n_firms, dtype=np.int64), (n_agents, n_firms)).copy()
    for i in range(k_sample):
        j = i + (u_sample[:, i] * (n_firms - i)).astype(np.int64)
        col_i = sample[rows, i].copy()
        sample[rows, i] = sample[rows, j]
        sample[rows, j] = col_i
    sample = sample[:, :k_sample]

    prices = firm_price[sample]
    dx = firm_x[sample] - agent_x[:, None]
    dy = firm_y[sample] - agent_y[:, None]
    dist = np.sqrt(dx * dx + dy * dy)
    cheapest = sample[rows, np.argmin(prices, axis=1)]
    closest = sample[rows, np.argmin(dist, axis=1)]
    chosen_all = np.where(u_coin < 0.5, cheapest, closest)

    out_firm[:] = -1
    out_gross[:] = 0.0
    out_tax[:] = 0.0
    out_qty[:] = 0.0
    out_change[:] = 0.0

    gdp = 0.0
    for a in range(n_agents):
        c = float(cash[a])
        if c <= 0.0:
            continue
        bound = c if c < 1.0 else math.pow(c, beta)
        budget = float(u_budget[a]) * bound
        if budget <= 0.0:
            continue
        chosen = int(chosen_all[a])
        stock = float(firm_inventory[chosen])
        if stock <= 0.0:
            continue
        price = float(firm_price[chosen])
        desired = budget / price
        sold = desired if desired <= stock else stock
        gross = sold * price
        tax = gross * tau
        firm_inventory[chosen] = stock - sold
        cash[a] = c - gross
        firm_balance[chosen] += gross - tax
        region_treasury[firm_region[chosen]] += tax
        firm_sold_cum[chosen] += gross
        utility[a] += gross
        gdp += gross
        out_firm[a] = chosen
        out_gross[a] = gross
        out_tax[a] = tax
        out_qty[a] = sold
        out_change[a] = budget - gross
    return gdp


def match_labor(
    vac_firms,
    cand_ids,
    cand_qual,
    cand_x,
    cand_y,
    firm_x,
    firm_y,
    u_pick,
    u_coin,
    out_firm,
    out_cand,
):
    n_v = vac_firms.shape[0]
    n_c = cand_ids.shape[0]
    m = min(n_v, n_c)
    for t in range(m):
        j = int(u_pick[t] * n_v)
        firm = int(vac_firms[j])
        vac_firms[j] = vac_firms[n_v - 1]
        n_v -= 1

        ids = cand_ids[:n_c]
        # max qualification then min id; stable lexsort = the kernel's scan
        best_q_j = int(np.lexsort((ids, -cand_qual[:n_c]))[0])
        fx = float(firm_x[firm])
        fy = float(firm_y[firm])
        ddx = cand_x[:n_c] - fx
        ddy = cand_y[:n_c] - fy
        d = np.sqrt(ddx * ddx + ddy * ddy)
        best_d_j = int(np.lexsort((ids, d))[0])

        pick = best_q_j if u_coin[t] < 0.5 else best_d_j

        out_firm[t] = firm
        out_cand[t] = cand_ids[pick]
        last = n_c - 1
        cand_ids[pick] = cand_ids[last]
        cand_qual[pick] = cand_qual[last]
        cand_x[pick] = cand_x[last]
        cand_y[pick] = cand_y[last]
        n_c -= 1
    return m
