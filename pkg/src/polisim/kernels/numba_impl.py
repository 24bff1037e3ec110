"""Compiled inner loops (numba nopython, no fastmath so results match the
pure-numpy implementations bit for bit). Randomness arrives pre-drawn as
uniform-double arrays; these functions are pure apart from the arrays they
mutate in place.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit


@njit(cache=True)
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
    """One month of household consumption, agents processed in id order.

    Per agent: draw a budget (0 if cash <= 0; uniform on [0, cash] below one
    cash unit, else on [0, cash**beta]), Fisher-Yates-sample ``k_sample``
    distinct firms, locate the cheapest and the closest within the sample
    (first occurrence wins ties), pick one by fair coin (u < 0.5 = cheapest),
    then buy min(budget/price, stock) units. Tax is withheld at sale time:
    tax = tau * gross, firm keeps gross - tax. Returns the month's gross sales.
    """
    n_agents = cash.shape[0]
    n_firms = firm_price.shape[0]
    idx = np.empty(n_firms, dtype=np.int64)
    gdp = 0.0
    for a in range(n_agents):
        out_firm[a] = -1
        out_gross[a] = 0.0
        out_tax[a] = 0.0
        out_qty[a] = 0.0
        out_change[a] = 0.0
        c = cash[a]
        if c <= 0.0:
            continue
        if c < 1.0:
            bound = c
        else:
            bound = math.pow(c, beta)
        budget = u_budget[a] * bound

        for i in range(n_firms):
            idx[i] = i
        best_price = np.inf
        best_price_f = -1
        best_dist = np.inf
        best_dist_f = -1
        ax = agent_x[a]
        ay = agent_y[a]
        for i in range(k_sample):
            j = i + int(u_sample[a, i] * (n_firms - i))
            tmp = idx[i]
            idx[i] = idx[j]
            idx[j] = tmp
            f = idx[i]
            p = firm_price[f]
            if p < best_price:
                best_price = p
                best_price_f = f
            dx = firm_x[f] - ax
            dy = firm_y[f] - ay
            d = math.sqrt(dx * dx + dy * dy)
            if d < best_dist:
                best_dist = d
                best_dist_f = f

        if u_coin[a] < 0.5:
            chosen = best_price_f
        else:
            chosen = best_dist_f

        if budget <= 0.0:
            continue
        stock = firm_inventory[chosen]
        if stock <= 0.0:
            continue
        price = firm_price[chosen]
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


@njit(cache=True)
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
    """Iterative vacancy/candidate matching; returns the number of hires.

    Each round removes exactly one firm and one candidate, so the number of
    rounds is min(len(vac_firms), len(cand_ids)). The firm is drawn uniformly
    from the remaining vacancies; the candidate is the most qualified or the
    closest to that firm (fair coin, u < 0.5 = qualification), ties broken by
    lower agent id. Input arrays are consumed via swap-remove.
    """
    n_v = vac_firms.shape[0]
    n_c = cand_ids.shape[0]
    m = n_v if n_v < n_c else n_c
    for t in range(m):
        j = int(u_pick[t] * n_v)
        firm = vac_firms[j]
        vac_firms[j] = vac_firms[n_v - 1]
        n_v -= 1

        best_q = -1.0
        best_q_id = -1
        best_q_j = -1
        best_d = np.inf
        best_d_id = -1
        best_d_j = -1
        fx = firm_x[firm]
        fy = firm_y[firm]
        for i in range(n_c):
            q = cand_qual[i]
            cid = cand_ids[i]
            if q > best_q or (q == best_q and cid < best_q_id):
                best_q = q
                best_q_id = cid
                best_q_j = i
            dx = cand_x[i] - fx
            dy = cand_y[i] - fy
            d = math.sqrt(dx * dx + dy * dy)
            if d < best_d or (d == best_d and cid < best_d_id):
                best_d = d
                best_d_id = cid
                best_d_j = i

        if u_coin[t] < 0.5:
            pick = best_q_j
        else:
            pick = best_d_j

        out_firm[t] = firm
        out_cand[t] = cand_ids[pick]
        last = n_c - 1
        cand_ids[pick] = cand_ids[last]
        cand_qual[pick] = cand_qual[last]
        cand_x[pick] = cand_x[last]
        cand_y[pick] = cand_y[last]
        n_c -= 1
    return m
