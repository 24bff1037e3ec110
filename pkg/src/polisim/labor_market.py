"""Public vacancy board and the iterative firm-candidate matching round."""

from __future__ import annotations

import numpy as np

from . import kernels
from .rng import RunStream
from .worldgen import World

WORKING_AGE_MIN = 17
WORKING_AGE_MAX = 70


def register_candidates(world: World) -> np.ndarray:
    """Unemployed agents inside the working-age window, ascending id."""
    eligible = (
        (world.employer_id < 0)
        & (world.age >= WORKING_AGE_MIN)
        & (world.age <= WORKING_AGE_MAX)
    )
    return np.nonzero(eligible)[0].astype(np.int64)


def run_matching(
    world: World,
    vacancy_firms: np.ndarray,
    candidates: np.ndarray,
    stream: RunStream,
    u_pick: np.ndarray | None = None,
    u_coin: np.ndarray | None = None,
) -> list[tuple[int, int]]:
    """Match vacancies to candidates and set the employment links.

    Runs exactly min(vacancies, candidates) rounds. Each round draws one
    uniform to pick the firm and one for the qualification-vs-proximity coin;
    tests may inject ``u_pick``/``u_coin`` directly to force branches.
    Candidates' locations are their family dwellings; a homeless family would
    be a corrupted world and is rejected.
    """
    m = min(len(vacancy_firms), len(candidates))
    if m == 0:
        return []
    fam = world.family_id[candidates]
    dw = world.fam_dwelling[fam]
    if np.any(dw < 0):
        raise ValueError("candidate without a dwelling: world state corrupted")

    if u_pick is None:
        u_pick = stream.uniforms(m)
    if u_coin is None:
        u_coin = stream.uniforms(m)

    vac = np.array(vacancy_firms, dtype=np.int64)
    cand_ids = np.array(candidates, dtype=np.int64)
    cand_qual = world.qual[candidates].astype(np.float64)
    cand_x = world.dw_x[dw].copy()
    cand_y = world.dw_y[dw].copy()
    out_firm = np.empty(m, dtype=np.int64)
    out_cand = np.empty(m, dtype=np.int64)

    kernels.match_labor(
        vac, cand_ids, cand_qual, cand_x, cand_y,
        world.firm_x, world.firm_y, u_pick, u_coin, out_firm, out_cand,
    )

    world.employer_id[out_cand] = out_firm.astype(np.int32)
    return list(zip(out_firm.tolist(), out_cand.tolist()))
