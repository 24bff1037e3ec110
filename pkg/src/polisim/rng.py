"""Single deterministic randomness source for a run.

Every stochastic decision in the simulator draws from one :class:`RunStream`,
a thin wrapper over numpy's PCG64 bit generator. All derived quantities
(integers, choices, partial shuffles) are computed from uniform doubles in
[0, 1), so the number of doubles consumed is an exact, countable measure of
randomness use (``RunStream.draws``); replaying a run with the same seed and
parameters consumes the same count and yields the same results.

Per-run streams for batch execution come from
``PCG64(SeedSequence((base_seed, run_index)))`` - a pure function of the pair,
with SeedSequence's entropy mixing keeping adjacent run indices statistically
independent. The algorithm identifier is recorded in every output metadata
header (see :data:`polisim.config.RNG_ALGORITHM`).

Integer derivation is ``floor(u * n)``, adequate for the small ranges used
here (all well below 2**32); not suitable for cryptography.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np


class RunStream:
    """Deterministic uniform-double stream with a draw counter."""

    __slots__ = ("_gen", "draws")

    def __init__(self, bit_generator: np.random.BitGenerator):
        self._gen = np.random.Generator(bit_generator)
        self.draws = 0

    def uniform(self) -> float:
        """One double in [0, 1)."""
        self.draws += 1
        return float(self._gen.random())

    def uniforms(self, n: int) -> np.ndarray:
        """``n`` doubles in [0, 1)."""
        self.draws += int(n)
        return self._gen.random(int(n))

    def uniform_in(self, low: float, high: float) -> float:
        return low + self.uniform() * (high - low)

    def int_in(self, low: int, high: int) -> int:
        """Uniform integer in [low, high], both inclusive."""
        return low + int(self.uniform() * (high - low + 1))

    def choice_index(self, n: int) -> int:
        """Uniform index in [0, n)."""
        if n <= 0:
            raise ValueError("choice from empty range")
        return int(self.uniform() * n)

    def partial_shuffle(self, n: int, k: int) -> np.ndarray:
        """First ``k`` entries of a Fisher-Yates shuffle of ``range(n)``.

        Returns ``k`` distinct indices, uniformly chosen, in random order;
        consumes exactly ``k`` draws.
        """
        if not 0 <= k <= n:
            raise ValueError(f"cannot sample {k} of {n}")
        idx = np.arange(n, dtype=np.int64)
        u = self.uniforms(k)
        for i in range(k):
            j = i + int(u[i] * (n - i))
            idx[i], idx[j] = idx[j], idx[i]
        return idx[:k]


def derive_run_stream(base_seed: int, run_index: int) -> RunStream:
    """Independent, reproducible stream for run ``run_index`` of a batch."""
    if run_index < 0:
        raise ValueError("run_index must be non-negative")
    seq = np.random.SeedSequence((int(base_seed), int(run_index)))
    return RunStream(np.random.PCG64(seq))


def sample_fraction(stream: RunStream, items: Sequence, share: float) -> list:
    """``round(share * len(items))`` distinct items, uniform, random order.

    Fractional sizes use round-half-to-even, so the expected sample size is
    unbiased across parameter grids.
    """
    if not 0.0 <= share <= 1.0:
        raise ValueError(f"share must be in [0, 1], got {share}")
    n = len(items)
    k = round(share * n)
    picked = stream.partial_shuffle(n, k)
    return [items[int(i)] for i in picked]
