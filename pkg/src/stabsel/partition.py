"""Random disjoint observation subsamples and covariate subsets."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class PartitionPlan:
    """Index sets for one iteration.

    ``subsamples`` are L disjoint row sets of size ``N // L`` (the
    remainder rows are unused); ``subsets`` partition all D columns into V
    groups whose sizes differ by at most one. Every index set is sorted.
    """

    subsamples: tuple
    subsets: tuple
    iteration: int = 0


def draw_plan(N: int, D: int, L: int, V: int, rng: np.random.Generator,
              iteration: int = 0) -> PartitionPlan:
    """Shuffle rows and columns, then cut them into consecutive blocks."""
    if not 1 <= L <= N:
        raise ValueError(f"need 1 <= L <= N, got L={L}, N={N}")
    if not 1 <= V <= D:
        raise ValueError(f"need 1 <= V <= D, got V={V}, D={D}")

    m = N // L
    rows = rng.permutation(N)
    subsamples = tuple(np.sort(rows[i * m:(i + 1) * m]) for i in range(L))

    cols = rng.permutation(D)
    base, extra = divmod(D, V)
    # the first D mod V subsets carry one extra column
    bounds = np.cumsum([0] + [base + 1 if j < extra else base for j in range(V)])
    subsets = tuple(np.sort(cols[bounds[j]:bounds[j + 1]]) for j in range(V))

    for arr in subsamples + subsets:
        arr.flags.writeable = False
    return PartitionPlan(subsamples=subsamples, subsets=subsets, iteration=iteration)
