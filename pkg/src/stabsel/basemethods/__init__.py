"""Base variable selectors: a dataset goes in, original covariate indices
come out."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cmim import (
    cmim_select,
    conditional_mutual_information,
    discretize,
    mutual_information,
)
from .lasso import (
    ConvergenceError,
    CountSelection,
    LassoFit,
    LassoProblem,
    lasso_fit,
    lasso_lambda_for_count,
)


@dataclass(frozen=True)
class LassoSelector:
    """Lasso at the largest penalty giving exactly ``q`` nonzero coefficients.

    ``q`` is capped at ``min(N - 1, D)`` of the data it is applied to.
    """

    q: int

    def __post_init__(self):
        if self.q < 1:
            raise ValueError(f"q must be >= 1, got {self.q}")

    def __call__(self, ds):
        q = min(self.q, ds.N - 1, ds.D)
        if q < 1:
            return np.empty(0, dtype=np.intp)
        return lasso_lambda_for_count(ds, q).selected


@dataclass(frozen=True)
class CmimSelector:
    """CMIM picking ``q`` covariates, score updates stopped after ``k`` picks.

    ``q`` is capped at the number of covariates available.
    """

    q: int
    k: float = math.inf
    bins: int = 2

    def __post_init__(self):
        if self.q < 1:
            raise ValueError(f"q must be >= 1, got {self.q}")
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if self.bins < 2:
            raise ValueError(f"bins must be >= 2, got {self.bins}")

    def __call__(self, ds):
        k = None if math.isinf(self.k) else int(self.k)
        return np.asarray(cmim_select(ds, min(self.q, ds.D), k=k, bins=self.bins),
                          dtype=np.intp)


__all__ = [
    "CmimSelector",
    "ConvergenceError",
    "CountSelection",
    "LassoFit",
    "LassoProblem",
    "LassoSelector",
    "cmim_select",
    "conditional_mutual_information",
    "discretize",
    "lasso_fit",
    "lasso_lambda_for_count",
    "mutual_information",
]
