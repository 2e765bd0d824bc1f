"""Error bounds for thresholded selection frequencies.

Each bound is a minimum over an integer cut-off ``l0``; the candidate
values are enumerated literally and evaluated in the log domain. The
helpers ``*_terms`` expose every candidate so callers can audit the
minimization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

TAU_STEP = 1e-4


@dataclass(frozen=True)
class BoundQuery:
    """Inputs of the four bounds.

    ``theta`` is the base selection-probability cutoff; for the
    equal-probability noise setting use ``theta = q / D``.
    """

    L: int
    tau: float
    theta: float

    def __post_init__(self):
        if self.L < 2:
            raise ValueError(f"L must be >= 2, got {self.L}")
        if not 0 < self.tau < 1:
            raise ValueError(f"tau must lie in (0, 1), got {self.tau}")
        if not 0 < self.theta < 1:
            raise ValueError(f"theta must lie in (0, 1), got {self.theta}")


@dataclass(frozen=True)
class BoundResult:
    value: float
    l0: int
    vacuous: bool


def kl_bernoulli(p: float, q: float) -> float:
    """Kullback-Leibler divergence D(p, q) between Bernoulli laws, in nats.

    Uses 0 * log 0 = 0, so ``p`` may be 0 or 1; ``q`` must lie in (0, 1).
    """
    if not 0 < q < 1:
        raise ValueError(f"q must lie in (0, 1), got {q}")
    if not 0 <= p <= 1:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    a = p * math.log(p / q) if p > 0 else 0.0
    b = (1 - p) * math.log((1 - p) / (1 - q)) if p < 1 else 0.0
    return a + b


def _fp_candidates(L, tau, theta, lo):
    """Terms (L - l0 + 1) / (tau L - l0 + 1) * exp(-L D(l0/L, theta)).

    Candidates with a nonpositive denominator are skipped.
    """
    out = {}
    for l0 in range(lo, math.ceil(L * tau) + 1):
        den = tau * L - l0 + 1
        if den <= 0:
            continue
        out[l0] = math.exp(math.log((L - l0 + 1) / den) - L * kl_bernoulli(l0 / L, theta))
    return out


def _fn_candidates(L, tau, theta, hi):
    """Terms (l0 + 1) / (l0 - tau L + 1) * exp(-L D(l0/L, theta))."""
    out = {}
    for l0 in range(math.floor(L * tau), hi + 1):
        den = l0 - tau * L + 1
        if den <= 0:
            continue
        out[l0] = math.exp(math.log((l0 + 1) / den) - L * kl_bernoulli(l0 / L, theta))
    return out


def fp_rate_terms(qy: BoundQuery) -> dict:
    if qy.theta >= qy.tau:
        raise ValueError("false-positive bounds need theta < tau")
    return _fp_candidates(qy.L, qy.tau, qy.theta, math.ceil(qy.L * qy.theta))


def fp_vs_base_terms(qy: BoundQuery) -> dict:
    if qy.theta >= qy.tau:
        raise ValueError("false-positive bounds need theta < tau")
    terms = _fp_candidates(qy.L, qy.tau, qy.theta, math.ceil(qy.L * qy.theta) + 1)
    return {l0: v / qy.theta for l0, v in terms.items()}


def fn_rate_terms(qy: BoundQuery) -> dict:
    if qy.tau >= qy.theta:
        raise ValueError("false-negative bounds need tau < theta")
    return _fn_candidates(qy.L, qy.tau, qy.theta, math.floor(qy.L * qy.theta))


def fn_vs_base_terms(qy: BoundQuery) -> dict:
    if qy.tau >= qy.theta:
        raise ValueError("false-negative bounds need tau < theta")
    terms = _fn_candidates(qy.L, qy.tau, qy.theta, math.floor(qy.L * qy.theta) - 1)
    return {l0: v / (1 - qy.theta) for l0, v in terms.items()}


def _minimize(terms) -> BoundResult:
    if not terms:
        raise ValueError("no admissible l0 for this query")
    l0 = min(terms, key=lambda k: (terms[k], k))
    v = terms[l0]
    return BoundResult(value=v, l0=l0, vacuous=v > 1)


def fp_rate_bound(qy: BoundQuery) -> BoundResult:
    """Expected false positives among covariates with base selection
    probability <= theta, as a fraction of those covariates (theta < tau)."""
    return _minimize(fp_rate_terms(qy))


def fp_vs_base_bound(qy: BoundQuery) -> BoundResult:
    """Expected false positives relative to those of one base call."""
    return _minimize(fp_vs_base_terms(qy))


def fn_rate_bound(qy: BoundQuery) -> BoundResult:
    """Expected missed covariates among those with base selection
    probability > theta, as a fraction of those covariates (tau < theta)."""
    return _minimize(fn_rate_terms(qy))


def fn_vs_base_bound(qy: BoundQuery) -> BoundResult:
    """Expected missed covariates relative to those missed by one base call."""
    return _minimize(fn_vs_base_terms(qy))


def corollary1_efp(L: int, tau: float, q: float, D: int, n_noise: int) -> float:
    """Bound on the expected number of selected noise covariates when all
    noise covariates share one base selection probability and the base
    method picks ``q`` of ``D`` covariates on average."""
    if not tau > q / D:
        raise ValueError(f"need tau > q/D = {q / D}, got tau={tau}")
    return n_noise * fp_rate_bound(BoundQuery(L=L, tau=tau, theta=q / D)).value


def efp_closed_form(L: int, tau: float, q: float, D: int, n_noise: int) -> float:
    """Closed form with l0 = tau L, valid when tau L is an integer."""
    m = tau * L
    if abs(m - round(m)) > 1e-9:
        raise ValueError(f"tau * L must be an integer, got {m}")
    if not tau > q / D:
        raise ValueError(f"need tau > q/D = {q / D}, got tau={tau}")
    return n_noise * (L * (1 - tau) + 1) * math.exp(-L * kl_bernoulli(tau, q / D))


def tau_grid(q: float, D: int) -> np.ndarray:
    j = np.arange(1, int(math.ceil((1 - q / D) / TAU_STEP)) + 1)
    taus = q / D + j * TAU_STEP
    return taus[taus < 1]


def tau_min(L: int, q: float, D: int, n_noise: int, target_efp: float = 1.0):
    """Smallest grid threshold ``q/D + j * 1e-4`` whose false-positive bound
    is at most ``target_efp``; None when no grid threshold qualifies.

    The bound is non-increasing in tau, so the grid is bisected.
    """
    if target_efp <= 0:
        raise ValueError("target must be positive")
    taus = tau_grid(q, D)
    if taus.size == 0:
        return None

    def ok(i):
        return corollary1_efp(L, float(taus[i]), q, D, n_noise) <= target_efp

    if not ok(taus.size - 1):
        return None
    lo, hi = -1, taus.size - 1  # ok(hi) holds, lo is "not known ok"
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if ok(mid):
            hi = mid
        else:
            lo = mid
    return float(taus[hi])


def tau_min_scan(L: int, q: float, D: int, n_noise: int, target_efp: float = 1.0):
    """Linear-scan version of :func:`tau_min`, for checking the bisection."""
    for t in tau_grid(q, D):
        if corollary1_efp(L, float(t), q, D, n_noise) <= target_efp:
            return float(t)
    return None
