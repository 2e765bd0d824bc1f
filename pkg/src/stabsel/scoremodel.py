"""Monte-Carlo study of picking the largest of D noisy scores.

Each covariate has a true score Q_d and an observed score Q_d + eps_d; the
base step returns the argmax of the observed scores. With heavy-tailed
noise the chance that the winner is uninformative first falls and then
climbs back toward the uninformative fraction as D grows, so a finite
subset size D_opt minimizes the error.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

DEFAULT_DIMS = (1, 2, 5, 10, 20, 50, 100, 200, 500, 1000, 2000, 5000, 10000)
NOISE_LAWS = ("gaussian", "cauchy", "t3", "t5", "t10")

# draws per block; bounds memory at block * D doubles
_BLOCK_ELEMENTS = 2_000_000


def two_bernoulli(rng, size, p=0.1):
    """Scores equal to 2 with probability ``p``, else 0."""
    return 2.0 * (rng.random(size) < p)


def draw_noise(law, rng, size, scale=1.0):
    if law == "gaussian":
        e = rng.standard_normal(size)
    elif law == "cauchy":
        e = rng.standard_cauchy(size)
    elif law.startswith("t") and law[1:].isdigit():
        e = rng.standard_t(int(law[1:]), size)
    else:
        raise ValueError(f"unknown noise law {law!r}; expected one of {NOISE_LAWS}")
    return scale * e


@dataclass(frozen=True)
class ScoreModelConfig:
    """Simulation settings.

    ``score_law(rng, size)`` draws true scores; covariates with true score
    ``<= theta`` count as uninformative. Student-t noise is used unscaled.
    """

    noise_law: str = "gaussian"
    dims: tuple = DEFAULT_DIMS
    trials: int = 10000
    seed: int = 0
    theta: float = 0.0
    noise_scale: float = 1.0
    score_law: object = field(default=two_bernoulli)

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if len(self.dims) == 0 or min(self.dims) < 1:
            raise ValueError("dims must be a nonempty list of positive integers")
        if self.noise_law not in NOISE_LAWS:
            draw_noise(self.noise_law, np.random.default_rng(0), 1)


@dataclass(frozen=True)
class ErrorCurve:
    """Per-D error frequency of the argmax rule.

    ``blind_rate`` is the average fraction of uninformative scores among
    the D drawn, i.e. the error of picking a covariate blindly.
    """

    noise_law: str
    dims: np.ndarray
    frequency: np.ndarray
    blind_rate: np.ndarray
    trials: int

    def stderr(self) -> np.ndarray:
        f = self.frequency
        return np.sqrt(f * (1 - f) / self.trials)

    def rows(self):
        for d, f in zip(self.dims, self.frequency):
            yield self.noise_law, int(d), float(f)


def _simulate(cfg, D, ss):
    """Error count and summed uninformative fraction over all trials at D."""
    block = max(1, _BLOCK_ELEMENTS // D)
    starts = range(0, cfg.trials, block)
    errors = 0
    blind = 0.0
    for start, child in zip(starts, ss.spawn(len(starts))):
        m = min(block, cfg.trials - start)
        rng = np.random.default_rng(child)
        q = cfg.score_law(rng, (m, D))
        observed = q + draw_noise(cfg.noise_law, rng, (m, D), cfg.noise_scale)
        winner = np.argmax(observed, axis=1)  # first maximum on ties
        uninformative = q <= cfg.theta
        errors += int(uninformative[np.arange(m), winner].sum())
        blind += float(uninformative.mean(axis=1).sum())
    return errors, blind


def error_frequency(cfg: ScoreModelConfig) -> ErrorCurve:
    """Fraction of trials in which the largest observed score belongs to an
    uninformative covariate, for each D in ``cfg.dims``.

    Every (D, block) pair draws from its own child seed of ``cfg.seed``,
    so the table is reproducible and independent of evaluation order.
    """
    dims = np.asarray(cfg.dims, dtype=int)
    root = np.random.SeedSequence(cfg.seed)
    freq = np.empty(dims.size)
    blind = np.empty(dims.size)
    for i, (D, ss) in enumerate(zip(dims, root.spawn(dims.size))):
        e, b = _simulate(cfg, int(D), ss)
        freq[i] = e / cfg.trials
        blind[i] = b / cfg.trials
    return ErrorCurve(cfg.noise_law, dims, freq, blind, cfg.trials)


def optimal_subset_size(cfg: ScoreModelConfig, curve: ErrorCurve = None):
    """(D_opt, frequency): the swept D with the smallest error frequency.

    Ties go to the largest D.
    """
    if curve is None:
        curve = error_frequency(cfg)
    f = curve.frequency
    best = np.flatnonzero(f == f.min())[-1]
    return int(curve.dims[best]), float(f[best])
