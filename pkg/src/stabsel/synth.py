"""Synthetic sparse linear-model benchmarks.

Designs: block-correlated, Toeplitz, Toeplitz with clustered informative
covariates, latent-factor, and correlated-informative/independent-noise.
The response is ``Y = X beta + eps`` with the noise rescaled so that the
empirical signal-to-noise ratio Var(X beta) / Var(eps) hits the target.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .dataset import Dataset, GroundTruth

DESIGNS = ("four_blocks", "toeplitz", "toeplitz_grouped", "ten_factors",
           "correlated_informative")


@dataclass(frozen=True)
class DesignSpec:
    """One synthetic setting.

    ``noise`` is "gaussian" or "t<df>" (e.g. "t3"); Student noise with
    df > 2 is standardized to unit variance before scaling.
    ``informative`` fixes the support for the correlated-informative
    covariance; otherwise supports are drawn at random.
    """

    kind: str = "toeplitz"
    N: int = 500
    D: int = 1000
    n_informative: int = 20
    snr: float = 2.0
    noise: str = "gaussian"
    seed: int = 0
    rho: float = 0.99
    informative: tuple = None

    def __post_init__(self):
        if self.kind not in DESIGNS:
            raise ValueError(f"unknown design {self.kind!r}; expected one of {DESIGNS}")
        if self.N < 1 or self.D < 1:
            raise ValueError("N and D must be positive")
        if not 0 <= self.n_informative <= self.D:
            raise ValueError("n_informative must lie in [0, D]")
        if not self.snr > 0:
            raise ValueError("snr must be positive")
        _noise_df(self.noise)


def _noise_df(noise):
    if noise == "gaussian":
        return None
    if noise.startswith("t") and noise[1:].replace(".", "", 1).isdigit():
        return float(noise[1:])
    raise ValueError(f"unknown noise {noise!r}; use 'gaussian' or 't<df>'")


def covariance(spec: DesignSpec, informative=None) -> np.ndarray:
    """Population covariance of the Gaussian designs (unit diagonal).

    Toeplitz: ``rho ** |i - j|``; four blocks: 0.8 between distinct
    covariates whose indices agree mod 4; correlated informative: 0.9
    between distinct informative covariates, 0 elsewhere.
    """
    D = spec.D
    idx = np.arange(D)
    if spec.kind in ("toeplitz", "toeplitz_grouped"):
        S = spec.rho ** np.abs(idx[:, None] - idx[None, :]).astype(float)
    elif spec.kind == "four_blocks":
        S = np.where((idx[:, None] - idx[None, :]) % 4 == 0, 0.8, 0.0)
    elif spec.kind == "correlated_informative":
        if informative is None:
            informative = spec.informative or ()
        inf = np.zeros(D, dtype=bool)
        inf[list(informative)] = True
        S = np.where(inf[:, None] & inf[None, :], 0.9, 0.0)
    else:
        raise ValueError(f"{spec.kind} has no closed-form covariance here")
    np.fill_diagonal(S, 1.0)
    w = np.linalg.eigvalsh(S)
    if w[0] < -1e-8 * w[-1]:
        raise RuntimeError(f"covariance is not positive semidefinite (min eigenvalue {w[0]})")
    return S


def _factor(S):
    """A with A A^T = S via eigendecomposition; small negative eigenvalues clipped."""
    w, U = np.linalg.eigh(S)
    return U * np.sqrt(np.clip(w, 0.0, None))


def _support(spec, rng):
    if spec.kind == "toeplitz_grouped":
        if spec.n_informative != 20:
            raise ValueError("toeplitz_grouped needs exactly 20 informative covariates")
        if spec.D < 520:
            raise ValueError("toeplitz_grouped needs D >= 520")
        # 5 groups of 4, drawn without replacement from [100g - 20, 100g + 20]
        groups = [rng.choice(np.arange(100 * g - 20, 100 * g + 21), 4, replace=False)
                  for g in range(1, 6)]
        return np.sort(np.concatenate(groups))
    if spec.informative is not None:
        sup = np.asarray(spec.informative, dtype=int)
        if sup.size != spec.n_informative:
            raise ValueError("len(informative) must equal n_informative")
        return np.sort(sup)
    return np.sort(rng.choice(spec.D, spec.n_informative, replace=False))


def _draw_X(spec, support, rng):
    N, D = spec.N, spec.D
    if spec.kind == "ten_factors":
        loadings = rng.standard_normal((D, 10))
        factors = rng.standard_normal((N, 10))
        return factors @ loadings.T + rng.standard_normal((N, D))
    A = _factor(covariance(spec, informative=support))
    return rng.standard_normal((N, D)) @ A.T


def _unit_noise(spec, rng):
    df = _noise_df(spec.noise)
    if df is None:
        return rng.standard_normal(spec.N)
    e = rng.standard_t(df, spec.N)
    if df > 2:
        e = e / np.sqrt(df / (df - 2))
    return e


def draw_design(spec: DesignSpec):
    """Draw (Dataset, GroundTruth) for ``spec``; deterministic in ``spec.seed``.

    Coefficients on the support are U[0, 1]. The noise vector is scaled by
    ``sqrt(var(X beta) / (snr * var(noise)))`` using sample variances, so
    the realized ratio equals ``snr``.
    """
    rng = np.random.default_rng(spec.seed)
    support = _support(spec, rng)
    beta = np.zeros(spec.D)
    beta[support] = rng.uniform(0.0, 1.0, support.size)
    X = _draw_X(spec, support, rng)
    signal = X @ beta
    eps = _unit_noise(spec, rng)
    var_s = signal.var()
    var_e = eps.var()
    if var_s > 0 and var_e > 0:
        eps = eps * np.sqrt(var_s / (spec.snr * var_e))
    Y = signal + eps
    return Dataset(X=X, Y=Y), GroundTruth(beta=beta)


def write_ground_truth(truth: GroundTruth, path) -> None:
    """CSV with one ``index,beta`` row per covariate."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["index", "beta"])
        for i, b in enumerate(truth.beta):
            w.writerow([i, repr(float(b))])


def read_ground_truth(path) -> GroundTruth:
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    beta = np.zeros(len(rows))
    for r in rows:
        beta[int(r["index"])] = float(r["beta"])
    return GroundTruth(beta=beta)
