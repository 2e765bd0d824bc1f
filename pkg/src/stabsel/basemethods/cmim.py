"""Conditional mutual information maximization with plug-in estimates."""

from __future__ import annotations

import math

import numpy as np

from ..dataset import Dataset

# scores closer than this are treated as tied (lowest index wins)
TIE_TOL = 1e-12


def discretize(v, bins=2):
    """Integer codes 0..k-1 for one variable.

    Variables with at most ``bins`` distinct values keep their own
    categories; otherwise values are cut at the interior ``bins``-quantiles
    (equal-frequency bins, value based so row order does not matter).
    """
    v = np.asarray(v, dtype=float)
    uniq, codes = np.unique(v, return_inverse=True)
    if uniq.size <= bins:
        return codes.astype(np.intp)
    edges = np.quantile(v, np.arange(1, bins) / bins)
    raw = np.searchsorted(edges, v, side="right")
    _, codes = np.unique(raw, return_inverse=True)
    return codes.astype(np.intp)


def discretize_response(y, bins=2):
    """Integer-valued responses are class labels; anything else is cut at
    the median (or into ``bins`` quantile bins)."""
    y = np.asarray(y, dtype=float)
    if np.all(y == np.round(y)):
        _, codes = np.unique(y, return_inverse=True)
        return codes.astype(np.intp)
    return discretize(y, bins)


def _entropy(counts, axis, n):
    """Plug-in entropy in nats along the trailing ``axis`` tuple."""
    p = counts / n
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.where(p > 0, p * np.log(p), 0.0)
    return -t.sum(axis=axis)


def mutual_information(x, y):
    """Plug-in I(X;Y) in nats for one or many code columns.

    ``x`` is an (n,) or (n, D) integer array of codes, ``y`` an (n,) array.
    """
    x = np.asarray(x)
    single = x.ndim == 1
    X = x[:, None] if single else x
    n, d = X.shape
    kx = int(X.max()) + 1
    ky = int(y.max()) + 1
    idx = (np.arange(d)[None, :] * kx + X) * ky + y[:, None]
    counts = np.bincount(idx.ravel(), minlength=d * kx * ky).reshape(d, kx, ky)
    hx = _entropy(counts.sum(axis=2), 1, n)
    hy = _entropy(counts.sum(axis=1), 1, n)
    hxy = _entropy(counts, (1, 2), n)
    mi = np.maximum(hx + hy - hxy, 0.0)
    return float(mi[0]) if single else mi


def conditional_mutual_information(x, y, z):
    """Plug-in I(X;Y|Z) in nats, i.e. sum_z p(z) I(X;Y|Z=z).

    ``x`` is (n,) or (n, D); ``y`` and ``z`` are (n,) code arrays.
    """
    x = np.asarray(x)
    single = x.ndim == 1
    X = x[:, None] if single else x
    n, d = X.shape
    kx = int(X.max()) + 1
    ky = int(y.max()) + 1
    kz = int(z.max()) + 1
    idx = ((np.arange(d)[None, :] * kz + z[:, None]) * kx + X) * ky + y[:, None]
    counts = np.bincount(idx.ravel(), minlength=d * kz * kx * ky).reshape(d, kz, kx, ky)
    hz = _entropy(counts.sum(axis=(2, 3)), 1, n)
    hxz = _entropy(counts.sum(axis=3), (1, 2), n)
    hyz = _entropy(counts.sum(axis=2), (1, 2), n)
    hxyz = _entropy(counts, (1, 2, 3), n)
    cmi = np.maximum(hxz + hyz - hxyz - hz, 0.0)
    return float(cmi[0]) if single else cmi


def _argmax_lowest(scores, order, available):
    """Index (into ``scores``) of the best available score; near-ties go to
    the smallest ``order`` value."""
    s = np.where(available, scores, -np.inf)
    best = s.max()
    tied = np.flatnonzero(available & (s >= best - TIE_TOL))
    return int(tied[np.argmin(order[tied])])


def cmim_order(Xc, yc, q, k=None, order=None):
    """Greedy CMIM ranking on already discretized columns.

    The first pick maximizes I(X_d;Y). Later picks maximize the smallest
    I(X_d;Y|X_j) over previously picked j; once ``k`` covariates have
    been picked those scores stop being updated and the remaining picks
    follow the frozen scores. ``k=None`` means no truncation.

    Returns local column positions in pick order.
    """
    n, d = Xc.shape
    if not 1 <= q <= d:
        raise ValueError(f"need 1 <= q <= D, got q={q}, D={d}")
    if k is not None and k < 1:
        raise ValueError(f"update horizon must be >= 1, got {k}")
    if order is None:
        order = np.arange(d)
    available = np.ones(d, dtype=bool)

    mi = mutual_information(Xc, yc)
    first = _argmax_lowest(mi, order, available)
    picked = [first]
    available[first] = False
    score = np.full(d, np.inf)

    while len(picked) < q:
        if k is None or len(picked) <= k:
            cond = conditional_mutual_information(Xc, yc, Xc[:, picked[-1]])
            score = np.minimum(score, cond)
        nxt = _argmax_lowest(score, order, available)
        picked.append(nxt)
        available[nxt] = False
    return picked


def cmim_select(ds: Dataset, q: int, k=None, bins: int = 2) -> list:
    """Pick ``q`` covariates of ``ds`` by (optionally truncated) CMIM.

    Covariates with more than ``bins`` distinct values are cut into
    ``bins`` equal-frequency bins; a continuous response is split at the
    median. Returned indices are original covariate indices in pick order,
    ties resolved toward the lowest original index.
    """
    if bins < 2:
        raise ValueError("need at least 2 bins")
    if k is not None and math.isinf(k):
        k = None
    if not 1 <= q <= ds.D:
        raise ValueError(f"need 1 <= q <= D, got q={q}, D={ds.D}")
    Xc = np.column_stack([discretize(ds.X[:, j], bins) for j in range(ds.D)])
    yc = discretize_response(ds.Y)
    picked = cmim_order(Xc, yc, q, k=k, order=ds.col_index)
    return [int(ds.col_index[j]) for j in picked]
