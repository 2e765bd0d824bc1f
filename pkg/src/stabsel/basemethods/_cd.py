"""Compiled coordinate-descent kernel for the penalized least-squares problem

    minimize ||y - X b||^2 + lam * ||b||_1

restricted to a working set of unit-norm columns, expressed through their
Gram matrix so one coordinate update costs O(|W|) rather than O(N).
"""

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def gram_cd(G, c, b, lam, tol, max_sweeps, rss, hist):
    """Cyclic coordinate descent on a working set, in place on ``b``.

    ``G`` is the working-set Gram matrix (unit diagonal), ``c`` holds
    ``X_W^T r`` for the current residual and is kept in sync with ``b``.
    Stops once the KKT residual on the set is at most ``tol`` or after
    ``max_sweeps`` sweeps. ``rss`` is the current residual sum of squares;
    when ``hist`` is non-empty the objective after each sweep is stored.

    Returns (sweeps, kkt, rss).
    """
    m = b.shape[0]
    half = 0.5 * lam
    nh = hist.shape[0]
    sweeps = 0
    kkt = _kkt(c, b, lam)
    while kkt > tol and sweeps < max_sweeps:
        for j in range(m):
            z = b[j] + c[j]
            if z > half:
                nb = z - half
            elif z < -half:
                nb = z + half
            else:
                nb = 0.0
            d = nb - b[j]
            if d != 0.0:
                # ||r - d x_j||^2 with ||x_j|| = 1
                rss += d * d - 2.0 * d * c[j]
                b[j] = nb
                for k in range(m):
                    c[k] -= d * G[k, j]
        if sweeps < nh:
            a = 0.0
            for j in range(m):
                a += abs(b[j])
            hist[sweeps] = rss + lam * a
        sweeps += 1
        kkt = _kkt(c, b, lam)
    return sweeps, kkt, rss


@njit(cache=True, nogil=True)
def _kkt(c, b, lam):
    worst = 0.0
    for j in range(b.shape[0]):
        g = 2.0 * c[j]
        if b[j] > 0.0:
            v = abs(g - lam)
        elif b[j] < 0.0:
            v = abs(g + lam)
        else:
            v = abs(g) - lam
        if v > worst:
            worst = v
    return worst


def kkt_residual(grad, beta, usable, lam):
    """Largest subgradient violation given ``grad = 2 X^T r``."""
    g = grad[usable]
    b = beta[usable]
    v = np.where(b > 0, np.abs(g - lam),
                 np.where(b < 0, np.abs(g + lam), np.abs(g) - lam))
    return float(v.max()) if v.size else 0.0
