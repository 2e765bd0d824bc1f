"""L1-penalized least squares by coordinate descent, and the exact-count
regularization search used to make the base selector pick q covariates."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..dataset import Dataset
from . import _cd


class ConvergenceError(RuntimeError):
    """Coordinate descent hit the sweep limit before meeting the KKT tolerance."""

    def __init__(self, message, residual):
        super().__init__(message)
        self.residual = residual


@dataclass(frozen=True)
class LassoFit:
    """Solution of ``||y - X b||^2 + lambda_ * ||b||_1`` on standardized data.

    ``coef`` lives on the standardized scale (centered, unit-norm columns),
    ``beta``/``intercept`` map it back to the original columns.
    ``objective`` and ``kkt_residual`` refer to the standardized problem.
    """

    beta: np.ndarray
    intercept: float
    coef: np.ndarray
    lambda_: float
    lambda_max: float
    objective: float
    kkt_residual: float
    sweeps: int
    history: np.ndarray = None

    @property
    def support(self) -> np.ndarray:
        return np.flatnonzero(self.coef)


class LassoProblem:
    """Standardized copy of a dataset, reusable across many penalty values."""

    def __init__(self, ds: Dataset):
        X = ds.X
        self.ds = ds
        self.x_mean = X.mean(axis=0)
        Xc = X - self.x_mean
        norms = np.sqrt((Xc * Xc).sum(axis=0))
        # columns constant up to rounding carry no signal
        self.usable = norms > 1e-12 * max(1.0, float(np.abs(X).max()))
        self.scale = np.where(self.usable, norms, 1.0)
        Xs = Xc / self.scale
        Xs[:, ~self.usable] = 0.0
        self.Xs = np.asfortranarray(Xs)
        self.XsT = np.ascontiguousarray(Xs.T)
        self.y_mean = float(ds.Y.mean())
        self.yc = ds.Y - self.y_mean
        self.lambda_max = float(np.max(np.abs(2.0 * (self.XsT @ self.yc))))
        self._gram_cache = {}
        self._last = None

    def _gram(self, ws):
        key = ws.tobytes()
        hit = self._gram_cache.get(key)
        if hit is None:
            XW = self.Xs[:, ws]
            hit = (XW, XW.T @ XW)
            if len(self._gram_cache) > 64:
                self._gram_cache.clear()
            self._gram_cache[key] = hit
        return hit

    @property
    def n_features(self):
        return self.Xs.shape[1]

    def fit(self, lam, beta0=None, tol=1e-6, max_sweeps=10000,
            record_history=False, chunk=50) -> LassoFit:
        """Solve at penalty ``lam``, optionally warm-started from ``beta0``.

        Working-set scheme: the current support plus every KKT violator is
        solved by coordinate descent on its Gram matrix, then the full
        gradient is rechecked.
        """
        if lam < 0:
            raise ValueError(f"penalty must be nonnegative, got {lam}")
        lam = float(lam)
        p = self.n_features
        beta = np.zeros(p) if beta0 is None else np.array(beta0, dtype=float)
        beta[~self.usable] = 0.0
        act = np.flatnonzero(beta)
        r = self.yc - self.Xs[:, act] @ beta[act]
        grad = None
        if self._last is not None and np.array_equal(self._last[0], beta):
            r, grad = self._last[1], self._last[2]
        abs_tol = tol * self.lambda_max
        history = [float(r @ r + lam * np.abs(beta).sum())] if record_history else None
        sweeps = 0
        while True:
            if grad is None:
                grad = 2.0 * (self.XsT @ r)
            kkt = _cd.kkt_residual(grad, beta, self.usable, lam)
            if kkt <= abs_tol or sweeps >= max_sweeps:
                break
            ws = np.flatnonzero((beta != 0) | (self.usable & (np.abs(grad) > lam)))
            XW, G = self._gram(ws)
            c = 0.5 * grad[ws]
            b = beta[ws]
            rss = float(r @ r)
            while sweeps < max_sweeps:
                budget = min(chunk, max_sweeps - sweeps)
                hist = np.empty(budget) if record_history else _EMPTY
                done, kw, rss = _cd.gram_cd(G, c, b, lam, 0.5 * abs_tol,
                                            budget, rss, hist)
                sweeps += done
                if record_history:
                    history.extend(hist[:done].tolist())
                if kw <= 0.5 * abs_tol:
                    break
                step = _sign_step(G, XW, self.yc, b, lam, rss)
                if step is not None:
                    b, c, rss = step
                    if record_history:
                        history.append(rss + lam * float(np.abs(b).sum()))
            beta[ws] = b
            r = self.yc - XW @ b
            grad = None
        if kkt > abs_tol:
            raise ConvergenceError(
                f"no convergence after {sweeps} sweeps (KKT residual {kkt:.3e}, "
                f"tolerance {abs_tol:.3e})", kkt)
        coef = beta
        self._last = (coef.copy(), r, grad)
        beta_orig = coef / self.scale
        return LassoFit(
            beta=beta_orig,
            intercept=self.y_mean - float(self.x_mean @ beta_orig),
            coef=coef,
            lambda_=lam,
            lambda_max=self.lambda_max,
            objective=float(r @ r + lam * np.abs(coef).sum()),
            kkt_residual=max(kkt, 0.0),
            sweeps=int(sweeps),
            history=np.array(history) if record_history else None,
        )


_EMPTY = np.empty(0)


def _sign_step(G, XW, y, b, lam, rss):
    """Exact minimizer over the current support and sign pattern.

    Accepted only if every coefficient keeps its sign and the objective does
    not increase; the new point then minimizes the objective over a face
    that contains ``b``.
    """
    act = np.flatnonzero(b)
    if act.size == 0:
        return None
    s = np.sign(b[act])
    XA = XW[:, act]
    try:
        bA = np.linalg.solve(G[np.ix_(act, act)], XA.T @ y - 0.5 * lam * s)
    except np.linalg.LinAlgError:
        return None
    if not np.all(np.sign(bA) == s):
        return None
    r = y - XA @ bA
    new_rss = float(r @ r)
    if new_rss + lam * np.abs(bA).sum() > rss + lam * np.abs(b).sum():
        return None
    nb = np.zeros_like(b)
    nb[act] = bA
    return nb, XW.T @ r, new_rss


def lasso_fit(ds: Dataset, lambda_: float, *, tol=1e-6, max_sweeps=10000,
              record_history=False) -> LassoFit:
    """Fit the Lasso at one penalty value.

    Columns are centered and scaled to unit Euclidean norm and the
    response is centered before solving; convergence requires the KKT
    residual to drop to ``tol * lambda_max``.
    """
    return LassoProblem(ds).fit(lambda_, tol=tol, max_sweeps=max_sweeps,
                                record_history=record_history)


@dataclass(frozen=True)
class CountSelection:
    """Largest penalty found with exactly ``q`` nonzero coefficients.

    When no such penalty exists ``exact`` is False and the fit with the
    largest support size below ``q`` is returned instead.
    """

    lambda_: float
    selected: np.ndarray
    exact: bool
    fit: LassoFit

    def __iter__(self):
        return iter((self.lambda_, self.selected))


def lambda_grid(lambda_max, n_grid=400, ratio=1e-4):
    return lambda_max * np.geomspace(1.0, ratio, n_grid)


def lasso_lambda_for_count(ds: Dataset, q: int, *, n_grid=400, ratio=1e-4,
                           tol=1e-6, max_bisect=60, bracket_rtol=1e-4,
                           problem=None) -> CountSelection:
    """Find the largest penalty whose fit selects exactly ``q`` covariates.

    The geometric grid from ``lambda_max`` down to ``ratio * lambda_max`` is
    walked with warm starts until the support size first reaches ``q``;
    the bracket between that grid point and its predecessor is then
    bisected until it is ``bracket_rtol`` wide in relative terms. Stopping
    short of the knot keeps the q-th coefficient well above the solver
    tolerance, so a refit at the returned penalty recovers the same support.
    Selected indices are reported via ``ds.col_index``.
    """
    if not 1 <= q <= min(ds.N - 1, ds.D):
        raise ValueError(f"q must lie in [1, min(N-1, D)] = [1, {min(ds.N - 1, ds.D)}], got {q}")
    prob = problem if problem is not None else LassoProblem(ds)

    # best fallback: largest support size below q, ties to the larger penalty
    fallback = None

    def note(fit):
        nonlocal fallback
        c = len(fit.support)
        if c < q and (fallback is None or c > len(fallback.support)):
            fallback = fit

    grid = lambda_grid(prob.lambda_max, n_grid, ratio)
    prev = None
    beta = None
    hit = None
    for lam in grid:
        fit = prob.fit(lam, beta0=beta, tol=_tol(tol, lam, prob))
        beta = fit.coef
        c = len(fit.support)
        note(fit)
        if c >= q:
            hit = fit
            break
        prev = fit

    if hit is None:
        return _finish(prob, fallback, exact=False)

    if prev is None:
        # support already q at lambda_max itself; cannot happen for q >= 1
        lo, hi = hit, None
    else:
        lo, hi = hit, prev
    found = lo if len(lo.support) == q else None

    # invariant: hi has count < q (or != q once found), lo sits at a smaller penalty
    if hi is not None:
        for _ in range(max_bisect):
            if hi.lambda_ - lo.lambda_ <= bracket_rtol * hi.lambda_:
                break
            mid = 0.5 * (lo.lambda_ + hi.lambda_)
            fit = prob.fit(mid, beta0=lo.coef, tol=_tol(tol, mid, prob))
            c = len(fit.support)
            note(fit)
            if c == q:
                found = fit
                lo = fit
            elif found is not None:
                hi = fit
            elif c > q:
                lo = fit
            else:
                hi = fit

    if found is None:
        return _finish(prob, fallback, exact=False)
    return _finish(prob, found, exact=True)


def _tol(tol, lam, prob):
    # supports are decided near a knot, where coefficients are of order
    # lam * bracket_rtol; solve to a tolerance relative to lam, not lambda_max
    return tol * min(1.0, lam / prob.lambda_max)


def _finish(prob, fit, exact):
    if fit is None:
        fit = prob.fit(prob.lambda_max)
    return CountSelection(
        lambda_=fit.lambda_,
        selected=prob.ds.col_index[fit.support],
        exact=exact,
        fit=fit,
    )
