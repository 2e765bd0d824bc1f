"""Extended stability selection: repeat a base selector over disjoint
observation subsamples and disjoint covariate subsets, count how often each
covariate is picked, and threshold the frequencies."""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .dataset import Dataset, restrict
from .partition import draw_plan

AUDIT_CELL_LIMIT = 10 ** 6
MAX_FAILURE_FRACTION = 0.1


class EngineError(RuntimeError):
    """Too many base-selector calls failed for the run to be meaningful."""


@dataclass(frozen=True)
class EngineConfig:
    """Run parameters.

    ``selector`` is any callable mapping a Dataset to original covariate
    indices (see ``stabsel.basemethods``). ``audit`` keeps the per-call
    log; by default it is on unless the run exceeds a million calls.
    """

    T: int
    L: int
    V: int
    tau: float
    selector: object
    seed: int = 0
    parallelism: int = 1
    audit: bool = None

    def __post_init__(self):
        if self.T < 1 or self.L < 1 or self.V < 1:
            raise ValueError(f"T, L, V must be >= 1, got {self.T}, {self.L}, {self.V}")
        if not 0 < self.tau < 1:
            raise ValueError(f"tau must lie in (0, 1), got {self.tau}")
        if self.parallelism < 1:
            raise ValueError("parallelism must be >= 1")

    @property
    def cells(self) -> int:
        return self.T * self.L * self.V


@dataclass(frozen=True)
class CallRecord:
    iteration: int
    subsample: int
    subset: int
    selected: tuple
    error: str = None


@dataclass(frozen=True)
class FrequencyTable:
    """Integer selection counts over ``runs`` base calls.

    ``pi = counts / (L * T)``: a covariate sits in exactly one subset per
    iteration, so it can be picked at most ``L * T`` times.
    """

    counts: np.ndarray
    L: int
    T: int
    runs: int
    failures: int = 0
    per_call: tuple = None

    @property
    def denominator(self) -> int:
        return self.L * self.T

    @property
    def pi(self) -> np.ndarray:
        return self.counts / self.denominator


@dataclass(frozen=True)
class SelectionResult:
    table: FrequencyTable
    selected: np.ndarray
    config: EngineConfig
    wall_time: float = 0.0
    errors: tuple = field(default=())


def threshold(table: FrequencyTable, tau: float) -> np.ndarray:
    """Covariates with frequency at least ``tau``."""
    return np.flatnonzero(table.pi >= tau)


def rank(table: FrequencyTable, k: int) -> list:
    """The ``k`` most frequently selected covariates, ties to the lowest index."""
    d = table.counts.shape[0]
    if not 1 <= k <= d:
        raise ValueError(f"k must lie in [1, {d}], got {k}")
    order = np.lexsort((np.arange(d), -table.counts))
    return [int(i) for i in order[:k]]


def _cell(ds, selector, rows, cols):
    sub = restrict(ds, rows, cols)
    sel = np.unique(np.asarray(selector(sub), dtype=np.intp))
    if sel.size and not np.all(np.isin(sel, sub.col_index)):
        raise ValueError("selector returned covariates outside its subset")
    return sel


def run(ds: Dataset, cfg: EngineConfig) -> SelectionResult:
    """Run T iterations of L x V base-selector calls and threshold at tau.

    All partition plans are drawn up front from one generator seeded with
    ``cfg.seed``, so the result does not depend on how the calls are
    scheduled across ``cfg.parallelism`` worker threads.
    """
    if cfg.L > ds.N:
        raise ValueError(f"L={cfg.L} exceeds N={ds.N}")
    if cfg.V > ds.D:
        raise ValueError(f"V={cfg.V} exceeds D={ds.D}")
    start = time.perf_counter()
    rng = np.random.default_rng(cfg.seed)
    plans = [draw_plan(ds.N, ds.D, cfg.L, cfg.V, rng, iteration=t) for t in range(cfg.T)]
    jobs = [(t, i, j) for t in range(cfg.T) for i in range(cfg.L) for j in range(cfg.V)]

    def work(job):
        t, i, j = job
        plan = plans[t]
        try:
            return _cell(ds, cfg.selector, plan.subsamples[i], plan.subsets[j]), None
        except Exception as exc:  # a failed cell contributes nothing
            return None, f"{type(exc).__name__}: {exc}"

    if cfg.parallelism > 1:
        with ThreadPoolExecutor(max_workers=cfg.parallelism) as pool:
            outcomes = list(pool.map(work, jobs))
    else:
        outcomes = [work(job) for job in jobs]

    audit = cfg.audit if cfg.audit is not None else cfg.cells <= AUDIT_CELL_LIMIT
    counts = np.zeros(ds.D, dtype=np.int64)
    log = []
    errors = []
    # local column positions and original indices coincide only for the
    # top-level dataset; map original indices back to positions here
    position = {int(c): p for p, c in enumerate(ds.col_index)}
    for (t, i, j), (sel, err) in zip(jobs, outcomes):
        if err is not None:
            errors.append((t, i, j, err))
            if audit:
                log.append(CallRecord(t, i, j, (), err))
            continue
        pos = np.fromiter((position[int(s)] for s in sel), dtype=np.intp, count=sel.size)
        counts[pos] += 1
        if audit:
            log.append(CallRecord(t, i, j, tuple(int(s) for s in sel)))

    if len(errors) > MAX_FAILURE_FRACTION * len(jobs):
        t, i, j, err = errors[0]
        raise EngineError(
            f"{len(errors)} of {len(jobs)} base calls failed; first at "
            f"iteration {t}, subsample {i}, subset {j}: {err}")

    table = FrequencyTable(
        counts=counts,
        L=cfg.L,
        T=cfg.T,
        runs=len(jobs),
        failures=len(errors),
        per_call=tuple(log) if audit else None,
    )
    return SelectionResult(
        table=table,
        selected=threshold(table, cfg.tau),
        config=cfg,
        wall_time=time.perf_counter() - start,
        errors=tuple(errors),
    )
