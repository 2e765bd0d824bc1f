"""Synthetic-data experiments: precision@k of frequency rankings, and
false/true positive counts when the threshold comes from the
false-positive bound."""

from __future__ import annotations

import csv
import math
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import engine
from .basemethods import CmimSelector, LassoSelector, lasso_lambda_for_count
from .bounds import tau_min
from .synth import DesignSpec, draw_design


@dataclass(frozen=True)
class Method:
    """Plain Lasso (``kind="lasso"``) or SFS(L, V) over a base selector.

    ``selector_factory(q, truth)`` overrides the base selector; it exists
    for oracle and adversarial checks of the harness itself.
    """

    kind: str = "sfs"
    L: int = 2
    V: int = 1
    base: str = "lasso"
    k: float = math.inf
    bins: int = 2
    selector_factory: object = None

    @property
    def label(self) -> str:
        if self.kind == "lasso":
            return "Lasso"
        return f"SFS({self.L},{self.V})"

    def selector(self, q, truth):
        if self.selector_factory is not None:
            return self.selector_factory(q, truth)
        if self.base == "lasso":
            return LassoSelector(q)
        if self.base == "cmim":
            return CmimSelector(q, k=self.k, bins=self.bins)
        raise ValueError(f"unknown base method {self.base!r}")


def plain_lasso() -> Method:
    return Method(kind="lasso", L=1, V=1)


def sfs(L: int, V: int = 1, base: str = "lasso", **kw) -> Method:
    return Method(kind="sfs", L=L, V=V, base=base, **kw)


@dataclass(frozen=True)
class FixedTau:
    tau: float


@dataclass(frozen=True)
class BoundTau:
    """Smallest grid threshold keeping the expected false positives
    below ``target_efp``."""

    target_efp: float = 1.0


@dataclass(frozen=True)
class ExperimentSpec:
    design: DesignSpec
    method: Method
    q_sweep: tuple = tuple(range(1, 101))
    k: int = 20
    repetitions: int = 10
    T: int = 50
    tau_policy: object = field(default_factory=BoundTau)
    seed: int = 0
    parallelism: int = 1

    def __post_init__(self):
        if self.k > self.design.D:
            raise ValueError("k exceeds D")
        if min(self.q_sweep) < 1:
            raise ValueError("q values must be >= 1")
        if self.repetitions < 1:
            raise ValueError("need at least one repetition")


@dataclass(frozen=True)
class Record:
    design: str
    method: str
    L: int
    V: int
    q: int
    repetition: int
    metric: str
    value: float


@dataclass
class ExperimentResult:
    records: list
    skipped: tuple = ()

    def values(self, metric, q=None) -> np.ndarray:
        return np.array([r.value for r in self.records
                         if r.metric == metric and (q is None or r.q == q)])

    def summary(self) -> list:
        """Mean and standard error per (design, method, L, V, q, metric)."""
        groups = defaultdict(list)
        for r in self.records:
            groups[(r.design, r.method, r.L, r.V, r.q, r.metric)].append(r.value)
        out = []
        for key in sorted(groups):
            v = np.asarray(groups[key], dtype=float)
            se = float(v.std(ddof=1) / np.sqrt(v.size)) if v.size > 1 else 0.0
            out.append(key + (float(v.mean()), se, int(v.size)))
        return out

    def mean(self, metric, q) -> float:
        return float(self.values(metric, q).mean())

    def stderr(self, metric, q) -> float:
        v = self.values(metric, q)
        return float(v.std(ddof=1) / np.sqrt(v.size)) if v.size > 1 else 0.0

    def write_long_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["design", "method", "L", "V", "q", "repetition", "metric", "value"])
            for r in self.records:
                w.writerow([r.design, r.method, r.L, r.V, r.q, r.repetition,
                            r.metric, repr(float(r.value))])

    def write_summary_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["design", "method", "L", "V", "q", "metric", "mean", "stderr", "n"])
            for row in self.summary():
                w.writerow(list(row))


def _data_seed(seed, rep):
    return int(np.random.SeedSequence([seed, rep]).generate_state(1)[0])


def _cell_seed(seed, rep, q):
    return int(np.random.SeedSequence([seed, rep, q]).generate_state(1)[0])


def _top_by_magnitude(beta, k):
    order = np.lexsort((np.arange(beta.size), -np.abs(beta)))
    return order[:k]


def _draw(spec, rep):
    return draw_design(replace(spec.design, seed=_data_seed(spec.seed, rep)))


def _map_cells(spec, fn, cells):
    if spec.parallelism > 1:
        with ThreadPoolExecutor(max_workers=spec.parallelism) as pool:
            return list(pool.map(fn, cells))
    return [fn(c) for c in cells]


def run_precision(spec: ExperimentSpec) -> ExperimentResult:
    """Number of informative covariates among the top ``k`` of the ranking.

    SFS ranks by selection frequency with the base selector tuned to pick
    exactly q covariates per call; plain Lasso ranks by coefficient
    magnitude at the largest penalty giving q nonzero coefficients.
    Data are redrawn per repetition and shared by all q values (and by any
    method run with the same seed).
    """
    m = spec.method
    records = []
    for rep in range(spec.repetitions):
        ds, truth = _draw(spec, rep)

        def cell(q):
            if m.kind == "lasso":
                fit = lasso_lambda_for_count(ds, min(q, ds.N - 1, ds.D)).fit
                top = _top_by_magnitude(fit.beta, spec.k)
            else:
                cfg = engine.EngineConfig(T=spec.T, L=m.L, V=m.V, tau=0.5,
                                          selector=m.selector(q, truth),
                                          seed=_cell_seed(spec.seed, rep, q),
                                          audit=False)
                top = engine.rank(engine.run(ds, cfg).table, spec.k)
            return len(set(int(i) for i in top) & truth.informative)

        for q, hits in zip(spec.q_sweep, _map_cells(spec, cell, spec.q_sweep)):
            records.append(Record(spec.design.kind, m.label, m.L, m.V, q, rep,
                                  "precision", float(hits)))
    return ExperimentResult(records)


def _tau_for(spec, q, truth):
    policy = spec.tau_policy
    if isinstance(policy, FixedTau):
        return policy.tau
    D = spec.design.D
    n_noise = D - len(truth.informative)
    # marginal base selection probability of a noise covariate is q V / D
    return tau_min(spec.method.L, q * spec.method.V, D, n_noise, policy.target_efp)


def run_fp_tp(spec: ExperimentSpec) -> ExperimentResult:
    """False and true positives of the thresholded selection.

    With ``BoundTau`` the threshold is the smallest one certifying the
    target expected false-positive count; q values for which no threshold
    qualifies are skipped.
    """
    m = spec.method
    if m.kind == "lasso":
        raise ValueError("the false-positive protocol needs an SFS method")
    records = []
    skipped = set()
    for rep in range(spec.repetitions):
        ds, truth = _draw(spec, rep)
        taus = {q: _tau_for(spec, q, truth) for q in spec.q_sweep}
        skipped.update(q for q, t in taus.items() if t is None)
        live = [q for q in spec.q_sweep if taus[q] is not None]

        def cell(q):
            cfg = engine.EngineConfig(T=spec.T, L=m.L, V=m.V, tau=taus[q],
                                      selector=m.selector(q, truth),
                                      seed=_cell_seed(spec.seed, rep, q),
                                      audit=False)
            sel = set(int(i) for i in engine.run(ds, cfg).selected)
            tp = len(sel & truth.informative)
            return tp, len(sel) - tp, len(sel)

        for q, (tp, fp, n_sel) in zip(live, _map_cells(spec, cell, live)):
            for metric, v in (("fp", fp), ("tp", tp), ("selected", n_sel), ("tau", taus[q])):
                records.append(Record(spec.design.kind, m.label, m.L, m.V, q, rep,
                                      metric, float(v)))
    return ExperimentResult(records, skipped=tuple(sorted(skipped)))
