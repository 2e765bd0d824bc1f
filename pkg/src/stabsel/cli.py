"""Command-line entry point: ``stabsel <command> ...``."""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time
from contextlib import nullcontext

from . import bounds, engine, harness, scoremodel, synth
from .basemethods import CmimSelector, LassoSelector
from .dataset import DataError, load_csv, write_csv


def _int_list(text):
    """'1-5,8,10' -> [1, 2, 3, 4, 5, 8, 10]."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if "-" in part:
            a, b = part.split("-", 1)
            out.extend(range(int(a), int(b) + 1))
        elif part:
            out.append(int(part))
    return out


def _horizon(text):
    return math.inf if text.lower() in ("inf", "none") else int(text)


def _open_out(path):
    if path in (None, "-"):
        return nullcontext(sys.stdout)
    return open(path, "w", newline="")


def cmd_gen(args):
    spec = synth.DesignSpec(kind=args.design, N=args.n, D=args.d,
                            n_informative=args.n_informative, snr=args.snr,
                            noise=args.noise, seed=args.seed)
    ds, truth = synth.draw_design(spec)
    write_csv(ds, args.out)
    synth.write_ground_truth(truth, args.truth)


def _selector(args):
    if args.selector == "lasso":
        return LassoSelector(args.q)
    return CmimSelector(args.q, k=args.k, bins=args.bins)


def cmd_select(args):
    ds = load_csv(args.input, args.response)
    cfg = engine.EngineConfig(T=args.T, L=args.L, V=args.V, tau=args.tau,
                              selector=_selector(args), seed=args.seed,
                              parallelism=args.parallelism, audit=False)
    res = engine.run(ds, cfg)
    chosen = set(int(i) for i in res.selected)
    with _open_out(args.out) as fh:
        w = csv.writer(fh)
        w.writerow(["index", "name", "frequency", "selected"])
        for i, (name, p) in enumerate(zip(ds.covariate_names, res.table.pi)):
            w.writerow([i, name, repr(float(p)), int(i in chosen)])
    if args.summary:
        summary = {
            "config": {"T": cfg.T, "L": cfg.L, "V": cfg.V, "tau": cfg.tau,
                       "selector": args.selector, "q": args.q,
                       "k": None if math.isinf(args.k) else args.k,
                       "bins": args.bins, "seed": cfg.seed,
                       "parallelism": cfg.parallelism, "input": args.input,
                       "response": args.response},
            "runs": res.table.runs,
            "failures": res.table.failures,
            "selected": sorted(chosen),
            "wall_time_s": res.wall_time,
        }
        with open(args.summary, "w") as fh:
            json.dump(summary, fh, indent=2)


def cmd_bounds(args):
    qy = bounds.BoundQuery(L=args.L, tau=args.tau, theta=args.theta)
    rows = []
    if args.theta < args.tau:
        rows.append(("fp_rate", bounds.fp_rate_bound(qy)))
        try:
            rows.append(("fp_vs_base", bounds.fp_vs_base_bound(qy)))
        except ValueError as exc:
            print(f"fp_vs_base: {exc}")
    elif args.tau < args.theta:
        rows.append(("fn_rate", bounds.fn_rate_bound(qy)))
        try:
            rows.append(("fn_vs_base", bounds.fn_vs_base_bound(qy)))
        except ValueError as exc:
            print(f"fn_vs_base: {exc}")
    for name, r in rows:
        flag = " (vacuous)" if r.vacuous else ""
        print(f"{name}: {r.value:.6g} at l0={r.l0}{flag}")
    if args.q is not None and args.D is not None:
        n_noise = args.n_noise if args.n_noise is not None else args.D
        if args.tau > args.q / args.D:
            efp = bounds.corollary1_efp(args.L, args.tau, args.q, args.D, n_noise)
            print(f"expected_false_positives: {efp:.6g}")
            if abs(args.tau * args.L - round(args.tau * args.L)) < 1e-9:
                c2 = bounds.efp_closed_form(args.L, args.tau, args.q, args.D, n_noise)
                print(f"expected_false_positives_l0_eq_tauL: {c2:.6g}")
        else:
            print("expected_false_positives: needs tau > q/D")


def cmd_tau_min(args):
    with _open_out(args.out) as fh:
        w = csv.writer(fh)
        w.writerow(["L", "q", "tau_min"])
        for L in args.L:
            for q in range(1, args.q_max + 1):
                t = bounds.tau_min(L, q, args.D, args.n_noise, args.target)
                w.writerow([L, q, "infeasible" if t is None else f"{t:.4f}"])


def cmd_simulate_scores(args):
    with _open_out(args.out) as fh:
        w = csv.writer(fh)
        w.writerow(["noise", "D", "error_frequency"])
        for law in args.noise:
            cfg = scoremodel.ScoreModelConfig(noise_law=law, dims=tuple(args.dims),
                                              trials=args.trials, seed=args.seed)
            for row in scoremodel.error_frequency(cfg).rows():
                w.writerow(row)


def cmd_experiment(args):
    design = synth.DesignSpec(kind=args.design, N=args.n, D=args.d,
                              n_informative=args.n_informative, snr=args.snr,
                              noise=args.noise)
    if args.method == "lasso":
        method = harness.plain_lasso()
    else:
        method = harness.sfs(args.L, args.V, base=args.base, k=args.k, bins=args.bins)
    policy = (harness.FixedTau(args.tau) if args.tau is not None
              else harness.BoundTau(args.target))
    spec = harness.ExperimentSpec(design=design, method=method, q_sweep=tuple(args.q),
                                  k=args.top, repetitions=args.repetitions, T=args.T,
                                  tau_policy=policy, seed=args.seed,
                                  parallelism=args.parallelism)
    start = time.perf_counter()
    if args.protocol == "precision":
        result = harness.run_precision(spec)
    else:
        result = harness.run_fp_tp(spec)
        if result.skipped:
            print(f"skipped q (no admissible threshold): {list(result.skipped)}",
                  file=sys.stderr)
    result.write_long_csv(args.out)
    if args.summary:
        result.write_summary_csv(args.summary)
    print(f"{len(result.records)} records in {time.perf_counter() - start:.1f}s",
          file=sys.stderr)


def _design_args(p):
    p.add_argument("--design", choices=synth.DESIGNS, default="toeplitz")
    p.add_argument("--n", type=int, default=500)
    p.add_argument("--d", type=int, default=1000)
    p.add_argument("--n-informative", type=int, default=20)
    p.add_argument("--snr", type=float, default=2.0)
    p.add_argument("--noise", default="gaussian", help="gaussian or t<df>")


def build_parser():
    parser = argparse.ArgumentParser(prog="stabsel", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="draw a synthetic dataset")
    _design_args(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="dataset CSV")
    p.add_argument("--truth", required=True, help="ground-truth CSV (index,beta)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("select", help="run extended stability selection on a CSV")
    p.add_argument("--input", required=True)
    p.add_argument("--response", default="y", help="response column name or index")
    p.add_argument("--T", type=int, default=50)
    p.add_argument("--L", type=int, default=2)
    p.add_argument("--V", type=int, default=1)
    p.add_argument("--tau", type=float, default=0.6)
    p.add_argument("--selector", choices=("lasso", "cmim"), default="lasso")
    p.add_argument("--q", type=int, default=20)
    p.add_argument("--k", type=_horizon, default=math.inf, help="CMIM update horizon")
    p.add_argument("--bins", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--parallelism", type=int, default=1)
    p.add_argument("--out", default="-", help="frequency CSV (default stdout)")
    p.add_argument("--summary", help="JSON run summary")
    p.set_defaults(func=cmd_select)

    p = sub.add_parser("bounds", help="evaluate the error bounds")
    p.add_argument("--L", type=int, required=True)
    p.add_argument("--tau", type=float, required=True)
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--q", type=float)
    p.add_argument("--D", type=int)
    p.add_argument("--n-noise", type=int)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("tau-min", help="minimal thresholds over a range of q")
    p.add_argument("--L", type=_int_list, default=[2, 4, 8])
    p.add_argument("--q-max", type=int, default=100)
    p.add_argument("--D", type=int, default=1000)
    p.add_argument("--n-noise", type=int, default=980)
    p.add_argument("--target", type=float, default=1.0)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_tau_min)

    p = sub.add_parser("simulate-scores", help="argmax error of noisy scores versus D")
    p.add_argument("--noise", nargs="+", default=list(scoremodel.NOISE_LAWS),
                   choices=scoremodel.NOISE_LAWS)
    p.add_argument("--dims", type=_int_list,
                   default=list(scoremodel.DEFAULT_DIMS))
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_simulate_scores)

    p = sub.add_parser("experiment", help="synthetic benchmark protocols")
    p.add_argument("protocol", choices=("precision", "fptp"))
    _design_args(p)
    p.add_argument("--method", choices=("lasso", "sfs"), default="sfs")
    p.add_argument("--L", type=int, default=2)
    p.add_argument("--V", type=int, default=1)
    p.add_argument("--base", choices=("lasso", "cmim"), default="lasso")
    p.add_argument("--k", type=_horizon, default=math.inf, help="CMIM update horizon")
    p.add_argument("--bins", type=int, default=2)
    p.add_argument("--q", type=_int_list, default=list(range(1, 101)), help="e.g. 1-100")
    p.add_argument("--top", type=int, default=20, help="precision cutoff")
    p.add_argument("--repetitions", type=int, default=10)
    p.add_argument("--T", type=int, default=50)
    p.add_argument("--tau", type=float, help="fixed threshold (fptp)")
    p.add_argument("--target", type=float, default=1.0,
                   help="expected false positives for the bound threshold (fptp)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--parallelism", type=int, default=1)
    p.add_argument("--out", required=True, help="long-format CSV")
    p.add_argument("--summary", help="aggregated CSV")
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except (DataError, engine.EngineError) as exc:
        print(f"stabsel: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
