"""
Synthetic benchmark protocols
=============================

Two questions on repeated draws of a synthetic design: how many of the
top 20 covariates are truly informative (precision), and how many noise
covariates survive the threshold certified by the false-positive bound.
Sizes here are small so the script runs in about a minute; the command
``stabsel experiment`` runs the same protocols at full scale.
"""

# %%
from stabsel import harness
from stabsel.synth import DesignSpec

design = DesignSpec(kind="four_blocks", N=200, D=300, snr=4.0)

# %%
for method in (harness.plain_lasso(), harness.sfs(2, 1), harness.sfs(4, 1)):
    spec = harness.ExperimentSpec(design=design, method=method, q_sweep=(10, 30),
                                  repetitions=3, T=10)
    res = harness.run_precision(spec)
    for q in spec.q_sweep:
        print(f"{method.label:9s} q={q:2d} precision@20 = "
              f"{res.mean('precision', q):5.2f} +- {res.stderr('precision', q):.2f}")

# %%
spec = harness.ExperimentSpec(design=design, method=harness.sfs(2, 1), q_sweep=(2, 5, 8, 12),
                              repetitions=3, T=10)
res = harness.run_fp_tp(spec)
print("no admissible threshold for q =", list(res.skipped))
for row in res.summary():
    _, label, L, V, q, metric, mean, se, n = row
    if metric in ("fp", "tp"):
        print(f"{label} q={q:2d} {metric} = {mean:.2f} +- {se:.2f}")
