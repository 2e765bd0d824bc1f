"""
Picking the best of D noisy scores
==================================

One covariate in ten carries a true score of 2, the rest 0, and we observe
the scores through additive noise. The base step keeps the argmax. With
light-tailed noise more candidates only help; with heavy tails the error
falls, bottoms out, and climbs back toward the 90% of blind guessing.
That is why splitting the covariates into subsets can pay off.
"""

# %%
from stabsel.scoremodel import NOISE_LAWS, ScoreModelConfig, error_frequency, optimal_subset_size

dims = (1, 2, 5, 10, 20, 50, 100, 200, 500, 1000, 2000)

# %%
print("law      " + "".join(f"{d:>7d}" for d in dims))
for law in NOISE_LAWS:
    cfg = ScoreModelConfig(noise_law=law, dims=dims, trials=2000, seed=0)
    curve = error_frequency(cfg)
    d_opt, f_opt = optimal_subset_size(cfg, curve)
    print(f"{law:9s}" + "".join(f"{f:7.3f}" for f in curve.frequency)
          + f"   D_opt={d_opt} ({f_opt:.3f})")
