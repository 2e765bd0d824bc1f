"""
How low can the threshold go?
=============================

Selection frequencies are thresholded at ``tau``. The false-positive bound
tells us which thresholds keep the expected number of selected noise
covariates below one, for a base method that picks ``q`` of ``D``
covariates on average.
"""

# %%
import numpy as np

from stabsel.bounds import (BoundQuery, corollary1_efp, fn_rate_bound,
                            fp_rate_bound, fp_vs_base_bound, tau_min)

# %%
# One query: two halves, threshold 0.9, base selection probability 0.028.
qy = BoundQuery(L=2, tau=0.9, theta=0.028)
print("false-positive rate bound:", fp_rate_bound(qy))
print("relative to one base call:", fp_vs_base_bound(qy))
print("expected noise selections (980 noise covariates):",
      corollary1_efp(2, 0.9, 28, 1000, 980))

# %%
# Thresholds below theta control false negatives instead.
print(fn_rate_bound(BoundQuery(L=8, tau=0.3, theta=0.6)))

# %%
# The smallest admissible threshold as the base method picks more
# covariates. With two halves nothing works beyond q = 31; more
# subsamples push the limit out.
qs = np.arange(5, 101, 5)
print("  q " + "".join(f"   L={L:<3d}" for L in (2, 4, 8, 16)))
for q in qs:
    row = []
    for L in (2, 4, 8, 16):
        t = tau_min(L, int(q), 1000, 980)
        row.append("     -  " if t is None else f"  {t:.4f}")
    print(f"{q:3d} " + "".join(row))
