"""
Greedy selection by conditional mutual information
==================================================

CMIM first takes the covariate most informative about the response, then
repeatedly the one whose information survives conditioning on every
covariate already chosen. Copies of a chosen covariate therefore drop to
the back of the queue.
"""

# %%
import numpy as np

from stabsel import Dataset, cmim_select
from stabsel.basemethods import CmimSelector, mutual_information, discretize

rng = np.random.default_rng(0)
n = 400
a, b = rng.integers(0, 2, (2, n))
y = (a + b + 0.6 * rng.random(n) > 1.3).astype(int)
X = np.column_stack([a, a, b, rng.integers(0, 2, n), (a + rng.random(n) > 0.8)]).astype(float)
ds = Dataset(X=X, Y=y.astype(float), covariate_names=["a", "a_copy", "b", "coin", "noisy_a"])

# %%
mi = mutual_information(np.column_stack([discretize(c) for c in X.T]), y)
print("marginal information (nats):",
      {name: round(float(v), 4) for name, v in zip(ds.covariate_names, mi)})
order = cmim_select(ds, 5)
print("CMIM order:", [ds.covariate_names[j] for j in order])

# %%
# Freezing the scores after one update ranks the rest by their
# information given the first pick only.
print("horizon 1: ", [ds.covariate_names[j] for j in cmim_select(ds, 5, k=1)])

# %%
# As a base selector it returns original column indices.
print(CmimSelector(q=2)(ds))
