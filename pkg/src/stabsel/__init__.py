"""Extended stability selection.

Repeats a base variable selector (Lasso or CMIM) over disjoint random
observation subsamples and disjoint random covariate subsets, and
thresholds the resulting selection frequencies. Also provides the
false-positive/false-negative bounds for the thresholded selection, a
simulator for argmax selection under noisy scores, and synthetic
benchmark generators and protocols.
"""

from .basemethods import (
    CmimSelector,
    LassoSelector,
    cmim_select,
    lasso_fit,
    lasso_lambda_for_count,
)
from .bounds import (
    BoundQuery,
    corollary1_efp,
    fn_rate_bound,
    fn_vs_base_bound,
    fp_rate_bound,
    fp_vs_base_bound,
    kl_bernoulli,
    tau_min,
)
from .dataset import Dataset, GroundTruth, load_csv, restrict, write_csv
from .engine import EngineConfig, FrequencyTable, SelectionResult, rank, run
from .partition import PartitionPlan, draw_plan
from .synth import DesignSpec, covariance, draw_design

__version__ = "0.1.0"
