"""Expected gaps between consecutive order statistics and their shape under IHR."""

from .approx import ApproxResult, oscillating_hazard_dist, quantile_hazard_approx
from .dist import (
    DistributionSpec,
    IhrVerdict,
    SupportBounds,
    check_ihr,
    from_hazard,
    make_builtin,
    probe,
)
from .gaps import (
    GapValue,
    Method,
    NotIhrError,
    QuadratureConfig,
    QuadratureError,
    cm_witness,
    gap_expectation,
    r_continuous,
    r_direct,
    r_stieltjes,
)
from .mc import MCEstimate, mc_extreme_range, mc_gap, survival_integral_check
from .monotone import GapSequence, MonotonicityReport, check_all, difference_table, strictness_check

__version__ = "0.1.0"
