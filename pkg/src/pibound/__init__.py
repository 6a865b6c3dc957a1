"""Prime-counting bound toolkit.

Exact pi(x) and compensated theta(x) from a segmented sieve, a catalog
of upper/lower bounds on pi with direction-aware margins, Li(x) and
piecewise-exact prime integrals with Abel identity checks, an
integer-arithmetic replay of the even-integer counting argument, range
scans with violation reporting, and sklearn-style estimator wrappers.
"""

from .bounds import (
    KINDS,
    LI_GAP_EMPIRICAL_FROM,
    BoundKind,
    BoundReport,
    bound_asymptotic_13,
    bound_chebyshev,
    bound_dusart,
    bound_geometric,
    bound_intro_upper,
    bound_li_gap,
    bound_linear_rest,
    bound_theorem1_ceiling,
    bound_theorem1_sharp,
    ceiling_pre,
    comparison_bounds,
    evaluate,
    li_gap_rhs,
)
from .counting import (
    ChainLink,
    CountingChain,
    counting_chain,
    floor_log2_ratio,
    floor_sum_all_odd,
    verify_proof_chain,
)
from .errors import (
    CacheFormatError,
    CapacityError,
    DomainError,
    OutOfRangeError,
    PiboundError,
)
from .estimators import PrimeBoundPredictor, PrimeCountingFeaturizer
from .integrals import (
    IntegralValue,
    abel_pi_residual,
    abel_theta_residual,
    li,
    pi_integral,
    theta_integral,
)
from .scan import ScanResult, ThresholdResult, scan_bound, threshold_scan
from .sieve import MAX_LIMIT, PrimeTable, build_table, load_table, save_table

__version__ = "0.1.0"

__all__ = [
    "KINDS",
    "LI_GAP_EMPIRICAL_FROM",
    "MAX_LIMIT",
    "BoundKind",
    "BoundReport",
    "CacheFormatError",
    "CapacityError",
    "ChainLink",
    "CountingChain",
    "DomainError",
    "IntegralValue",
    "OutOfRangeError",
    "PiboundError",
    "PrimeBoundPredictor",
    "PrimeCountingFeaturizer",
    "PrimeTable",
    "ScanResult",
    "ThresholdResult",
    "abel_pi_residual",
    "abel_theta_residual",
    "bound_asymptotic_13",
    "bound_chebyshev",
    "bound_dusart",
    "bound_geometric",
    "bound_intro_upper",
    "bound_li_gap",
    "bound_linear_rest",
    "bound_theorem1_ceiling",
    "bound_theorem1_sharp",
    "build_table",
    "ceiling_pre",
    "comparison_bounds",
    "counting_chain",
    "evaluate",
    "floor_log2_ratio",
    "floor_sum_all_odd",
    "li",
    "li_gap_rhs",
    "load_table",
    "pi_integral",
    "save_table",
    "scan_bound",
    "theta_integral",
    "threshold_scan",
    "verify_proof_chain",
    "__version__",
]
