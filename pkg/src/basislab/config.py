"""Package-wide numeric defaults.

All tolerances are on unit-scale quantities; comparisons in the test suite
use TAU_NORM unless a tighter bound is stated at the call site.
"""

# Tolerance for norm-level identities (homogeneity, normalization, ...).
TAU_NORM = 1e-9

# Tolerance for numeric-search certification (norming functionals).
TAU_SEARCH = 1e-4

# Hard cap on expanded vector length: len(a) * m never exceeds this.
N_MAX = 4096

# Default number of ratio evaluations per equivalence estimate.
DEFAULT_BUDGET = 10_000

# Default budget for a single dual-norm search.
DEFAULT_DUAL_BUDGET = 4_000

# Default number of random restart candidates in witness searches.
DEFAULT_RESTARTS = 32
