"""basislab: numerical laboratory for Schauder-basis geometry.

Computes norms, dual norms, growth functions, block bases generated by a
single vector, equivalence-constant lower bounds and block-projection norms
in classical sequence spaces, and classifies whether a basis behaves
numerically like the unit vector basis of c0 or lp.
"""

__version__ = "0.1.0"

from .blocks import (
    BlockBoundCheck,
    GeneratedBlockSpec,
    block_norm,
    expand,
    generate_block,
    make_generator,
    subsymmetric_bound,
)
from .characterize import (
    ClassifyConfig,
    FitResult,
    GrowthRow,
    GrowthTable,
    SandwichResult,
    Verdict,
    classify,
    fit_p,
    growth_table,
    sandwich_check,
)
from .config import DEFAULT_BUDGET, DEFAULT_DUAL_BUDGET, N_MAX, TAU_NORM, TAU_SEARCH
from .duality import (
    DualEvaluation,
    dual_fundamental_function,
    dual_norm,
    dual_norm_search,
    duality_bracket,
    norm_subgradient,
)
from .equivalence import (
    EquivalenceEstimate,
    SweepResult,
    default_generators,
    estimate_K,
    ratio,
    uniform_sweep,
)
from .errors import BasisLabError, ConfigError, InputError, UnsupportedError
from .projections import (
    DiagonalCompression,
    NormingFunctional,
    ProjectionReport,
    block_projection,
    diagonal_compression,
    norming_functional,
    projection_norm,
    summing_projection,
)
from .spaces import (
    SpaceSpec,
    WeightRule,
    as_coeffs,
    fundamental_function,
    norm,
    norm_batch,
    normalize,
    ones,
    place_at,
    unit_vector,
)
