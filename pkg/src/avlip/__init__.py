"""Exact computation and cross-verification of local-slope seminorms, total
variation, maximal functions, segment covering and shattering certificates
for functions on [0,1]."""

from .covering import (
    LemmaViolation,
    Segment,
    SelectionResult,
    best_disjoint_total,
    best_disjoint_total_bruteforce,
    select_disjoint,
    union_measure,
)
from .constructions import (
    expand,
    expand_alt_harmonic,
    expand_dyadic_witness,
    expand_packing_witness,
    expand_x_sin_inv_x,
    identity_plf,
    indicator_step,
    tent_plf,
)
from .funcs import (
    AltHarmonic,
    DyadicWitness,
    FunctionSpec,
    PackingWitness,
    PiecewiseLinear,
    StepFunction,
    XSinInvX,
    add,
    dumps,
    evaluate,
    from_json_obj,
    load_spec_file,
    loads,
    materialize,
    regularize,
    scale,
    to_json_obj,
)
from .maximal import (
    MaximalEvaluator,
    WeakBoundReport,
    check_weak_bound,
    maximal_function,
    stieltjes_measure,
)
from .rational import INF, ExtendedRational, Q, format_rational, parse_rational
from .seminorms import (
    ChainCheck,
    Estimate,
    strong_avg,
    superlevel_measure,
    superlevel_measure_bruteforce,
    variation_chain,
    verify_chain,
    weak_avg,
    weak_l1_samples,
)
from .shattering import (
    NecessityReport,
    ShatterCertificate,
    ShatterInstance,
    bv_shatter_necessity,
    check_shattered,
    dyadic_instance,
    dyadic_witness_provider,
    fat_lower_bound_strong,
    packing_instance,
)
from .slope import (
    SlopeValue,
    lipschitz_constant,
    local_slope,
    local_slope_grid,
    local_slope_plf,
    local_slope_step,
)
from .variation import (
    Partition,
    cumulative_variation,
    total_variation,
    total_variation_plf,
    total_variation_step,
    variation_on_interval,
    variation_oracle,
)

__version__ = "0.1.0"
