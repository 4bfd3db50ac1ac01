"""Lattice reduction-aided decoding: reducers, proximity bounds, experiments."""

__version__ = "0.1.0"

from .basis import (
    Basis,
    GsoData,
    UnimodularTransform,
    apply_transform,
    augment_mmse,
    complex_to_real,
    dual_basis,
    dual_gso,
    dual_transform_to_primal,
    flip_matrix,
    gso,
    is_unimodular,
    lattice_volume,
    round_half_away,
)
from .bounds import (
    bound_table,
    babai_sin_sq_lower,
    dual_kz_sic_bound,
    dual_kz_zf_bound,
    dual_lll_sic_bound,
    dual_lll_zf_bound,
    explicit_table2,
    hermite_upper,
    kz_constant_upper,
    kz_sic_bound,
    kz_zf_bound,
    lll_sic_bound,
    lll_zf_bound,
    minv_entry_bound,
)
from .decoders import (
    DecodeInstance,
    DecoderChain,
    lr_aided_decode,
    ml_decode_finite,
    mmse_wrap,
    sic_decode,
    zf_decode,
)
from .enumeration import closest_point, first_minimum, shortest_vector
from .errors import (
    BoundViolation,
    BudgetExceeded,
    ConfigInvalid,
    DimensionTooLarge,
    LatproxError,
    NonPositiveSigma,
    NonTermination,
    NotUnimodular,
    RankDeficient,
    UnknownMethod,
)
from .geometry import (
    DistanceSpectrum,
    angle_theta,
    distance_spectrum,
    dual_distance_identities,
    proximity_ratios,
)
from .harness import (
    BerRecord,
    ProxRecord,
    SimConfig,
    ber_sim,
    emit_bound_curves,
    empirical_proximity,
    q_function,
    trial_rng,
    union_bounds,
)
from .reduction import (
    ReductionParams,
    ReductionReport,
    beta_from_delta,
    effective_lll_reduce,
    is_effectively_lll_reduced,
    is_kz_reduced,
    is_lll_reduced,
    is_size_reduced,
    kz_reduce,
    lll_reduce,
    reduce_basis,
    size_reduce,
    unimodular_completion,
)
