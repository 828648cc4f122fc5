"""Secrecy rate regions of the two-user multi-antenna Gaussian broadcast
channel with confidential messages: pencil spectrum, dirty-paper achievable
region, correlated-noise outer bound and their consistency audits."""

from .channel import (
    ChannelPair,
    ChannelSpectrum,
    channel_from_dict,
    channel_to_dict,
    is_secrecy_feasible,
    linear_independence_margin,
    load_channel,
    rate_scale,
    spectrum,
)
from .errors import (
    BothZeroVectors,
    CovarianceInvalid,
    DegeneratePivot,
    DimensionMismatch,
    NotPositiveDefinite,
    NumericsError,
    ParamOutOfRange,
    RhoOnUnitCircle,
)
from .linalg import GenEigResult, cholesky, largest_gen_eig, quadratic_form
from .regions import (
    RatePair,
    RateRectangle,
    RegionBoundary,
    SweepConfig,
    capacity_region,
    capacity_region_beta,
    equal_rate_point,
    gamma1,
    gamma2,
    max_rates,
    miso_wiretap_capacity,
    region_contains,
    time_sharing_region,
    xi1,
    xi2,
)
from .sato import (
    AuditConfig,
    AuditReport,
    CovSearchConfig,
    SatoEvaluation,
    audit_inner_outer,
    outer_region,
    sato_f1,
    sato_f2,
    tightness_rho,
)
from .sdpc import (
    CovariancePair,
    optimal_covariances,
    sdpc_rates,
    verify_identity_eq9,
)

__version__ = "0.1.0"

__all__ = [
    "AuditConfig",
    "AuditReport",
    "BothZeroVectors",
    "ChannelPair",
    "ChannelSpectrum",
    "CovSearchConfig",
    "CovarianceInvalid",
    "CovariancePair",
    "DegeneratePivot",
    "DimensionMismatch",
    "GenEigResult",
    "NotPositiveDefinite",
    "NumericsError",
    "ParamOutOfRange",
    "RatePair",
    "RateRectangle",
    "RegionBoundary",
    "RhoOnUnitCircle",
    "SatoEvaluation",
    "SweepConfig",
    "audit_inner_outer",
    "capacity_region",
    "capacity_region_beta",
    "channel_from_dict",
    "channel_to_dict",
    "cholesky",
    "equal_rate_point",
    "gamma1",
    "gamma2",
    "is_secrecy_feasible",
    "largest_gen_eig",
    "linear_independence_margin",
    "load_channel",
    "max_rates",
    "miso_wiretap_capacity",
    "optimal_covariances",
    "outer_region",
    "quadratic_form",
    "rate_scale",
    "region_contains",
    "sato_f1",
    "sato_f2",
    "sdpc_rates",
    "spectrum",
    "tightness_rho",
    "time_sharing_region",
    "verify_identity_eq9",
    "xi1",
    "xi2",
]
