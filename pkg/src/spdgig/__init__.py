"""Verification-grade numerics for a parametric family of involutive maps
on the cone of symmetric positive definite matrices, together with the
generalized inverse Gaussian distributions they transport.

The package machine-checks the algebraic identities (involution, unit
Jacobian, the parametric Yang-Baxter relation, closed-form derivatives) and
the distributional ones (density transport, independence preservation)
with deterministic residual sweeps and seeded Monte Carlo campaigns.
"""

from .distributions import (
    ChainConfig,
    GammaParams,
    GigParams,
    MgigParams,
    MhSamples,
    WishartParams,
    gamma_logpdf_unnorm,
    gamma_sample,
    gig_logpdf_unnorm,
    gig_mode,
    gig_numeric_cdf,
    gig_numeric_moment,
    gig_sample,
    invert_law,
    make_rng,
    mgig_logpdf_unnorm,
    mgig_mh_sample,
    random_spd,
    wishart_logpdf_unnorm,
    wishart_sample,
)
from .errors import (
    ConfigError,
    DimMismatch,
    DomainError,
    IllConditioned,
    InvalidLambda,
    NotPositiveDefinite,
    SpdGigError,
    SymmetryLoss,
    TooFewSamples,
)
from .maps import (
    MapCampaignConfig,
    MapParams,
    cone_candidate,
    derivative_identities_check,
    gig1_map,
    gig1_map_affine,
    h3b,
    maps_campaign,
    phi,
    phi_jacobian_fd,
    psi,
    psi_affine,
    psi_jacobian_check,
    scaling_law_residual,
)
from .reports import CheckResult, VerificationReport, comparable_fields
from .stats import (
    IndependenceReport,
    McConfig,
    TransportConfig,
    density_transport_check,
    direc_campaign,
    distance_correlation,
    energy_distance_test,
    my_property_campaign,
    transport_campaign,
    univariate_eff_check,
)
from .yangbaxter import (
    AppendixTrace,
    YbCampaignConfig,
    YbParams,
    appendix_campaign,
    appendix_trace,
    yb_campaign,
    yb_residual,
    yb_residual_mutated,
)

__version__ = "1.0.0"

__all__ = [
    "AppendixTrace",
    "ChainConfig",
    "CheckResult",
    "ConfigError",
    "DimMismatch",
    "DomainError",
    "GammaParams",
    "GigParams",
    "IllConditioned",
    "IndependenceReport",
    "InvalidLambda",
    "MapCampaignConfig",
    "MapParams",
    "McConfig",
    "MgigParams",
    "MhSamples",
    "NotPositiveDefinite",
    "SpdGigError",
    "SymmetryLoss",
    "TooFewSamples",
    "TransportConfig",
    "VerificationReport",
    "WishartParams",
    "YbCampaignConfig",
    "YbParams",
    "appendix_campaign",
    "appendix_trace",
    "comparable_fields",
    "cone_candidate",
    "density_transport_check",
    "derivative_identities_check",
    "direc_campaign",
    "distance_correlation",
    "energy_distance_test",
    "gamma_logpdf_unnorm",
    "gamma_sample",
    "gig1_map",
    "gig1_map_affine",
    "gig_logpdf_unnorm",
    "gig_mode",
    "gig_numeric_cdf",
    "gig_numeric_moment",
    "gig_sample",
    "h3b",
    "invert_law",
    "make_rng",
    "maps_campaign",
    "mgig_logpdf_unnorm",
    "mgig_mh_sample",
    "my_property_campaign",
    "phi",
    "phi_jacobian_fd",
    "psi",
    "psi_affine",
    "psi_jacobian_check",
    "random_spd",
    "scaling_law_residual",
    "transport_campaign",
    "univariate_eff_check",
    "wishart_logpdf_unnorm",
    "wishart_sample",
    "yb_campaign",
    "yb_residual",
    "yb_residual_mutated",
]
