"""Error probability and outage analysis for fading channels whose SNR has
a posynomial moment generating function.

The pipeline: describe a channel (`channels`), extract its characteristic
coefficients (`mgfcore`), evaluate error/outage/diversity quantities
through Lauricella-function numerics (`specfun`, `analysis`), and verify
everything against Monte Carlo and independent quadrature (`oracle`).
"""

from .mgfcore import (
    MonomialFactor,
    MonomialTerm,
    PosynomialMGF,
    ValidationReport,
    mgf_eval,
    mixture,
    monomial_mgf,
    product,
    simplify,
    validate,
)
from .specfun import (
    QuadratureConfig,
    SeriesConfig,
    bromwich_cdf,
    gauss_2f1,
    gaussian_q,
    kummer_1f1,
    lauricella_fd,
    phi2_series,
    reg_gamma_q,
)
from .channels import (
    ChannelSpec,
    SamplerRecipe,
    draw_samples,
    eta_mu,
    hoyt,
    mrc,
    nakagami_m,
    ostbc_shadowed_rician,
    rayleigh,
    rician_shadowed,
    scenario_mixture,
    spec_from_dict,
    spec_to_dict,
    to_mgf,
    to_sampler,
)
from .analysis import (
    BPSK,
    EvalResult,
    WeightedGaussianSum,
    average_ep,
    diversity_order,
    outage,
    q_asymptotic,
    q_transform,
)
from .oracle import (
    McEstimate,
    laplace_forward_q,
    mc_average_ep,
    mc_mgf,
    mc_outage,
    mc_q_transform,
    pdf_quadrature_q,
)

__version__ = "0.1.0"
