"""Independent verification engines for the analytic pipeline.

Three families of cross-checks, deliberately kept on separate numerical
routes from the production code:

* Monte Carlo estimators driven by the physical channel samplers
  (plain averaging, no variance reduction, explicit seeds).
* Direct quadrature of the defining expectation for channels with
  elementary PDFs (Rayleigh, Nakagami-m).
* The forward-Laplace identity

      E[Q(sqrt(p gamma))] = sqrt(p)/(2 sqrt(2 pi))
                            * int_0^inf exp(-p t/2) F(t) t^(-1/2) dt,

  fed by a closed-form CDF where one exists and by Laplace inversion
  otherwise, so it never touches the Euler-integral route it checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate as _integrate
from scipy import special as _sp

from . import analysis
from .channels import ChannelSpec, draw_samples, to_mgf, to_sampler
from .specfun import bromwich_cdf

__all__ = [
    "McEstimate",
    "mc_q_transform",
    "mc_outage",
    "mc_mgf",
    "mc_average_ep",
    "laplace_forward_q",
    "pdf_quadrature_q",
]


@dataclass(frozen=True)
class McEstimate:
    """Monte Carlo point estimate with its standard error and provenance."""

    estimate: float
    std_error: float
    n_samples: int
    seed: int


def _check_mc_args(n: int):
    if n < 1000:
        raise ValueError(f"sample count n = {n} below the minimum of 1000")


def _mean_se(values: np.ndarray, n: int, seed: int) -> McEstimate:
    mean = float(np.mean(values))
    se = float(np.std(values, ddof=1) / math.sqrt(n))
    return McEstimate(mean, se, n, seed)


def mc_q_transform(spec: ChannelSpec, p: float, n: int = 10**6,
                   seed: int = 0) -> McEstimate:
    """Sample mean of Q(sqrt(p gamma)) over n channel draws."""
    _check_mc_args(n)
    recipe = to_sampler(spec)
    samples = draw_samples(recipe, np.random.default_rng(seed), n)
    values = 0.5 * _sp.erfc(np.sqrt(p * samples) / math.sqrt(2.0))
    return _mean_se(values, n, seed)


def mc_outage(spec: ChannelSpec, gamma_th: float, n: int = 10**6,
              seed: int = 0) -> McEstimate:
    """Empirical fraction of draws at or below the threshold (binomial s.e.)."""
    _check_mc_args(n)
    recipe = to_sampler(spec)
    samples = draw_samples(recipe, np.random.default_rng(seed), n)
    frac = float(np.mean(samples <= gamma_th))
    se = math.sqrt(frac * (1.0 - frac) / n)
    return McEstimate(frac, se, n, seed)


def mc_mgf(spec: ChannelSpec, s: float, n: int = 10**6, seed: int = 0) -> McEstimate:
    """Empirical MGF: sample mean of exp(s gamma) (use s <= 0)."""
    _check_mc_args(n)
    recipe = to_sampler(spec)
    samples = draw_samples(recipe, np.random.default_rng(seed), n)
    return _mean_se(np.exp(s * samples), n, seed)


def mc_average_ep(spec: ChannelSpec, weighted_sum: analysis.WeightedGaussianSum,
                  n: int = 10**6, seed: int = 0, p_scale: float = 1.0) -> McEstimate:
    """Sample mean of sum_j w_j Q(sqrt(p_scale p_j gamma)) per draw."""
    _check_mc_args(n)
    recipe = to_sampler(spec)
    samples = draw_samples(recipe, np.random.default_rng(seed), n)
    values = np.zeros(n)
    for w, p in weighted_sum.terms:
        values += w * 0.5 * _sp.erfc(np.sqrt(p_scale * p * samples) / math.sqrt(2.0))
    return _mean_se(values, n, seed)


def _cdf_callable(spec: ChannelSpec, tol: float):
    """Closed-form CDF for Rayleigh / Nakagami-m, Laplace inversion otherwise."""
    if spec.kind == "rayleigh":
        snr = spec.avg_snr
        return lambda t: -math.expm1(-t / snr)
    if spec.kind == "nakagami_m":
        m, snr = spec.params["m"], spec.avg_snr
        return lambda t: float(_sp.gammainc(m, m * t / snr))
    mgf = to_mgf(spec)
    inner_tol = max(tol * 1e-2, 1e-11)
    return lambda t: bromwich_cdf(mgf, t, tol=inner_tol) if t > 0 else 0.0


def laplace_forward_q(spec: ChannelSpec, p: float, tol: float = 1e-7) -> float:
    """Average error probability via the forward Laplace integral of the CDF.

    The substitution t = x^2 removes the t^(-1/2) endpoint weight and
    leaves sqrt(p/(2 pi)) * int_0^inf exp(-p x^2/2) F(x^2) dx, integrated
    adaptively and truncated where the Gaussian weight drops below
    tol * 1e-3.
    """
    if not p > 0:
        raise ValueError(f"p = {p:g} must be positive")
    cdf = _cdf_callable(spec, tol)
    x_max = math.sqrt(2.0 * -math.log(tol * 1e-3) / p)
    value, abserr = _integrate.quad(
        lambda x: math.exp(-0.5 * p * x * x) * cdf(x * x),
        0.0,
        x_max,
        epsabs=tol * 0.1,
        epsrel=1e-12,
        limit=200,
    )
    return math.sqrt(p / (2.0 * math.pi)) * value


_PDF_KINDS = ("rayleigh", "nakagami_m")


def pdf_quadrature_q(spec: ChannelSpec, p: float, tol: float = 1e-10) -> float:
    """Brute-force E[Q(sqrt(p gamma))] = int_0^inf Q(sqrt(p g)) f(g) dg.

    Only kinds with elementary PDFs are supported; this is the reference
    the Euler-integral route is measured against.
    """
    if spec.kind not in _PDF_KINDS:
        raise ValueError(
            f"no closed-form PDF for kind {spec.kind!r}; "
            f"supported kinds: {', '.join(_PDF_KINDS)}"
        )
    if not p > 0:
        raise ValueError(f"p = {p:g} must be positive")
    snr = spec.avg_snr
    if spec.kind == "rayleigh":
        def integrand(g: float) -> float:
            return 0.5 * math.erfc(math.sqrt(0.5 * p * g)) * math.exp(-g / snr) / snr
    else:
        m = spec.params["m"]
        log_norm = m * math.log(m / snr) - math.lgamma(m)
        def integrand(g: float) -> float:
            return 0.5 * math.erfc(math.sqrt(0.5 * p * g)) * math.exp(
                log_norm + (m - 1.0) * math.log(g) - m * g / snr
            )
    value, abserr = _integrate.quad(
        integrand, 0.0, np.inf, epsabs=tol * 0.5, epsrel=1e-13, limit=300
    )
    return value
