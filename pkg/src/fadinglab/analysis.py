"""Headline analysis operations on posynomial MGFs.

For an SNR with characteristic coefficients {c_k, a_{k,i}, b_{k,i}} the
average Gaussian error probability E[Q(sqrt(p gamma))] evaluates
term-by-term as

    (1/(2 sqrt(pi))) sum_k c_k prod_i a_i^{b_i}
        * Gamma(1/2 + S_k)/Gamma(1 + S_k) * (2/p)^{S_k}
        * F_D(1/2 + S_k, b_1..b_n; 1 + S_k; -2a_1/p .. -2a_n/p),

with S_k = sum_i b_{k,i}; the CDF (outage probability) replaces F_D with
the confluent Phi_2 and (2/p)^S with t^S.  Every prefactor spans many
orders of magnitude across an SNR sweep, so prefactors are assembled as
sums of logarithms and exponentiated once per term.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

from .mgfcore import MonomialTerm, PosynomialMGF
from . import specfun
from .specfun import (
    AccuracyWarning,
    QuadratureConfig,
    SeriesConfig,
    bromwich_cdf,
    lauricella_fd,
    phi2_series,
)

__all__ = [
    "WeightedGaussianSum",
    "EvalResult",
    "BPSK",
    "q_transform",
    "q_asymptotic",
    "outage",
    "diversity_order",
    "average_ep",
]

EULER_INTEGRAL = "euler-integral"
LAPLACE_INVERSION = "laplace-inversion"
CLOSED_FORM = "closed-form"

# Series window for routing the outage computation: beyond this argument
# size the Phi_2 series gives way to Laplace inversion.
PHI2_ARG_LIMIT = 30.0

_LOG_2SQRTPI = math.log(2.0 * math.sqrt(math.pi))


@dataclass(frozen=True)
class WeightedGaussianSum:
    """Conditional error probability sum_j w_j Q(sqrt(p_j gamma)).

    Modulation-specific weights and argument scales are supplied by the
    caller; (1, 2) reproduces coherent BPSK.
    """

    terms: tuple[tuple[float, float], ...]

    def __post_init__(self):
        terms = tuple((float(w), float(p)) for w, p in self.terms)
        if not terms:
            raise ValueError("weighted sum requires at least one term")
        if any(not p > 0 for _, p in terms):
            raise ValueError("argument scales p_j must be positive")
        object.__setattr__(self, "terms", terms)


BPSK = WeightedGaussianSum(((1.0, 2.0),))


@dataclass(frozen=True)
class EvalResult:
    """Numeric result with an absolute error estimate and the route taken."""

    value: float
    error: float
    method: str


def _term_arrays(term: MonomialTerm):
    bvec = [f.b for f in term.factors]
    avec = [f.a for f in term.factors]
    return bvec, avec


def _log_pole_product(term: MonomialTerm) -> float:
    """Re sum_i b_i log(a_i); imaginary parts cancel over conjugate pairs."""
    return math.fsum((f.b * cmath.log(f.a)).real for f in term.factors)


def q_transform(mgf: PosynomialMGF, p: float,
                cfg: QuadratureConfig | None = None) -> EvalResult:
    """Average Gaussian error probability E[Q(sqrt(p gamma))].

    p = 0 returns exactly 1/2 (the zero-argument value of Q); for p > 0
    each term is evaluated through the Euler-integral route with its
    prefactor computed in log space.
    """
    p = float(p)
    if not p >= 0:
        raise ValueError(f"p = {p:g} must be nonnegative")
    if p == 0.0:
        return EvalResult(0.5, 0.0, CLOSED_FORM)
    total = 0.0
    total_err = 0.0
    for term in mgf.terms:
        bvec, avec = _term_arrays(term)
        s_b = term.exponent_sum()
        log_pref = (
            -_LOG_2SQRTPI
            + _log_pole_product(term)
            + math.lgamma(0.5 + s_b)
            - math.lgamma(1.0 + s_b)
            + s_b * (math.log(2.0) - math.log(p))
        )
        xvec = [-2.0 * a / p for a in avec]
        fd, fd_err = lauricella_fd(0.5 + s_b, bvec, 1.0 + s_b, xvec, cfg,
                                   full_output=True)
        pref = math.exp(log_pref)
        total += term.c * pref * fd
        total_err += abs(term.c) * pref * fd_err
    if total < 0.0:
        warnings.warn(
            f"q_transform round-off produced {total:.3e}; clamped to 0",
            AccuracyWarning,
            stacklevel=2,
        )
        total = 0.0
    return EvalResult(min(total, 0.5), total_err, EULER_INTEGRAL)


def q_asymptotic(mgf: PosynomialMGF, p: float) -> float:
    """Large-p power-law approximation of the average error probability.

    Per term: c_k/(2 sqrt(pi)) prod_i (2 a_i)^{b_i}
              * Gamma(1/2 + S_k)/Gamma(1 + S_k) * p^{-S_k}.
    """
    p = float(p)
    if not p > 0:
        raise ValueError(f"p = {p:g} must be positive")
    total = 0.0
    for term in mgf.terms:
        s_b = term.exponent_sum()
        log_mag = (
            -_LOG_2SQRTPI
            + _log_pole_product(term)
            + s_b * math.log(2.0)
            + math.lgamma(0.5 + s_b)
            - math.lgamma(1.0 + s_b)
            - s_b * math.log(p)
        )
        total += math.copysign(math.exp(log_mag + math.log(abs(term.c))), term.c) \
            if term.c != 0.0 else 0.0
    return total


def _phi2_route_admissible(mgf: PosynomialMGF, gamma_th: float) -> bool:
    for term in mgf.terms:
        live = [f for f in term.factors if f.b != 0.0]
        if len(live) > 2:
            return False
        if any(f.a.imag != 0.0 for f in live):
            return False
        if math.fsum(abs(f.a.real) * gamma_th for f in live) > PHI2_ARG_LIMIT:
            return False
    return True


def outage(mgf: PosynomialMGF, gamma_th: float, method: str = "auto",
           series_cfg: SeriesConfig | None = None, tol: float = 1e-9) -> EvalResult:
    """Outage probability F(gamma_th) = P(gamma <= gamma_th).

    ``method`` 'auto' picks the Phi_2 series route (tagged 'closed-form')
    when every term has at most two live factors with real poles and
    series arguments within the reliability window, and the Laplace
    inversion route otherwise.  'phi2' and 'bromwich' force a route,
    which the cross-validation tests use.
    """
    gamma_th = float(gamma_th)
    if not gamma_th > 0:
        raise ValueError(f"gamma_th = {gamma_th:g} must be positive")
    if method == "auto":
        method = "phi2" if _phi2_route_admissible(mgf, gamma_th) else "bromwich"
    if method == "bromwich":
        value = bromwich_cdf(mgf, gamma_th, tol=tol)
        return EvalResult(value, tol, LAPLACE_INVERSION)
    if method != "phi2":
        raise ValueError(f"unknown outage method {method!r}")
    cfg = series_cfg if series_cfg is not None else specfun.DEFAULT_SERIES
    total = 0.0
    total_err = 0.0
    for term in mgf.terms:
        live = [f for f in term.factors if f.b != 0.0]
        s_b = term.exponent_sum()
        log_pref = (
            _log_pole_product(term)
            - math.lgamma(1.0 + s_b)
            + s_b * math.log(gamma_th)
        )
        phi2 = phi2_series(
            [f.b for f in live],
            1.0 + s_b,
            [-f.a.real * gamma_th for f in live],
            cfg,
        )
        pref = math.exp(log_pref)
        total += term.c * pref * phi2
        total_err += abs(term.c) * pref * cfg.tol + abs(term.c) * 1e-15 * pref * abs(phi2)
    return EvalResult(min(max(total, 0.0), 1.0), total_err, CLOSED_FORM)


def diversity_order(mgf: PosynomialMGF) -> float:
    """Asymptotic power-law decay exponent: min over terms of sum_i b_i."""
    return min(term.exponent_sum() for term in mgf.terms)


def average_ep(mgf: PosynomialMGF, weighted_sum: WeightedGaussianSum,
               cfg: QuadratureConfig | None = None) -> float:
    """Average error probability sum_j w_j E[Q(sqrt(p_j gamma))]."""
    return math.fsum(
        w * q_transform(mgf, p, cfg).value for w, p in weighted_sum.terms
    )
