"""Channel registry: physical fading models to characteristic coefficients.

Maps the classical monomial-MGF fading families (Rayleigh, Hoyt,
Nakagami-m, shadowed Rician, eta-mu) plus composite constructions (MRC
over independent branches, finite scenario mixtures, OSTBC over spatially
white shadowed-Rician MIMO) to their pole/exponent coefficient sets, and
provides matching Monte Carlo sampler recipes for the physically modeled
kinds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import reduce
from typing import Mapping, Sequence

import numpy as np

from .mgfcore import (
    MonomialFactor,
    MonomialTerm,
    PosynomialMGF,
    mixture,
    monomial_mgf,
    product,
    simplify,
)

__all__ = [
    "ChannelSpec",
    "SamplerRecipe",
    "ChannelParameterError",
    "SpecFormatError",
    "UnsupportedSamplerError",
    "rayleigh",
    "hoyt",
    "nakagami_m",
    "rician_shadowed",
    "eta_mu",
    "mrc",
    "scenario_mixture",
    "ostbc_shadowed_rician",
    "to_mgf",
    "to_sampler",
    "draw_samples",
    "spec_from_dict",
    "spec_to_dict",
]

SIMPLE_KINDS = ("rayleigh", "hoyt", "nakagami_m", "rician_shadowed", "eta_mu")


class ChannelParameterError(ValueError):
    """A channel parameter violates its admissibility constraint."""


class SpecFormatError(ValueError):
    """A channel spec document is structurally malformed."""


class UnsupportedSamplerError(Exception):
    """No physical sampler exists for the requested channel kind."""


@dataclass(frozen=True)
class ChannelSpec:
    """Parametric channel description convertible to an MGF and a sampler.

    ``params`` holds the kind-specific shape parameters; ``avg_snr`` the
    mean SNR in linear scale (present for the simple kinds, absent for
    composites, whose scale lives in their components).
    """

    kind: str
    params: Mapping[str, float] = field(default_factory=dict)
    avg_snr: float | None = None
    branches: tuple["ChannelSpec", ...] = ()
    probs: tuple[float, ...] = ()
    scenarios: tuple["ChannelSpec", ...] = ()


def rayleigh(avg_snr: float) -> ChannelSpec:
    return ChannelSpec("rayleigh", {}, float(avg_snr))


def hoyt(q: float, avg_snr: float) -> ChannelSpec:
    return ChannelSpec("hoyt", {"q": float(q)}, float(avg_snr))


def nakagami_m(m: float, avg_snr: float) -> ChannelSpec:
    return ChannelSpec("nakagami_m", {"m": float(m)}, float(avg_snr))


def rician_shadowed(k: float, m: float, avg_snr: float) -> ChannelSpec:
    return ChannelSpec("rician_shadowed", {"k": float(k), "m": float(m)}, float(avg_snr))


def eta_mu(eta: float, n: int, avg_snr: float, fmt: int = 1) -> ChannelSpec:
    return ChannelSpec(
        "eta_mu", {"eta": float(eta), "n": float(n), "format": float(fmt)}, float(avg_snr)
    )


def mrc(branches: Sequence[ChannelSpec]) -> ChannelSpec:
    return ChannelSpec("mrc", {}, None, branches=tuple(branches))


def scenario_mixture(probs: Sequence[float], scenarios: Sequence[ChannelSpec]) -> ChannelSpec:
    return ChannelSpec(
        "mixture", {}, None, probs=tuple(float(p) for p in probs), scenarios=tuple(scenarios)
    )


def ostbc_shadowed_rician(n_t: int, n_r: int, a: float, b: float, m: float) -> ChannelSpec:
    return ChannelSpec(
        "ostbc_shadowed_rician",
        {"n_t": float(n_t), "n_r": float(n_r), "a": float(a), "b": float(b), "m": float(m)},
    )


def _fail(kind: str, message: str):
    raise ChannelParameterError(f"{kind}: {message}")


def _require_positive_snr(spec: ChannelSpec):
    if spec.avg_snr is None or not spec.avg_snr > 0:
        _fail(spec.kind, f"mean SNR must be positive, got {spec.avg_snr!r} "
                         "(the constraint 0 <= avg_snr admits only the degenerate "
                         "zero-SNR point mass at equality)")


def _is_positive_integer(x: float) -> bool:
    return x > 0 and float(x).is_integer()


def check_spec(spec: ChannelSpec) -> None:
    """Raise ChannelParameterError naming the violated constraint, if any."""
    kind = spec.kind
    p = spec.params
    if kind == "rayleigh":
        _require_positive_snr(spec)
    elif kind == "hoyt":
        _require_positive_snr(spec)
        q = p.get("q")
        if q is None or not 0 < q <= 1:
            _fail(kind, f"q = {q!r} violates 0 < q <= 1")
    elif kind == "nakagami_m":
        _require_positive_snr(spec)
        m = p.get("m")
        if m is None or not m >= 0.5:
            _fail(kind, f"m = {m!r} violates 1/2 <= m")
    elif kind == "rician_shadowed":
        _require_positive_snr(spec)
        k, m = p.get("k"), p.get("m")
        if k is None or not k >= 0:
            _fail(kind, f"K = {k!r} violates 0 <= K")
        if m is None or not m > 0:
            _fail(kind, f"m = {m!r} violates 0 < m")
    elif kind == "eta_mu":
        _require_positive_snr(spec)
        eta, n, fmt = p.get("eta"), p.get("n"), p.get("format")
        if fmt not in (1, 2, 1.0, 2.0):
            _fail(kind, f"format = {fmt!r} must be 1 or 2")
        if n is None or not _is_positive_integer(n):
            _fail(kind, f"n = {n!r} violates n = 1, 2, ...")
        if int(fmt) == 1:
            if eta is None or not eta > 0:
                _fail(kind, f"eta = {eta!r} violates 0 < eta < inf (format 1)")
        else:
            if eta is None or not -1 < eta < 1:
                _fail(kind, f"eta = {eta!r} violates -1 < eta < 1 (format 2)")
    elif kind == "mrc":
        if not spec.branches:
            _fail(kind, "branch list must be nonempty")
        for branch in spec.branches:
            if branch.kind == "mrc":
                _fail(kind, "branches must be non-mrc channel specs")
            check_spec(branch)
    elif kind == "mixture":
        if not spec.scenarios or len(spec.probs) != len(spec.scenarios):
            _fail(kind, "probs and scenarios must be nonempty lists of equal length")
        if any(w < 0 for w in spec.probs):
            _fail(kind, "scenario probabilities must be nonnegative")
        if abs(math.fsum(spec.probs) - 1.0) > 1e-9:
            _fail(kind, f"scenario probabilities sum to {math.fsum(spec.probs):.12g}, expected 1")
        for scen in spec.scenarios:
            check_spec(scen)
    elif kind == "ostbc_shadowed_rician":
        n_t, n_r = p.get("n_t"), p.get("n_r")
        a, b, m = p.get("a"), p.get("b"), p.get("m")
        if n_t is None or not _is_positive_integer(n_t):
            _fail(kind, f"n_t = {n_t!r} must be a positive integer")
        if n_r is None or not _is_positive_integer(n_r):
            _fail(kind, f"n_r = {n_r!r} must be a positive integer")
        if a is None or not a > 0:
            _fail(kind, f"a = {a!r} must be positive")
        if b is None or b < 0:
            _fail(kind, f"b = {b!r} must be nonnegative")
        if m is None or not m > 0:
            _fail(kind, f"m = {m!r} violates 0 < m")
    else:
        _fail(kind, "unknown channel kind")


def _eta_mu_h_big_h(eta: float, fmt: int) -> tuple[float, float]:
    if fmt == 1:
        return (2.0 + 1.0 / eta + eta) / 4.0, (1.0 / eta - eta) / 4.0
    return 1.0 / (1.0 - eta * eta), eta / (1.0 - eta * eta)


def to_mgf(spec: ChannelSpec) -> PosynomialMGF:
    """Characteristic coefficients of the channel's SNR distribution."""
    check_spec(spec)
    kind, p, snr = spec.kind, spec.params, spec.avg_snr
    if kind == "rayleigh":
        return monomial_mgf([(1.0 / snr, 1.0)])
    if kind == "hoyt":
        q2 = p["q"] ** 2
        return monomial_mgf([
            ((1.0 + q2) / (2.0 * q2 * snr), 0.5),
            ((1.0 + q2) / (2.0 * snr), 0.5),
        ])
    if kind == "nakagami_m":
        m = p["m"]
        return monomial_mgf([(m / snr, m)])
    if kind == "rician_shadowed":
        k, m = p["k"], p["m"]
        return monomial_mgf([
            ((1.0 + k) / snr, -(m - 1.0)),
            ((1.0 + k) / ((1.0 + k / m) * snr), m),
        ])
    if kind == "eta_mu":
        n = p["n"]
        h, big_h = _eta_mu_h_big_h(p["eta"], int(p["format"]))
        return monomial_mgf([
            (n * (h + big_h) / snr, n / 2.0),
            (n * (h - big_h) / snr, n / 2.0),
        ])
    if kind == "mrc":
        return reduce(product, (to_mgf(branch) for branch in spec.branches))
    if kind == "mixture":
        return mixture(list(spec.probs), [to_mgf(s) for s in spec.scenarios])
    # OSTBC over spatially white shadowed-Rician MIMO: the MGF factors into
    # three pole groups; the same-pole groups merge under simplification.
    n_ant = p["n_t"] * p["n_r"]
    a, b, m = p["a"], p["b"], p["m"]
    raw = monomial_mgf([
        (1.0 / a, n_ant),
        (1.0 / (a + b), m * n_ant),
        (1.0 / a, -m * n_ant),
    ])
    return simplify(raw)


@dataclass(frozen=True)
class SamplerRecipe:
    """Compiled sampling plan: kind, parameters and SNR normalization."""

    kind: str
    params: Mapping[str, float] = field(default_factory=dict)
    branches: tuple["SamplerRecipe", ...] = ()
    probs: tuple[float, ...] = ()


def to_sampler(spec: ChannelSpec) -> SamplerRecipe:
    """Sampler recipe drawing SNR values with the exact analytic mean.

    Normalization constants are analytic (no empirical rescaling):
    each recipe's raw power statistic is divided by its exact mean and
    multiplied by the requested mean SNR.
    """
    check_spec(spec)
    kind, p, snr = spec.kind, spec.params, spec.avg_snr
    if kind == "rayleigh":
        return SamplerRecipe(kind, {"scale": snr})
    if kind == "nakagami_m":
        return SamplerRecipe(kind, {"shape": p["m"], "scale": snr / p["m"]})
    if kind == "hoyt":
        q = p["q"]
        # gamma = avg * (X^2 + Y^2)/(q^2 + 1), X ~ N(0, q^2), Y ~ N(0, 1)
        return SamplerRecipe(kind, {"q": q, "scale": snr / (q * q + 1.0)})
    if kind == "eta_mu":
        n = p["n"]
        h, big_h = _eta_mu_h_big_h(p["eta"], int(p["format"]))
        return SamplerRecipe(kind, {
            "shape": n / 2.0,
            "scale_plus": snr / (n * (h + big_h)),
            "scale_minus": snr / (n * (h - big_h)),
        })
    if kind == "rician_shadowed":
        k, m = p["k"], p["m"]
        # |xi + w|^2 with Nakagami-m LOS amplitude xi (mean square K) and
        # circular Gaussian scatter w (power 1); mean power is K + 1.
        return SamplerRecipe(kind, {"k": k, "m": m, "scale": snr / (k + 1.0)})
    if kind == "mrc":
        return SamplerRecipe(kind, {}, branches=tuple(to_sampler(b) for b in spec.branches))
    if kind == "mixture":
        return SamplerRecipe(
            kind, {}, branches=tuple(to_sampler(s) for s in spec.scenarios), probs=spec.probs
        )
    raise UnsupportedSamplerError(
        f"no physical sampler for kind {kind!r}; verify through MGF matching instead"
    )


def draw_samples(recipe: SamplerRecipe, rng: np.random.Generator, n: int) -> np.ndarray:
    """Draw n SNR samples; identical generator state gives identical output."""
    kind, p = recipe.kind, recipe.params
    if kind == "rayleigh":
        return rng.exponential(p["scale"], n)
    if kind == "nakagami_m":
        return rng.gamma(p["shape"], p["scale"], n)
    if kind == "hoyt":
        x = rng.normal(0.0, p["q"], n)
        y = rng.normal(0.0, 1.0, n)
        return p["scale"] * (x * x + y * y)
    if kind == "eta_mu":
        g1 = rng.gamma(p["shape"], p["scale_plus"], n)
        g2 = rng.gamma(p["shape"], p["scale_minus"], n)
        return g1 + g2
    if kind == "rician_shadowed":
        los2 = rng.gamma(p["m"], p["k"] / p["m"], n) if p["k"] > 0 else np.zeros(n)
        x = rng.normal(0.0, math.sqrt(0.5), n)
        y = rng.normal(0.0, math.sqrt(0.5), n)
        return p["scale"] * ((np.sqrt(los2) + x) ** 2 + y * y)
    if kind == "mrc":
        total = np.zeros(n)
        for branch in recipe.branches:
            total += draw_samples(branch, rng, n)
        return total
    # mixture: per-sample scenario choice, then per-scenario draws
    idx = rng.choice(len(recipe.branches), size=n, p=recipe.probs)
    out = np.empty(n)
    for j, branch in enumerate(recipe.branches):
        mask = idx == j
        count = int(mask.sum())
        if count:
            out[mask] = draw_samples(branch, rng, count)
    return out


# ---------------------------------------------------------------------------
# JSON schema
# ---------------------------------------------------------------------------

_PARAM_KEYS = {
    "rayleigh": (),
    "hoyt": ("q",),
    "nakagami_m": ("m",),
    "rician_shadowed": ("k", "m"),
    "eta_mu": ("eta", "n", "format"),
    "ostbc_shadowed_rician": ("n_t", "n_r", "a", "b", "m"),
}


def spec_from_dict(data: dict) -> ChannelSpec:
    """Parse {"kind": ..., ...} with mean SNR given as avg_snr or avg_snr_db."""
    if not isinstance(data, dict) or "kind" not in data:
        raise SpecFormatError("channel spec must be an object with a 'kind' field")
    kind = data["kind"]
    if kind == "mrc":
        branches = data.get("branches")
        if not isinstance(branches, list) or not branches:
            raise SpecFormatError("mrc spec requires a nonempty 'branches' list")
        return mrc([spec_from_dict(b) for b in branches])
    if kind == "mixture":
        probs, scenarios = data.get("probs"), data.get("scenarios")
        if not isinstance(probs, list) or not isinstance(scenarios, list):
            raise SpecFormatError("mixture spec requires 'probs' and 'scenarios' lists")
        return scenario_mixture([float(w) for w in probs],
                                [spec_from_dict(s) for s in scenarios])
    if kind not in _PARAM_KEYS:
        raise SpecFormatError(f"unknown channel kind {kind!r}")
    try:
        params = {key: float(data[key]) for key in _PARAM_KEYS[kind]}
    except KeyError as exc:
        raise SpecFormatError(f"{kind} spec missing parameter {exc.args[0]!r}") from exc
    except (TypeError, ValueError) as exc:
        raise SpecFormatError(f"{kind} spec has a non-numeric parameter: {exc}") from exc
    avg_snr = None
    if kind != "ostbc_shadowed_rician":
        has_lin, has_db = "avg_snr" in data, "avg_snr_db" in data
        if has_lin == has_db:
            raise SpecFormatError(
                f"{kind} spec requires exactly one of 'avg_snr' or 'avg_snr_db'"
            )
        avg_snr = float(data["avg_snr"]) if has_lin else 10.0 ** (float(data["avg_snr_db"]) / 10.0)
    return ChannelSpec(kind, params, avg_snr)


def spec_to_dict(spec: ChannelSpec) -> dict:
    """Serialize back to the JSON schema (mean SNR always linear)."""
    if spec.kind == "mrc":
        return {"kind": "mrc", "branches": [spec_to_dict(b) for b in spec.branches]}
    if spec.kind == "mixture":
        return {
            "kind": "mixture",
            "probs": list(spec.probs),
            "scenarios": [spec_to_dict(s) for s in spec.scenarios],
        }
    out = {"kind": spec.kind}
    out.update({k: spec.params[k] for k in _PARAM_KEYS[spec.kind]})
    if spec.avg_snr is not None:
        out["avg_snr"] = spec.avg_snr
    return out
