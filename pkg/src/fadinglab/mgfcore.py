"""Characteristic-coefficient model for SNR distributions with posynomial MGFs.

A nonnegative SNR distribution belongs to the posynomial class when its
moment generating function M(s) = E[exp(s*gamma)] is a weighted sum of
products of simple-pole powers,

    M(s) = sum_k c_k * prod_i (1 - s/a_{k,i}) ** (-b_{k,i}),

with Re[a_{k,i}] > 0 for every factor, sum_i b_{k,i} > 0 for every term
and sum_k c_k = 1.  The coefficient set {c_k, a_{k,i}, b_{k,i}} fully
describes the distribution, and the class is closed under independent
sums (products of MGFs, e.g. maximal ratio combining) and under finite
mixtures, which is what makes a generic analysis pipeline possible.

Everything in this module is immutable and purely functional.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

__all__ = [
    "MonomialFactor",
    "MonomialTerm",
    "PosynomialMGF",
    "ValidationReport",
    "PoleEvaluationError",
    "MixtureWeightError",
    "monomial_mgf",
    "validate",
    "mgf_eval",
    "product",
    "mixture",
    "simplify",
]

# Relative tolerance for treating two poles as equal when merging factors,
# and the exponent magnitude below which a factor is dropped entirely.
POLE_MERGE_RTOL = 1e-12
EXPONENT_DROP_TOL = 1e-14

WEIGHT_SUM_TOL = 1e-9


class PoleEvaluationError(ValueError):
    """The MGF was evaluated at (or within machine tolerance of) a pole."""


class MixtureWeightError(ValueError):
    """Mixture weights are inconsistent with the component list."""


def _as_finite_complex(value, what: str) -> complex:
    z = complex(value)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"{what} must be finite, got {value!r}")
    return z


def _as_finite_float(value, what: str) -> float:
    x = float(value)
    if not math.isfinite(x):
        raise ValueError(f"{what} must be finite, got {value!r}")
    return x


@dataclass(frozen=True)
class MonomialFactor:
    """One factor (1 - s/a)**(-b) of a monomial term.

    ``a`` is the pole parameter (units of 1/SNR, real part must be
    positive for an admissible MGF) and ``b`` the real exponent.
    """

    a: complex
    b: float

    def __post_init__(self):
        object.__setattr__(self, "a", _as_finite_complex(self.a, "pole parameter a"))
        object.__setattr__(self, "b", _as_finite_float(self.b, "exponent b"))


@dataclass(frozen=True)
class MonomialTerm:
    """One weighted product term c * prod_i (1 - s/a_i)**(-b_i)."""

    c: float
    factors: tuple[MonomialFactor, ...]

    def __post_init__(self):
        object.__setattr__(self, "c", _as_finite_float(self.c, "term weight c"))
        factors = tuple(self.factors)
        if not factors:
            raise ValueError("a monomial term requires at least one factor")
        if not all(isinstance(f, MonomialFactor) for f in factors):
            factors = tuple(MonomialFactor(a, b) for a, b in factors)
        object.__setattr__(self, "factors", factors)

    def exponent_sum(self) -> float:
        """Sum of the factor exponents; the term's diversity exponent."""
        return math.fsum(f.b for f in self.factors)


@dataclass(frozen=True)
class PosynomialMGF:
    """A complete posynomial MGF: a nonempty tuple of monomial terms."""

    terms: tuple[MonomialTerm, ...]

    def __post_init__(self):
        terms = tuple(self.terms)
        if not terms:
            raise ValueError("a posynomial MGF requires at least one term")
        object.__setattr__(self, "terms", terms)

    @property
    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def to_dict(self) -> dict:
        """Canonical JSON-ready form: {"terms": [{"c", "factors": [...]}]}."""
        return {
            "terms": [
                {
                    "c": term.c,
                    "factors": [
                        {"a_re": f.a.real, "a_im": f.a.imag, "b": f.b}
                        for f in term.factors
                    ],
                }
                for term in self.terms
            ]
        }

    @staticmethod
    def from_dict(data: dict) -> "PosynomialMGF":
        try:
            terms = tuple(
                MonomialTerm(
                    c=float(t["c"]),
                    factors=tuple(
                        MonomialFactor(
                            complex(float(f["a_re"]), float(f.get("a_im", 0.0))),
                            float(f["b"]),
                        )
                        for f in t["factors"]
                    ),
                )
                for t in data["terms"]
            )
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed posynomial MGF document: {exc}") from exc
        return PosynomialMGF(terms)


def monomial_mgf(factors: Iterable[tuple[complex, float]], c: float = 1.0) -> PosynomialMGF:
    """Build a single-term MGF from (pole, exponent) pairs."""
    return PosynomialMGF((MonomialTerm(c, tuple(MonomialFactor(a, b) for a, b in factors)),))


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of the admissibility check.

    ``violations`` holds (condition id, detail) pairs; ``ok`` is true iff
    it is empty.  ``warnings`` carries advisories that do not invalidate
    the MGF (currently only negative term weights, which break the
    mixture-of-distributions reading but not the algebra).
    """

    ok: bool
    violations: tuple[tuple[str, str], ...]
    warnings: tuple[str, ...] = field(default=())


def validate(mgf: PosynomialMGF) -> ValidationReport:
    """Check the three admissibility conditions of the posynomial class.

    Per factor Re[a] > 0, per term sum_i b_i > 0, and sum_k c_k = 1
    (within 1e-9).  Complex poles must additionally come in conjugate
    pairs with equal exponents so the MGF is real on the real axis.
    Violations are reported, never raised.
    """
    violations: list[tuple[str, str]] = []
    warnings: list[str] = []
    for k, term in enumerate(mgf.terms):
        for i, f in enumerate(term.factors):
            if not f.a.real > 0:
                violations.append(
                    ("pole-real-part",
                     f"term {k} factor {i}: Re[a] > 0 fails (Re[a] = {f.a.real:g})")
                )
        bsum = term.exponent_sum()
        if not bsum > 0:
            violations.append(
                ("exponent-sum", f"term {k}: sum of b > 0 fails ({bsum:g})")
            )
        violations.extend(_conjugate_pair_violations(k, term))
        if term.c < 0:
            warnings.append(
                f"term {k}: negative weight c = {term.c:g}; "
                "mixture interpretation as probabilities does not apply"
            )
    csum = math.fsum(t.c for t in mgf.terms)
    if abs(csum - 1.0) > WEIGHT_SUM_TOL:
        violations.append(
            ("weight-sum", f"sum of c = 1 fails ({csum:.12g})")
        )
    return ValidationReport(ok=not violations, violations=tuple(violations),
                            warnings=tuple(warnings))


def _conjugate_pair_violations(k: int, term: MonomialTerm) -> list[tuple[str, str]]:
    unpaired = [f for f in term.factors if f.a.imag != 0.0]
    out = []
    while unpaired:
        f = unpaired.pop()
        mate = None
        for g in unpaired:
            if (_close(g.a, f.a.conjugate(), POLE_MERGE_RTOL)
                    and abs(g.b - f.b) <= POLE_MERGE_RTOL * max(1.0, abs(f.b))):
                mate = g
                break
        if mate is None:
            out.append(
                ("conjugate-pairs",
                 f"term {k}: complex pole {f.a:g} lacks a conjugate partner with equal b")
            )
        else:
            unpaired.remove(mate)
    return out


def _close(x: complex, y: complex, rtol: float) -> bool:
    return abs(x - y) <= rtol * max(abs(x), abs(y))


def mgf_eval(mgf: PosynomialMGF, s: complex) -> complex:
    """Evaluate M(s) = sum_k c_k prod_i (1 - s/a_i)**(-b_i).

    Uses the principal branch of the complex power.  Raises
    PoleEvaluationError when s falls within machine tolerance of a pole
    with positive exponent.
    """
    s = complex(s)
    total = 0j
    for term in mgf.terms:
        prod = 1 + 0j
        for f in term.factors:
            ratio = s / f.a
            base = 1.0 - ratio
            if f.b > 0 and abs(base) <= 1e-13 * (1.0 + abs(ratio)):
                raise PoleEvaluationError(
                    f"s = {s:g} coincides with pole a = {f.a:g}"
                )
            prod *= base ** (-f.b)
        total += term.c * prod
    return total


def product(left: PosynomialMGF, right: PosynomialMGF) -> PosynomialMGF:
    """MGF of the sum of two independent SNRs (distributive term product)."""
    terms = tuple(
        MonomialTerm(tl.c * tr.c, tl.factors + tr.factors)
        for tl in left.terms
        for tr in right.terms
    )
    return PosynomialMGF(terms)


def mixture(weights: Sequence[float], components: Sequence[PosynomialMGF]) -> PosynomialMGF:
    """MGF of a randomly selected scenario: flattened weighted terms."""
    if len(weights) != len(components):
        raise MixtureWeightError(
            f"{len(weights)} weights for {len(components)} components"
        )
    wsum = math.fsum(weights)
    if abs(wsum - 1.0) > WEIGHT_SUM_TOL:
        raise MixtureWeightError(f"mixture weights sum to {wsum:.12g}, expected 1")
    terms = tuple(
        MonomialTerm(w * t.c, t.factors)
        for w, comp in zip(weights, components)
        for t in comp.terms
    )
    return PosynomialMGF(terms)


def simplify(mgf: PosynomialMGF) -> PosynomialMGF:
    """Canonicalize: merge equal poles within each term, drop null exponents.

    Poles equal within relative tolerance 1e-12 are merged by summing
    exponents; factors with |b| <= 1e-14 are removed.  Factor order is
    made deterministic by sorting on (Re a, Im a, b).  The evaluated MGF
    is unchanged.
    """
    new_terms = []
    for term in mgf.terms:
        ordered = sorted(term.factors, key=lambda f: (f.a.real, f.a.imag, f.b))
        merged: list[list] = []  # [pole, exponent sum]
        for f in ordered:
            if merged and _close(merged[-1][0], f.a, POLE_MERGE_RTOL):
                merged[-1][1] += f.b
            else:
                merged.append([f.a, f.b])
        kept = tuple(
            MonomialFactor(a, b) for a, b in merged if abs(b) > EXPONENT_DROP_TOL
        )
        if not kept:
            raise ValueError(
                "simplification removed every factor of a term; "
                "input violates the positive exponent-sum condition"
            )
        new_terms.append(MonomialTerm(term.c, kept))
    return PosynomialMGF(tuple(new_terms))
