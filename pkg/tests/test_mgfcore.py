"""Coefficient-model tests: admissibility checks, evaluation, algebra."""

import math

import numpy as np
import pytest

from fadinglab.mgfcore import (
    MixtureWeightError,
    MonomialFactor,
    MonomialTerm,
    PoleEvaluationError,
    PosynomialMGF,
    mgf_eval,
    mixture,
    monomial_mgf,
    product,
    simplify,
    validate,
)

RAYLEIGH = monomial_mgf([(1.0, 1.0)])
NAKAGAMI2 = monomial_mgf([(2.0, 2.0)])
HOYT_HALF = monomial_mgf([(2.5, 0.5), (0.625, 0.5)])  # q = 0.5, unit mean SNR


def two_term():
    return PosynomialMGF((
        MonomialTerm(0.4, (MonomialFactor(1.0, 1.0),)),
        MonomialTerm(0.6, (MonomialFactor(2.0, 0.5), MonomialFactor(3.0, 2.0))),
    ))


def three_term():
    return PosynomialMGF((
        MonomialTerm(0.25, (MonomialFactor(0.5, 1.5),)),
        MonomialTerm(0.25, (MonomialFactor(1.5, 0.5), MonomialFactor(4.0, 1.0))),
        MonomialTerm(0.5, (MonomialFactor(2.0, 2.0),)),
    ))


class TestValidate:
    def test_rayleigh_ok(self):
        report = validate(RAYLEIGH)
        assert report.ok
        assert report.violations == ()

    def test_exponent_sum_violation(self):
        bad = monomial_mgf([(1.0, 0.3), (2.0, -0.5)])
        report = validate(bad)
        assert not report.ok
        ids = [cid for cid, _ in report.violations]
        assert ids == ["exponent-sum"]
        assert "-0.2" in report.violations[0][1]

    def test_weight_sum_violation(self):
        bad = PosynomialMGF((
            MonomialTerm(0.6, (MonomialFactor(1.0, 1.0),)),
            MonomialTerm(0.6, (MonomialFactor(2.0, 1.0),)),
        ))
        report = validate(bad)
        assert not report.ok
        assert report.violations[0][0] == "weight-sum"
        assert "1.2" in report.violations[0][1]

    def test_pole_real_part_violation(self):
        bad = monomial_mgf([(-1.0, 1.0)])
        report = validate(bad)
        assert [cid for cid, _ in report.violations] == ["pole-real-part"]

    def test_negative_weight_warns_but_ok(self):
        mgf = PosynomialMGF((
            MonomialTerm(1.5, (MonomialFactor(1.0, 1.0),)),
            MonomialTerm(-0.5, (MonomialFactor(2.0, 1.0),)),
        ))
        report = validate(mgf)
        assert report.ok
        assert len(report.warnings) == 1

    def test_conjugate_pair_accepted(self):
        mgf = monomial_mgf([(1 + 1j, 0.5), (1 - 1j, 0.5)])
        assert validate(mgf).ok

    def test_lone_complex_pole_rejected(self):
        mgf = monomial_mgf([(1 + 1j, 0.5), (1.0, 0.5)])
        report = validate(mgf)
        assert [cid for cid, _ in report.violations] == ["conjugate-pairs"]


class TestEval:
    def test_value_at_zero_is_one_exactly(self):
        for mgf in (RAYLEIGH, NAKAGAMI2, HOYT_HALF, two_term(), three_term()):
            assert mgf_eval(mgf, 0.0) == 1.0 + 0.0j

    def test_rayleigh_point(self):
        assert mgf_eval(RAYLEIGH, -1.0).real == pytest.approx(0.5, abs=1e-15)

    def test_nakagami_point(self):
        assert mgf_eval(NAKAGAMI2, -2.0).real == pytest.approx(0.25, abs=1e-15)

    def test_pole_raises(self):
        with pytest.raises(PoleEvaluationError):
            mgf_eval(RAYLEIGH, 1.0)

    def test_real_on_real_axis_with_conjugate_pair(self):
        mgf = monomial_mgf([(1 + 1j, 0.5), (1 - 1j, 0.5)])
        val = mgf_eval(mgf, -0.7)
        assert abs(val.imag) < 1e-15


class TestProduct:
    def test_rayleigh_pair_concatenates(self):
        prod = product(RAYLEIGH, RAYLEIGH)
        assert prod.is_monomial
        assert [(f.a, f.b) for f in prod.terms[0].factors] == [(1 + 0j, 1.0)] * 2

    def test_monomial_closure(self):
        assert product(NAKAGAMI2, HOYT_HALF).is_monomial

    def test_pointwise_multiplication(self):
        left, right = two_term(), three_term()
        prod = product(left, right)
        assert len(prod.terms) == 6
        s = -0.7
        expected = mgf_eval(left, s) * mgf_eval(right, s)
        assert abs(mgf_eval(prod, s) - expected) < 1e-12

    def test_multiplicative_at_random_points(self):
        rng = np.random.default_rng(11)
        left, right = two_term(), three_term()
        prod = product(left, right)
        for _ in range(16):
            s = complex(-3.0 * rng.random(), 2.0 * rng.random() - 1.0)
            expected = mgf_eval(left, s) * mgf_eval(right, s)
            assert abs(mgf_eval(prod, s) - expected) < 1e-12

    def test_commutative_and_associative_values(self):
        a, b, c = RAYLEIGH, NAKAGAMI2, HOYT_HALF
        s = -1.3
        ab_c = mgf_eval(product(product(a, b), c), s)
        a_bc = mgf_eval(product(a, product(b, c)), s)
        ba_c = mgf_eval(product(product(b, a), c), s)
        assert abs(ab_c - a_bc) < 1e-12
        assert abs(ab_c - ba_c) < 1e-12

    def test_closure_validates(self):
        assert validate(product(two_term(), three_term())).ok


class TestMixture:
    def test_identity(self):
        assert mixture([1.0], [NAKAGAMI2]) == NAKAGAMI2

    def test_equal_components(self):
        mix = mixture([0.5, 0.5], [RAYLEIGH, RAYLEIGH])
        assert len(mix.terms) == 2
        assert abs(mgf_eval(mix, -1.0) - mgf_eval(RAYLEIGH, -1.0)) < 1e-12

    def test_linearity(self):
        mix = mixture([0.3, 0.7], [HOYT_HALF, NAKAGAMI2])
        expected = 0.3 * mgf_eval(HOYT_HALF, -1.0) + 0.7 * mgf_eval(NAKAGAMI2, -1.0)
        assert abs(mgf_eval(mix, -1.0) - expected) < 1e-12

    def test_linearity_random_points(self):
        rng = np.random.default_rng(5)
        comps = [RAYLEIGH, NAKAGAMI2, HOYT_HALF]
        weights = [0.2, 0.3, 0.5]
        mix = mixture(weights, comps)
        for _ in range(16):
            s = -4.0 * rng.random()
            expected = sum(w * mgf_eval(c, s) for w, c in zip(weights, comps))
            assert abs(mgf_eval(mix, s) - expected) < 1e-12

    def test_weight_sum_error(self):
        with pytest.raises(MixtureWeightError):
            mixture([0.5, 0.6], [RAYLEIGH, NAKAGAMI2])

    def test_length_mismatch_error(self):
        with pytest.raises(MixtureWeightError):
            mixture([1.0], [RAYLEIGH, NAKAGAMI2])

    def test_closure_validates(self):
        assert validate(mixture([0.25, 0.75], [two_term(), three_term()])).ok


class TestSimplify:
    def test_merges_equal_poles(self):
        mgf = monomial_mgf([(1.0, 1.0), (1.0, 1.0)])
        out = simplify(mgf)
        assert [(f.a, f.b) for f in out.terms[0].factors] == [(1 + 0j, 2.0)]

    def test_cancellation_drops_factor(self):
        mgf = monomial_mgf([(1.0, 1.0), (1.0, -1.0), (2.0, 0.5)])
        out = simplify(mgf)
        assert [(f.a, f.b) for f in out.terms[0].factors] == [(2 + 0j, 0.5)]

    def test_eval_invariant_at_random_points(self):
        rng = np.random.default_rng(23)
        mgf = PosynomialMGF((
            MonomialTerm(0.4, (
                MonomialFactor(1.0, 0.75), MonomialFactor(1.0, 0.25),
                MonomialFactor(3.0, 1.0),
            )),
            MonomialTerm(0.6, (
                MonomialFactor(2.0, 2.0), MonomialFactor(2.0 + 1e-15, 1.0),
            )),
        ))
        out = simplify(mgf)
        for _ in range(32):
            s = -10.0 * rng.random()
            assert abs(mgf_eval(out, s) - mgf_eval(mgf, s)) < 1e-12

    def test_canonical_factor_order(self):
        mgf = monomial_mgf([(3.0, 1.0), (1.0, 2.0), (2.0, 0.5)])
        out = simplify(mgf)
        poles = [f.a.real for f in out.terms[0].factors]
        assert poles == sorted(poles)

    def test_full_cancellation_rejected(self):
        mgf = monomial_mgf([(1.0, 1.0), (1.0, -1.0)])
        with pytest.raises(ValueError):
            simplify(mgf)


class TestConstruction:
    def test_empty_terms_rejected(self):
        with pytest.raises(ValueError):
            PosynomialMGF(())

    def test_empty_factors_rejected(self):
        with pytest.raises(ValueError):
            MonomialTerm(1.0, ())

    def test_nonfinite_rejected(self):
        with pytest.raises(ValueError):
            MonomialFactor(math.inf, 1.0)
        with pytest.raises(ValueError):
            MonomialFactor(1.0, math.nan)


class TestSerialization:
    def test_round_trip(self):
        mgf = three_term()
        again = PosynomialMGF.from_dict(mgf.to_dict())
        assert again == mgf

    def test_schema_keys(self):
        doc = RAYLEIGH.to_dict()
        assert list(doc) == ["terms"]
        assert list(doc["terms"][0]) == ["c", "factors"]
        assert list(doc["terms"][0]["factors"][0]) == ["a_re", "a_im", "b"]

    def test_malformed_rejected(self):
        with pytest.raises(ValueError):
            PosynomialMGF.from_dict({"terms": [{"c": 1.0}]})
