"""Special-function kernel tests against independent reference routes.

The Lauricella integral is checked against a composite-Simpson
evaluation of the Euler integral (split at u = 1/2 with square-root
substitutions at both endpoints, so Simpson converges at full order);
the confluent series is checked against the raw double series and
against the Laplace-inversion route.
"""

import math

import numpy as np
import pytest

from fadinglab.mgfcore import monomial_mgf
from fadinglab.specfun import (
    IntegrandPoleError,
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


# ---------------------------------------------------------------------------
# reference implementations (kept deliberately naive)
# ---------------------------------------------------------------------------


def simpson(f, a, b, panels):
    x = np.linspace(a, b, 2 * panels + 1)
    y = f(x)
    h = (b - a) / (2 * panels)
    return h / 3 * (y[0] + y[-1] + 4 * y[1:-1:2].sum() + 2 * y[2:-2:2].sum())


def euler_integral_simpson(alpha, bvec, cparam, xvec, panels=500_000):
    """Brute-force F_D: Simpson on the Euler integral, 2 * panels panels.

    Substituting u = v^2 on [0, 1/2] and 1 - u = w^2 on [1/2, 1] removes
    both endpoint singularities, so composite Simpson keeps its O(h^4)
    rate.
    """
    def factors(u):
        out = np.ones_like(u)
        for b, x in zip(bvec, xvec):
            out = out * (1.0 - x * u) ** (-b)
        return out

    def left(v):
        u = v * v
        return 2 * v * u ** (alpha - 1) * (1 - u) ** (cparam - alpha - 1) * factors(u)

    def right(w):
        u = 1 - w * w
        return 2 * w * u ** (alpha - 1) * (w * w) ** (cparam - alpha - 1) * factors(u)

    half = math.sqrt(0.5)
    raw = simpson(left, 0.0, half, panels) + simpson(right, 0.0, half, panels)
    beta = math.exp(math.lgamma(alpha) + math.lgamma(cparam - alpha) - math.lgamma(cparam))
    return raw / beta


def pochhammer(a, n):
    out = 1.0
    for i in range(n):
        out *= a + i
    return out


def phi2_raw_series(b1, b2, c, x1, x2, orders=60):
    """Direct double series; trustworthy only for small |x|."""
    total = 0.0
    for j in range(orders):
        for k in range(orders):
            total += (
                pochhammer(b1, j) * pochhammer(b2, k) / pochhammer(c, j + k)
                * x1**j * x2**k / (math.factorial(j) * math.factorial(k))
            )
    return total


def hyp2f1_direct_series(a, b, c, x, max_terms=500):
    total, term = 1.0, 1.0
    for n in range(max_terms):
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * x
        total += term
        if abs(term) < 1e-17 * abs(total):
            break
    return total


class TestGaussianQ:
    def test_zero(self):
        assert gaussian_q(0.0) == 0.5

    def test_deep_tail(self):
        assert gaussian_q(40.0) < 1e-300

    def test_reference_point(self):
        assert gaussian_q(1.0) == pytest.approx(0.15865525393145707, rel=1e-14)

    def test_symmetry(self):
        for x in np.linspace(-8, 8, 33):
            assert gaussian_q(x) + gaussian_q(-x) == pytest.approx(1.0, abs=1e-14)


class TestGauss2F1:
    def test_at_zero(self):
        assert gauss_2f1(0.3, 4.2, 1.7, 0.0) == 1.0

    def test_log_identity(self):
        # 2F1(1,1;2;x) = -log(1-x)/x
        assert gauss_2f1(1.0, 1.0, 2.0, 0.5) == pytest.approx(2 * math.log(2), rel=1e-13)

    def test_negative_argument_vs_pfaff_series(self):
        # 2F1(a,b;c;x) = (1-x)^(-a) 2F1(a, c-b; c; x/(x-1))
        a, b, c, x = 0.5, 1.0, 2.5, -4.0
        reference = (1 - x) ** (-a) * hyp2f1_direct_series(a, c - b, c, x / (x - 1))
        assert gauss_2f1(a, b, c, x) == pytest.approx(reference, rel=1e-12)

    def test_direct_series_inside_disc(self):
        a, b, c, x = 0.75, 1.25, 3.0, 0.6
        assert gauss_2f1(a, b, c, x) == pytest.approx(
            hyp2f1_direct_series(a, b, c, x), rel=1e-12
        )

    def test_domain_error(self):
        with pytest.raises(ValueError):
            gauss_2f1(1.0, 1.0, 2.0, 1.0)

    def test_bad_c(self):
        with pytest.raises(ValueError):
            gauss_2f1(1.0, 1.0, -2.0, 0.5)


class TestKummer1F1:
    def test_at_zero(self):
        assert kummer_1f1(0.7, 1.9, 0.0) == 1.0

    def test_exp_identity(self):
        # 1F1(1;2;x) = (e^x - 1)/x
        assert kummer_1f1(1.0, 2.0, 1.0) == pytest.approx(math.e - 1.0, rel=1e-13)

    def test_kummer_transformation_consistency(self):
        lhs = kummer_1f1(2.0, 3.0, -2.0)
        rhs = math.exp(-2.0) * kummer_1f1(1.0, 3.0, 2.0)
        assert lhs == pytest.approx(rhs, rel=1e-12)

    def test_moderate_negative_argument(self):
        # 1F1(1;2;x) identity at x = -50, the edge of the accuracy window
        x = -50.0
        assert kummer_1f1(1.0, 2.0, x) == pytest.approx(math.expm1(x) / x, rel=1e-12)

    def test_bad_b(self):
        with pytest.raises(ValueError):
            kummer_1f1(1.0, 0.0, 0.5)


class TestRegGammaQ:
    def test_at_zero(self):
        assert reg_gamma_q(3.7, 0.0) == 1.0

    def test_exponential_tail(self):
        assert reg_gamma_q(1.0, 1.0) == pytest.approx(math.exp(-1.0), rel=1e-13)

    def test_shape_two(self):
        # Gamma(2, x) = e^-x (1 + x)
        assert reg_gamma_q(2.0, 2.0) == pytest.approx(3 * math.exp(-2.0), rel=1e-13)

    def test_domain(self):
        with pytest.raises(ValueError):
            reg_gamma_q(0.0, 1.0)
        with pytest.raises(ValueError):
            reg_gamma_q(1.0, -0.5)


class TestLauricellaFd:
    def test_all_zero_arguments(self):
        assert lauricella_fd(1.5, [1.0, 2.0], 2.5, [0.0, 0.0]) == 1.0

    def test_reduces_to_2f1(self):
        fd = lauricella_fd(1.5, [1.0], 2.0, [-0.5])
        assert fd == pytest.approx(gauss_2f1(1.5, 1.0, 2.0, -0.5), abs=1e-11)

    def test_against_simpson_brute_force(self):
        fd = lauricella_fd(1.5, [1.0], 2.0, [-1.0])
        reference = euler_integral_simpson(1.5, [1.0], 2.0, [-1.0])
        assert fd == pytest.approx(reference, abs=1e-10)

    def test_two_variables_against_simpson(self):
        args = (2.5, [0.5, 2.0], 3.0, [-0.3, -5.0])
        assert lauricella_fd(*args) == pytest.approx(
            euler_integral_simpson(*args), abs=1e-10
        )

    def test_negative_exponent_against_simpson(self):
        args = (1.5, [-1.0, 2.0], 2.5, [-3.0, -0.9])
        assert lauricella_fd(*args) == pytest.approx(
            euler_integral_simpson(*args), abs=1e-10
        )

    def test_zero_argument_factor_drops(self):
        full = lauricella_fd(2.0, [0.5, 1.5], 3.0, [-2.0, 0.0])
        reduced = lauricella_fd(2.0, [0.5], 3.0, [-2.0])
        assert full == pytest.approx(reduced, abs=1e-11)

    def test_tanh_sinh_agrees(self):
        cfg = QuadratureConfig(method="tanh-sinh")
        for args in [(1.5, [1.0], 2.0, [-1.0]), (3.0, [0.5, 2.0], 3.5, [-0.2, -8.0])]:
            assert lauricella_fd(*args, cfg=cfg) == pytest.approx(
                lauricella_fd(*args), abs=1e-11
            )

    def test_full_output_error_estimate(self):
        value, err = lauricella_fd(1.5, [1.0], 2.0, [-1.0], full_output=True)
        assert err >= 0.0
        assert abs(value - euler_integral_simpson(1.5, [1.0], 2.0, [-1.0])) <= max(err, 1e-10)

    def test_pole_raises(self):
        with pytest.raises(IntegrandPoleError):
            lauricella_fd(1.5, [1.0], 2.0, [2.0])

    def test_parameter_domain(self):
        with pytest.raises(ValueError):
            lauricella_fd(2.0, [1.0], 1.5, [-1.0])

    def test_config_invariants(self):
        with pytest.raises(ValueError):
            QuadratureConfig(nodes=4)
        with pytest.raises(ValueError):
            QuadratureConfig(tol=0.0)
        with pytest.raises(ValueError):
            QuadratureConfig(method="simpson")


class TestPhi2:
    def test_all_zero(self):
        assert phi2_series([0.5, 0.5], 2.0, [0.0, 0.0]) == 1.0

    def test_n1_is_kummer(self):
        assert phi2_series([2.0], 3.0, [-1.0]) == pytest.approx(
            kummer_1f1(2.0, 3.0, -1.0), abs=1e-13
        )

    @pytest.mark.parametrize("params", [
        (0.5, 0.5, 2.0, -0.5, -1.5),
        (0.7, 0.3, 2.1, -0.4, -1.1),
        (-1.0, 2.0, 2.0, -2.4, -0.8),
        (1.5, 0.25, 3.0, -3.0, -3.0),
    ])
    def test_against_raw_double_series(self, params):
        b1, b2, c, x1, x2 = params
        assert phi2_series([b1, b2], c, [x1, x2]) == pytest.approx(
            phi2_raw_series(b1, b2, c, x1, x2), rel=1e-12, abs=1e-13
        )

    def test_argument_symmetry(self):
        a = phi2_series([0.5, 1.5], 3.0, [-4.0, -1.0])
        b = phi2_series([1.5, 0.5], 3.0, [-1.0, -4.0])
        assert a == pytest.approx(b, rel=1e-13)

    def test_against_laplace_inversion(self):
        # CDF of the two-factor coefficient set (a1, a2) = (0.5, 1.5),
        # b = (1/2, 1/2) at t=1 equals sqrt(a1 a2) * Phi_2 / Gamma(2)
        b = [0.5, 0.5]
        phi = phi2_series(b, 2.0, [-0.5, -1.5])
        mgf = monomial_mgf([(0.5, 0.5), (1.5, 0.5)])
        cdf = bromwich_cdf(mgf, 1.0, tol=1e-10)
        assert math.sqrt(0.75) * phi == pytest.approx(cdf, abs=1e-8)

    def test_window_enforced(self):
        with pytest.raises(ValueError):
            phi2_series([0.5, 0.5], 2.0, [-20.0, -20.0])

    def test_positive_argument_rejected(self):
        with pytest.raises(ValueError):
            phi2_series([0.5], 2.0, [1.0])

    def test_three_variables_rejected(self):
        with pytest.raises(ValueError):
            phi2_series([0.5] * 3, 2.5, [-1.0] * 3)

    def test_config_invariants(self):
        with pytest.raises(ValueError):
            SeriesConfig(max_order=0)
        with pytest.raises(ValueError):
            SeriesConfig(tol=-1.0)


RAYLEIGH = monomial_mgf([(1.0, 1.0)])
NAKAGAMI2 = monomial_mgf([(2.0, 2.0)])

TABLE_CHANNELS = {
    "rayleigh": RAYLEIGH,
    "hoyt": monomial_mgf([(2.5, 0.5), (0.625, 0.5)]),
    "nakagami": NAKAGAMI2,
    "rician_shadowed": monomial_mgf([(6.0, -1.0), (12.0 / 7.0, 2.0)]),
    "eta_mu": monomial_mgf([(1.5, 1.0), (3.0, 1.0)]),
}


class TestBromwichCdf:
    def test_rayleigh_point(self):
        assert bromwich_cdf(RAYLEIGH, 1.0) == pytest.approx(
            1 - math.exp(-1.0), abs=1e-9
        )

    def test_nakagami_point(self):
        assert bromwich_cdf(NAKAGAMI2, 1.0) == pytest.approx(
            1 - 3 * math.exp(-2.0), abs=1e-9
        )

    def test_vanishes_at_origin(self):
        for mgf in TABLE_CHANNELS.values():
            assert bromwich_cdf(mgf, 1e-12) <= 1e-6

    @pytest.mark.parametrize("name", sorted(TABLE_CHANNELS))
    def test_nondecreasing(self, name):
        mgf = TABLE_CHANNELS[name]
        grid = np.logspace(-2, 1.3, 50)
        values = [bromwich_cdf(mgf, float(t)) for t in grid]
        diffs = np.diff(values)
        assert diffs.min() >= -2e-9

    @pytest.mark.parametrize("m", [0.5, 1.0, 2.5])
    @pytest.mark.parametrize("t", [0.1, 1.0, 10.0])
    def test_nakagami_closed_form(self, m, t):
        mgf = monomial_mgf([(m, m)])  # unit mean SNR
        expected = 1.0 - reg_gamma_q(m, m * t)
        assert bromwich_cdf(mgf, t) == pytest.approx(expected, abs=1e-8)

    def test_domain(self):
        with pytest.raises(ValueError):
            bromwich_cdf(RAYLEIGH, 0.0)
