"""Gamma function and quadrature engine tests."""

import math

import numpy as np
import pytest

import reference as ref
from zetadist.errors import DomainError, NonConvergence, PoleError
from zetadist.numerics import (QuadratureConfig, QuadratureResult, gamma,
                               gamma_real, integrate_finite,
                               integrate_halfline, integrate_plane,
                               integrate_realline, log_gamma)


def rel_err(x, y):
    return abs(complex(x) - complex(y)) / abs(complex(y))


class TestGamma:
    def test_gamma_one(self):
        assert log_gamma(1.0) == 0.0
        assert gamma(1.0) == 1.0

    def test_gamma_half(self):
        assert abs(log_gamma(0.5).real - ref.LOG_SQRTPI) < 1e-14
        assert abs(gamma(0.5).real - ref.SQRTPI) < 1e-14

    def test_gamma_factorial(self):
        assert rel_err(gamma(4.0), 6.0) < 1e-14

    def test_gamma_complex_reference(self):
        assert rel_err(gamma(0.5 + 3.0j), ref.GAMMA_HALF_3I) < 1e-13

    def test_gamma_one_plus_i(self):
        assert rel_err(gamma(1.0 + 1.0j), ref.GAMMA_1_PLUS_I) < 1e-13

    @pytest.mark.parametrize("s", [-0.5, -1.5, -0.5 + 10.0j, -3.2 - 4.0j])
    def test_reflection_region(self, s):
        # Gamma(s) Gamma(1-s) sin(pi s) = pi
        lhs = gamma(s) * gamma(1.0 - s) * np.sin(np.pi * complex(s))
        assert rel_err(lhs, math.pi) < 1e-10

    def test_reflection_grid(self):
        res = [complex(sig, t) for sig in (0.1, 0.3, 0.5, 0.7, 0.9)
               for t in (-10.0, -2.0, 0.5, 3.0, 10.0)]
        for s in res:
            lhs = gamma(s) * gamma(1.0 - s) * np.sin(np.pi * s) / math.pi
            assert abs(lhs - 1.0) < 1e-10, s

    def test_recurrence(self):
        for s in (0.3, 1.7, 2.0 + 5.0j, 0.4 - 3.0j, 8.0 + 20.0j):
            assert rel_err(gamma(s + 1.0), s * gamma(s)) < 1e-12

    @pytest.mark.parametrize("sigma", [0.3, 0.7, 1.5, 3.0])
    @pytest.mark.parametrize("t", [0.0, 1.0, 5.0])
    def test_modulus_bound(self, sigma, t):
        assert abs(gamma(complex(sigma, t))) <= gamma_real(sigma) * (1 + 1e-12)

    @pytest.mark.parametrize("t", [0.5, 2.0, 10.0])
    def test_modulus_bound_07(self, t):
        assert abs(gamma(complex(0.7, t))) <= gamma_real(0.7)

    @pytest.mark.parametrize("s", [0.0, -1.0, -7.0])
    def test_pole_error(self, s):
        with pytest.raises(PoleError):
            log_gamma(s)

    def test_near_pole_tolerance(self):
        with pytest.raises(PoleError):
            gamma(-2.0 + 1e-13)

    def test_nonfinite_rejected(self):
        with pytest.raises(DomainError):
            log_gamma(complex(np.inf, 0.0))


class TestHalfline:
    def test_exp(self):
        r = integrate_halfline(lambda x: np.exp(-x))
        assert abs(r.value - 1.0) < 1e-11
        assert r.err_estimate >= 0.0

    def test_x_exp(self):
        r = integrate_halfline(lambda x: x * np.exp(-x))
        assert abs(r.value - 1.0) < 1e-11

    def test_sqrt_singularity(self):
        r = integrate_halfline(lambda x: x ** -0.5 * np.exp(-x))
        assert abs(r.value - ref.SQRTPI) < 1e-10

    def test_budget_exhaustion(self):
        cfg = QuadratureConfig(rel_tol=1e-13, abs_tol=1e-15, max_nodes=40)
        with pytest.raises(NonConvergence):
            integrate_halfline(lambda x: x ** -0.5 * np.exp(-x), cfg)

    def test_polynomial_tail(self):
        r = integrate_halfline(lambda x: (1.0 + x) ** -2.5)
        assert abs(r.value - 1.0 / 1.5) < 1e-11


class TestRealline:
    def test_gaussian(self):
        r = integrate_realline(lambda y: np.exp(-y * y))
        assert abs(r.value - ref.SQRTPI) < 1e-11

    def test_exp_substitution_identity(self):
        r = integrate_realline(lambda y: np.exp(y) * np.exp(-np.exp(y)))
        assert abs(r.value - 1.0) < 1e-11

    def test_oscillatory_gamma(self):
        r = integrate_realline(
            lambda y: np.exp(1j * y) * np.exp(y) * np.exp(-np.exp(y)))
        assert rel_err(r.value, ref.GAMMA_1_PLUS_I) < 1e-11

    def test_nonconvergent_constant(self):
        with pytest.raises(NonConvergence):
            integrate_realline(lambda y: np.ones_like(y))


class TestPlane:
    def test_product_exponential(self):
        r = integrate_plane(lambda x, y: np.exp(-x - y), domain="quadrant")
        assert abs(r.value - 1.0) < 1e-9

    def test_xy_exponential(self):
        r = integrate_plane(lambda x, y: x * y * np.exp(-x - y), domain="quadrant")
        assert abs(r.value - 1.0) < 1e-9

    def test_double_zeta_integrand(self):
        # y^{s2-1}/(e^y - 1) x^{s1-1} e^{(1-a)(x+y)}/(e^{x+y} - 1) at
        # s1 = s2 = 2, a = 1 integrates to the symmetric double-sum value
        def f(x, y):
            s = x + y
            return (y * np.exp(-y) / (-np.expm1(-y))
                    * x * np.exp(-s) / (-np.expm1(-s)))

        r = integrate_plane(f, domain="quadrant")
        assert rel_err(r.value, ref.ZETA2_22) < 1e-9

    def test_fubini_orders_agree(self):
        f = lambda x, y: x * np.exp(-x - 2 * y)
        r1 = integrate_plane(f, domain="quadrant", order="xy")
        r2 = integrate_plane(f, domain="quadrant", order="yx")
        assert abs(r1.value - r2.value) < 10 * (r1.err_estimate + r2.err_estimate + 1e-12)

    def test_plane_gaussian(self):
        f = lambda x, y: np.exp(-(x * x + y * y))
        r = integrate_plane(f, domain="plane")
        assert abs(r.value - math.pi) < 1e-8


class TestConfig:
    def test_rel_tol_floor(self):
        with pytest.raises(DomainError):
            QuadratureConfig(rel_tol=1e-17)

    def test_min_nodes(self):
        with pytest.raises(DomainError):
            QuadratureConfig(max_nodes=10)

    def test_result_invariants(self):
        r = integrate_halfline(lambda x: np.exp(-x))
        assert r.err_estimate >= 0.0
        assert r.nodes_used <= QuadratureConfig().max_nodes
        with pytest.raises(ValueError):
            QuadratureResult(value=1.0, err_estimate=-1.0, nodes_used=3)

    def test_finite_interval_singular_endpoint(self):
        r = integrate_finite(lambda x: 1.0 / np.sqrt(x), 0.0, 1.0)
        assert abs(r.value - 2.0) < 1e-11
