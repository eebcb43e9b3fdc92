"""Hurwitz-Lerch zeta evaluation: series, integral continuation, kernel."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import reference as ref
from zetadist.errors import DomainError, NonConvergence, PoleError, RegionError
from zetadist.lerch import (classify_lerch, gamma_phi, h_kernel, hurwitz_zeta,
                            hurwitz_zeta_em, phi, phi_interior, phi_neg1_em,
                            phi_series)
from zetadist.numerics import gamma


def rel_err(x, y):
    return abs(complex(x) - complex(y)) / abs(complex(y))


class TestHKernel:
    def test_small_x_limit_a1(self):
        assert abs(h_kernel(1.0, 1e-10) - (-0.5)) < 1e-9

    def test_small_x_limit_a_half(self):
        assert abs(h_kernel(0.5, 1e-10)) < 1e-9

    def test_value_at_one(self):
        assert abs(h_kernel(1.0, 1.0) - ref.H_1_1) < 1e-14

    def test_domain_error(self):
        with pytest.raises(DomainError):
            h_kernel(1.0, 0.0)
        with pytest.raises(DomainError):
            h_kernel(1.0, -1.0)

    @pytest.mark.parametrize("a", [0.5, 0.7, 1.0])
    def test_negative_for_a_above_half(self, a):
        x = np.geomspace(1e-6, 50.0, 300)
        assert np.all(h_kernel(a, x) < 0.0)

    @pytest.mark.parametrize("a", [0.1, 0.3, 0.49])
    def test_positive_witness_below_half(self, a):
        x = np.geomspace(1e-6, 50.0, 300)
        assert np.any(h_kernel(a, x) > 0.0)


class TestPhiSeries:
    def test_zeta2(self):
        assert rel_err(phi_series(2.0, 1.0, 1.0), ref.ZETA2) < 1e-12

    def test_zeta3(self):
        assert rel_err(phi_series(3.0, 1.0, 1.0), ref.ZETA3) < 1e-12

    def test_interior_brute_force(self):
        # oracle: plain partial sums with geometric stopping
        want = ref.phi_geometric_oracle(2.0, 1.0, 0.5)
        assert rel_err(phi_series(2.0, 1.0, 0.5), want) < 1e-12
        assert abs(want - ref.PHI_2_1_HALF) < 1e-14

    def test_first_term(self):
        # n = 0 term dominates as Re s grows: first term is a^{-s}
        val = phi_series(40.0, 0.3, 0.5)
        assert rel_err(val, 0.3 ** -40.0) < 1e-5

    def test_alternating_log2(self):
        val, _ = phi_neg1_em(1.0, 1.0)
        assert rel_err(val, ref.LOG2) < 1e-13
        # independent pairing oracle
        assert abs(ref.alternating_series_oracle(1.0) - ref.LOG2) < 1e-12

    def test_region_errors(self):
        with pytest.raises(RegionError):
            phi_series(0.8, 1.0, 1.0)   # |z| = 1 needs Re s > 1
        with pytest.raises(RegionError):
            phi_series(-0.5, 1.0, 0.5)  # interior needs Re s > 0

    def test_z_validation(self):
        with pytest.raises(DomainError):
            phi_series(2.0, 1.0, 0.0)
        with pytest.raises(DomainError):
            phi_series(2.0, 1.0, 1.2)
        with pytest.raises(DomainError):
            phi_series(2.0, 1.5, 1.0)

    def test_complex_unit_circle(self):
        z = complex(math.cos(1.0), math.sin(1.0))
        val = phi_series(2.5, 1.0, z, rel_tol=2e-9)
        n = np.arange(2_000_000)
        brute = np.sum(z ** n * (n + 1.0) ** -2.5)
        assert rel_err(val, brute) < 1e-8


class TestEulerMaclaurin:
    @pytest.mark.parametrize("s,a", [(2.0, 1.0), (3.0, 1.0), (1.2, 0.3),
                                     (5.0, 0.44)])
    def test_against_plain_series(self, s, a):
        n = np.arange(2_000_000)
        partial = np.sum((n + a) ** -s)
        tail = (2_000_000 + a) ** (1.0 - s) / (s - 1.0)
        val, bound = hurwitz_zeta_em(s, a)
        assert rel_err(val, partial + tail) < 1e-8
        assert bound < 1e-12

    def test_complex_conjugate_symmetry(self):
        v1, _ = hurwitz_zeta_em(complex(0.7, 2.0), 0.6)
        v2, _ = hurwitz_zeta_em(complex(0.7, -2.0), 0.6)
        assert abs(v1 - v2.conjugate()) < 1e-14

    def test_pole_guard(self):
        with pytest.raises(PoleError):
            hurwitz_zeta_em(1.0 + 1e-12, 1.0)


class TestGammaPhi:
    def test_zeta2_identity(self):
        # Gamma(2) zeta(2) = zeta(2)
        assert rel_err(gamma_phi(2.0, 1.0, 1.0), ref.ZETA2) < 1e-10

    def test_log2(self):
        assert rel_err(gamma_phi(1.0, 1.0, -1.0), ref.LOG2) < 1e-10

    def test_zeta_half(self):
        want = ref.SQRTPI * ref.ZETA_HALF
        assert rel_err(gamma_phi(0.5, 1.0, 1.0), want) < 1e-10

    # overlap agreement between the quadrature and series routes
    @pytest.mark.parametrize("sigma", [1.2, 2.0, 5.0])
    @pytest.mark.parametrize("a", [0.3, 0.5, 1.0])
    @pytest.mark.parametrize("z", [-1.0, -0.5, 0.5, 1.0])
    def test_overlap_series(self, sigma, a, z):
        q = gamma_phi(sigma, a, z)
        srs = gamma(sigma) * phi_series(sigma, a, z)
        assert rel_err(q, srs) < 1e-9

    @pytest.mark.parametrize("s", [complex(2.0, 1.5), complex(1.5, -3.0)])
    def test_overlap_complex(self, s):
        q = gamma_phi(s, 0.5, -0.5)
        srs = gamma(s) * phi_series(s, 0.5, -0.5)
        assert rel_err(q, srs) < 1e-9

    def test_continued_vs_em(self):
        # z = 1, 0 < sigma < 1: quadrature continuation against the
        # Euler-Maclaurin continuation of the series
        for s, a in [(0.5, 1.0), (0.25, 0.5), (0.75, 0.9),
                     (complex(0.5, 2.0), 0.6), (0.98, 0.5)]:
            q = gamma_phi(s, a, 1.0)
            em = gamma(complex(s)) * hurwitz_zeta_em(complex(s), a)[0]
            assert rel_err(q, em) < 1e-9, (s, a)

    def test_region_errors(self):
        with pytest.raises(RegionError):
            gamma_phi(1.0, 1.0, 1.0)     # pole
        with pytest.raises(RegionError):
            gamma_phi(-0.2, 1.0, 1.0)
        with pytest.raises(RegionError):
            gamma_phi(-0.2, 1.0, 0.5)

    def test_oscillation_cap(self):
        with pytest.raises(DomainError):
            gamma_phi(complex(2.0, 60.0), 1.0, 1.0)

    def test_full_output(self):
        val, res = gamma_phi(2.0, 1.0, 1.0, full_output=True)
        assert val == res.value
        assert res.err_estimate < 1e-8
        assert res.nodes_used > 0


class TestHurwitzZeta:
    def test_zeta2(self):
        assert rel_err(hurwitz_zeta(2.0, 1.0), ref.ZETA2) < 1e-12

    def test_half_argument_identity(self):
        # zeta(s, 1/2) = (2^s - 1) zeta(s) at s = 0.5
        want = (2.0 ** 0.5 - 1.0) * ref.ZETA_HALF
        assert rel_err(hurwitz_zeta(0.5, 0.5), want) < 1e-9

    def test_three_quarters_negative(self):
        v = hurwitz_zeta(0.75, 1.0)
        assert v.real < 0.0
        assert rel_err(v, ref.ZETA_3Q) < 1e-9

    @pytest.mark.parametrize("a", [0.5, 0.75, 1.0])
    @pytest.mark.parametrize("sigma", [0.2, 0.5, 0.8])
    def test_negative_region(self, a, sigma):
        assert hurwitz_zeta(sigma, a).real < 0.0

    def test_pole_and_region(self):
        with pytest.raises(PoleError):
            hurwitz_zeta(1.0 + 1e-10, 1.0)
        with pytest.raises(RegionError):
            hurwitz_zeta(-0.5, 1.0)


class TestPhiDispatch:
    def test_zeta3(self):
        assert rel_err(phi(3.0, 1.0, 1.0), ref.ZETA3) < 1e-12

    def test_positivity_example(self):
        v = phi(0.5, 0.7, -1.0)
        assert v.real > 0.0
        assert rel_err(v, ref.PHI_HALF_07_NEG1) < 1e-9

    @pytest.mark.parametrize("z", [0.25, 0.5, 0.9, 1.0])
    def test_positive_z_positive_value(self, z):
        for sigma in (0.3, 0.8, 1.5, 3.0):
            if z == 1.0 and sigma < 1.0:
                continue
            assert phi(sigma, 1.0, z).real > 0.0

    def test_conjugate_symmetry(self):
        s = complex(0.8, 1.7)
        assert abs(phi(s, 0.5, -0.5) - phi(s.conjugate(), 0.5, -0.5).conjugate()) < 1e-12

    def test_rejects_pole(self):
        with pytest.raises(RegionError):
            phi(1.0, 1.0, 1.0)


@settings(max_examples=60, deadline=None)
@given(sigma=st.floats(1.05, 6.0), a=st.floats(0.05, 1.0),
       z=st.one_of(st.sampled_from([1.0, -1.0]),
                   st.floats(-0.99, 0.99).filter(lambda z: abs(z) > 1e-3)))
def test_series_integral_overlap_property(sigma, a, z):
    q = gamma_phi(sigma, a, z)
    srs = gamma(sigma) * phi_series(sigma, a, z)
    assert rel_err(q, srs) < 1e-8


@settings(max_examples=40, deadline=None)
@given(sigma=st.floats(0.1, 4.0), t=st.floats(-20.0, 20.0),
       a=st.floats(0.05, 1.0))
def test_em_conjugate_symmetry_property(sigma, t, a):
    s = complex(sigma, t)
    if abs(s - 1.0) < 1e-6:
        return
    v1, _ = hurwitz_zeta_em(s, a)
    v2, _ = hurwitz_zeta_em(s.conjugate(), a)
    assert abs(v1 - v2.conjugate()) <= 1e-12 * max(1.0, abs(v1))


class TestClassify:
    def test_regimes(self):
        assert classify_lerch(2.0, 1.0, 1.0).regime.value == "SeriesAbs"
        assert classify_lerch(0.5, 1.0, 1.0).regime.value == "ContinuedZ1"
        assert classify_lerch(0.5, 1.0, -0.5).regime.value == "ContinuedZne1"

    def test_invalid(self):
        with pytest.raises(RegionError):
            classify_lerch(-0.5, 1.0, 0.5)
        with pytest.raises(DomainError):
            classify_lerch(2.0, 1.0, 0.0)
