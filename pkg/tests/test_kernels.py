"""Cross-backend agreement and stability of the hot kernels."""

import numpy as np
import pytest

from zetadist import kernels
from zetadist.backend import HAVE_NUMBA

needs_numba = pytest.mark.skipif(not HAVE_NUMBA, reason="numba not available")

rng = np.random.default_rng(20240811)
X = rng.uniform(1e-6, 40.0, 4000)
Y = rng.uniform(-30.0, 3.5, 4000)


def assert_close(a, b, tol=2e-13):
    a, b = np.asarray(a), np.asarray(b)
    scale = np.maximum(np.abs(b), 1e-280)
    assert np.max(np.abs(a - b) / scale) < tol


@needs_numba
class TestBackendAgreement:
    @pytest.mark.parametrize("a", [0.2, 0.5, 1.0])
    def test_h_kernel(self, a):
        assert_close(kernels.h_kernel_numba(a, X), kernels.h_kernel_numpy(a, X))

    @pytest.mark.parametrize("a", [0.3, 0.5, 0.9])
    def test_cal_h(self, a):
        y = rng.uniform(1e-6, 30.0, X.size)
        assert_close(kernels.cal_h_numba(a, X, y), kernels.cal_h_numpy(a, X, y))

    @pytest.mark.parametrize("z", [1.0, -1.0, -0.5, 0.7])
    def test_lerch_x(self, z):
        assert_close(kernels.lerch_x_numba(X, 1.7, 2.0, 0.6, z),
                     kernels.lerch_x_numpy(X, 1.7, 2.0, 0.6, z))

    @pytest.mark.parametrize("z", [1.0, -1.0, 0.5])
    def test_lerch_y(self, z):
        assert_close(kernels.lerch_y_numba(Y, 1.7, 0.8, 0.6, z),
                     kernels.lerch_y_numpy(Y, 1.7, 0.8, 0.6, z))

    def test_hr1(self):
        assert_close(kernels.hr1_y_numba(Y, 0.7, 1.0, 0.4),
                     kernels.hr1_y_numpy(Y, 0.7, 1.0, 0.4))
        assert_close(kernels.hr1_x_numba(X, 0.7, 0.0, 0.4),
                     kernels.hr1_x_numpy(X, 0.7, 0.0, 0.4))

    def test_hk(self):
        assert_close(kernels.hk_y_numba(Y, 0.8, 1.3, 0.5),
                     kernels.hk_y_numpy(Y, 0.8, 1.3, 0.5))

    @pytest.mark.parametrize("z1,z2", [(1.0, 1.0), (1.0, -0.5), (-0.5, 1.0),
                                       (-1.0, -1.0), (0.5, 0.5)])
    def test_dz_plane(self, z1, z2):
        for theta in (-20.0, -1.0, 0.5, 3.0):
            assert_close(
                kernels.dz_plane_numba(Y, theta, 1.4, 0.7, 1.9, -0.3, 0.6, z1, z2),
                kernels.dz_plane_numpy(Y, theta, 1.4, 0.7, 1.9, -0.3, 0.6, z1, z2))

    def test_dz_strip(self):
        for theta in (-20.0, -1.0, 0.5, 3.0, 30.0):
            assert_close(
                kernels.dz_strip_numba(Y, theta, 0.5, 0.4, 1.3, -0.2, 0.7),
                kernels.dz_strip_numpy(Y, theta, 0.5, 0.4, 1.3, -0.2, 0.7))

    def test_pchip_eval(self):
        xk = np.linspace(0.0, 1.0, 64)
        yk = np.cumsum(rng.random(64))
        dk = kernels.pchip_slopes(xk, yk)
        q = rng.random(500)
        assert_close(kernels.pchip_eval_numba(xk, yk, dk, q),
                     kernels.pchip_eval_numpy(xk, yk, dk, q))


class TestHKernelStability:
    @pytest.mark.parametrize("factor", [0.5, 1.0, 2.0])
    def test_series_direct_branch_agreement(self, factor):
        # evaluate both branches around the switch point; they must agree
        x = kernels.H_SERIES_CUTOFF * factor
        for a in (0.2, 0.5, 0.77, 1.0):
            series = _h_series(a, x)
            direct = np.exp(-a * x) / (-np.expm1(-x)) - 1.0 / x
            assert abs(series - direct) < 1e-11 * max(1.0, abs(direct))

    def test_small_x_limits(self):
        xs = np.array([1e-12, 1e-9, 1e-6])
        assert np.allclose(kernels.h_kernel_numpy(1.0, xs)[0], -0.5, atol=1e-10)
        assert abs(kernels.h_kernel_numpy(0.5, xs)[0]) < 1e-10

    def test_extreme_arguments_finite(self):
        xs = np.array([1e-300, 1e-10, 1.0, 700.0, 1e8, 1e300])
        vals = kernels.h_kernel_numpy(0.3, xs)
        assert np.all(np.isfinite(vals))

    def test_strip_kernel_extreme_nodes_finite(self):
        etas = np.array([-800.0, -100.0, 0.0, 200.0, 800.0])
        for theta in (-800.0, -50.0, 0.0, 6.0, 180.0):
            v = kernels.dz_strip_numpy(etas, theta, 0.5, 0.0, 1.3, 0.0, 0.5)
            assert np.all(np.isfinite(v.real)), theta

    def test_plane_kernel_extreme_nodes_finite(self):
        etas = np.array([-800.0, -100.0, 0.0, 200.0, 800.0])
        for theta in (-800.0, -50.0, 0.0, 6.0, 180.0):
            for z1, z2 in ((1.0, 1.0), (1.0, -0.5), (-1.0, 1.0)):
                v = kernels.dz_plane_numpy(etas, theta, 2.0, 0.0, 2.0, 0.0,
                                           0.5, z1, z2)
                assert np.all(np.isfinite(v.real)), (theta, z1, z2)


def _h_series(a, x):
    import math

    p = q = 0.0
    for j in range(kernels._H_NTERMS):
        m = j + 2
        p += ((1.0 - a) ** (m - 1) / math.factorial(m - 1)
              - 1.0 / math.factorial(m)) * x ** j
        q += x ** j / math.factorial(m - 1)
    return p / q


class TestPchip:
    def test_monotone_interpolant(self):
        xk = np.linspace(0.0, 1.0, 40)
        yk = np.sort(rng.random(40))
        dk = kernels.pchip_slopes(xk, yk)
        fine = np.linspace(0.0, 1.0, 4001)
        vals = kernels.pchip_eval_numpy(xk, yk, dk, fine)
        assert np.all(np.diff(vals) >= -1e-14)

    def test_interpolates_knots(self):
        xk = np.linspace(0.0, 2.0, 17)
        yk = np.cumsum(rng.random(17))
        dk = kernels.pchip_slopes(xk, yk)
        vals = kernels.pchip_eval_numpy(xk, yk, dk, xk)
        assert np.allclose(vals, yk, atol=1e-13)
