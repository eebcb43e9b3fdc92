"""Two-dimensional Hurwitz-Lerch-type Euler-Zagier double zeta distributions.

Acceptance regions (each an iff in the underlying theory):

* ``Thm24``   -- sigma1 > 0, sigma2 > 1, sigma1+sigma2 > 2,
                 z1, z2 in [-1, 1] \\ {0};
* ``Thm25c1`` -- z1 = z2 = 1, 0 < sigma1 < 1 < sigma2, 1 < sigma1+sigma2 < 2,
                 a >= 1/2 (strip continuation; negative normalizer);
* ``Thm25c2`` -- z1 = 1, z2 in [-1, 1) \\ {0}, sigma1 > 1, sigma2 > 0;
* ``Thm25c3`` -- z1 in [-1, 1) \\ {0}, z2 = 1, sigma1 > 0, sigma2 > 1;
* ``Thm25c4`` -- z1, z2 in [-1, 1) \\ {0}, sigma1 > 0, sigma2 > 0.

Joint density on R^2 (with u = e^eta, v = e^theta):
    p(eta, theta) = e^{s1 eta} e^{s2 theta} exp((1-a)(u+v))
                    / (f(0) (exp(v) - z2) (exp(u+v) - z1))
and in the strip regime the bracketed kernel is
    H(a, u+v)/(e^v - 1) + H(1, v)/(u + v),
with both the kernel and the normalizer negative.
"""

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import kernels
from .double_zeta import (_phi2_iterated, gamma2_phi2, phi2_case,
                          zeta2_continued, zeta2_em)
from .errors import (REASON_A_NOT_HALF, REASON_A_OUT_OF_RANGE,
                     REASON_POLE_SIGMA_ONE, REASON_SIGMA_OUT_OF_RANGE,
                     REASON_Z_OUT_OF_RANGE, DomainError, InvalidDistribution,
                     NonConvergence)
from .numerics import (DEFAULT_CFG, OSCILLATION_T_CAP, QuadratureConfig,
                       gamma, gamma_real, integrate_realline)

_COND_THETA_NODES = 64
_COND_ETA_NODES = 513
_MARGINAL_NODES = 1025


class DoubleRegime(str, Enum):
    THM24 = "Thm24"
    THM25C1 = "Thm25c1"
    THM25C2 = "Thm25c2"
    THM25C3 = "Thm25c3"
    THM25C4 = "Thm25c4"


def double_region_ok(sigma1, sigma2, a, z1, z2):
    """Transcription of the union of the five acceptance regions."""
    vals = (sigma1, sigma2, a, z1, z2)
    if not all(np.isfinite(v) for v in vals):
        return False
    if not 0.0 < a <= 1.0:
        return False
    for z in (z1, z2):
        if z == 0.0 or abs(z) > 1.0:
            return False
    if sigma1 > 0.0 and sigma2 > 1.0 and sigma1 + sigma2 > 2.0:
        return True
    if z1 == 1.0 and z2 == 1.0:
        return (0.0 < sigma1 < 1.0 and sigma2 > 1.0
                and 1.0 < sigma1 + sigma2 < 2.0 and a >= 0.5)
    if z1 == 1.0:
        return sigma1 > 1.0 and sigma2 > 0.0
    if z2 == 1.0:
        return sigma1 > 0.0 and sigma2 > 1.0
    return sigma1 > 0.0 and sigma2 > 0.0


@dataclass
class DoubleDistSpec:
    sigma1: float
    sigma2: float
    a: float
    z1: float
    z2: float
    regime: DoubleRegime
    quad_cfg: QuadratureConfig = field(default_factory=lambda: DEFAULT_CFG, repr=False)
    t_cap: float = OSCILLATION_T_CAP
    _normalizer: float = field(default=None, repr=False)
    _support: tuple = field(default=None, repr=False)
    _sampler: dict = field(default=None, repr=False)

    @property
    def strip(self):
        return self.regime is DoubleRegime.THM25C1

    @property
    def normalizer(self):
        """f(0, 0) = Gamma(sigma1) Gamma(sigma2) Phi_2(sigma_vec, a, z_vec)."""
        if self._normalizer is None:
            gg = gamma_real(self.sigma1) * gamma_real(self.sigma2)
            if self.strip:
                val = gg * zeta2_em(self.sigma1, self.sigma2, self.a)[0]
                if not val < 0.0:
                    raise NonConvergence(f"strip normalizer {val} should be negative")
            else:
                try:
                    # a short series budget: slow-decay cases fall through to
                    # quadrature instead of grinding the full term cap
                    val = gg * phi2_case(self.sigma1, self.sigma2, self.a,
                                         self.z1, self.z2, rel_tol=1e-11,
                                         max_terms=300_000).real
                except NonConvergence:
                    val = gamma2_phi2(self.sigma1, self.sigma2, self.a,
                                      self.z1, self.z2, cfg=self.quad_cfg).real
                if not val > 0.0:
                    raise NonConvergence(f"normalizer {val} should be positive")
            self._normalizer = val
        return self._normalizer

    @property
    def support(self):
        """((eta_lo, eta_hi), (theta_lo, theta_hi)) numeric support box."""
        if self._support is None:
            a = self.a
            eta_lo = theta_lo = -42.0 / min(1.0, self.sigma1, max(self.sigma2 - 1.0, 0.05))
            if self.strip:
                r1 = 1.0 - self.sigma1
                r2 = 2.0 - self.sigma1 - self.sigma2
                eta_hi = 42.0 / r1
                theta_hi = 42.0 / r2
            else:
                eta_hi = math.log(760.0 / a) + 2.0
                theta_hi = math.log(760.0 / a) + 2.0
            self._support = ((eta_lo, eta_hi), (theta_lo, theta_hi))
        return self._support

    def inner_window(self, theta):
        (lo, hi), _ = self.support
        if self.strip:
            return (-8.0, max(8.0, theta + 8.0))
        return (max(lo, -8.0), min(hi, 8.0))


def validate_double(sigma1, sigma2, a, z1, z2):
    """Accept exactly the union of the five regime regions."""
    for name, v in (("sigma1", sigma1), ("sigma2", sigma2), ("a", a),
                    ("z1", z1), ("z2", z2)):
        if not np.isfinite(v):
            raise DomainError(f"{name} must be finite, got {v}")
    sigma1, sigma2 = float(sigma1), float(sigma2)
    a, z1, z2 = float(a), float(z1), float(z2)
    if not 0.0 < a <= 1.0:
        raise InvalidDistribution(REASON_A_OUT_OF_RANGE,
                                  f"a must be in (0, 1], got {a}")
    for name, z in (("z1", z1), ("z2", z2)):
        if z == 0.0 or abs(z) > 1.0:
            raise InvalidDistribution(REASON_Z_OUT_OF_RANGE,
                                      f"{name} must be in [-1, 1] \\ {{0}}, got {z}")

    def spec(regime):
        return DoubleDistSpec(sigma1=sigma1, sigma2=sigma2, a=a,
                              z1=z1, z2=z2, regime=regime)

    if sigma1 > 0.0 and sigma2 > 1.0 and sigma1 + sigma2 > 2.0:
        return spec(DoubleRegime.THM24)
    if z1 == 1.0 and z2 == 1.0:
        if (0.0 < sigma1 < 1.0 and sigma2 > 1.0 and 1.0 < sigma1 + sigma2 < 2.0):
            if a >= 0.5:
                return spec(DoubleRegime.THM25C1)
            raise InvalidDistribution(
                REASON_A_NOT_HALF,
                f"strip regime needs a >= 1/2, got a = {a}")
        raise InvalidDistribution(
            REASON_SIGMA_OUT_OF_RANGE,
            f"(sigma1={sigma1}, sigma2={sigma2}) outside both the absolute "
            f"region and the strip for z1 = z2 = 1")
    if z1 == 1.0:
        if sigma1 > 1.0 and sigma2 > 0.0:
            return spec(DoubleRegime.THM25C2)
    elif z2 == 1.0:
        if sigma1 > 0.0 and sigma2 > 1.0:
            return spec(DoubleRegime.THM25C3)
    elif sigma1 > 0.0 and sigma2 > 0.0:
        return spec(DoubleRegime.THM25C4)
    raise InvalidDistribution(
        REASON_SIGMA_OUT_OF_RANGE,
        f"(sigma1={sigma1}, sigma2={sigma2}) outside the region for "
        f"z=({z1}, {z2})")


def _num_slice(spec, eta_arr, theta, t1=0.0, t2=0.0):
    eta_arr = np.ascontiguousarray(eta_arr, dtype=np.float64)
    if spec.strip:
        return kernels.dz_strip(eta_arr, theta, spec.sigma1, t1,
                                spec.sigma2, t2, spec.a)
    return kernels.dz_plane(eta_arr, theta, spec.sigma1, t1,
                            spec.sigma2, t2, spec.a, spec.z1, spec.z2)


def density2(spec, eta, theta):
    """Joint density at (eta, theta); eta may be an array (theta scalar)."""
    theta = float(theta)
    arr = np.atleast_1d(np.asarray(eta, dtype=np.float64)).ravel()
    num = _num_slice(spec, arr, theta).real
    if spec.strip:
        out = (-num) / (-spec.normalizer)
    else:
        out = num / spec.normalizer
    out = np.maximum(out, 0.0)
    if np.isscalar(eta) or np.ndim(eta) == 0:
        return float(out[0])
    return out.reshape(np.shape(eta))


def cf2(spec, t1, t2):
    """Joint characteristic function F(t1, t2); F(0,0) = 1, |F| <= 1.

    Thm24 evaluates the numerator on the series route (independent of the
    quadrature that backs the Fourier cross-checks); the continued regimes
    use the integral representations.
    """
    t1, t2 = float(t1), float(t2)
    if max(abs(t1), abs(t2)) > spec.t_cap:
        raise DomainError(f"|t| beyond supported cap {spec.t_cap}")
    if t1 == 0.0 and t2 == 0.0:
        return 1.0 + 0.0j
    s1 = complex(spec.sigma1, t1)
    s2 = complex(spec.sigma2, t2)
    if spec.regime is DoubleRegime.THM24:
        val, _ = _phi2_iterated(s1, s2, spec.a, spec.z1, spec.z2,
                                tol=max(spec.quad_cfg.rel_tol, 1e-12))
        num = gamma(s1) * gamma(s2) * val
    elif spec.strip:
        num = (gamma(s1) * gamma(s2)
               * zeta2_continued(s1, s2, spec.a, cfg=spec.quad_cfg))
    else:
        num = gamma2_phi2(s1, s2, spec.a, spec.z1, spec.z2, cfg=spec.quad_cfg)
    return num / spec.normalizer


def marginal_theta(spec, theta):
    """Marginal density of theta: integral of the joint density over eta."""
    theta = float(theta)

    def f(eta):
        return density2(spec, eta, theta)

    res = integrate_realline(f, cfg=spec.quad_cfg,
                             window=spec.inner_window(theta))
    return max(0.0, float(res.value.real))


def marginal_eta(spec, eta):
    """Marginal density of eta (integral over theta); used for CF slices."""
    eta = float(eta)

    def f(thetas):
        return np.array([density2(spec, eta, t) for t in np.atleast_1d(thetas)])

    (elo, ehi), (tlo, thi) = spec.support
    win = (-8.0, max(8.0, eta + 8.0)) if spec.strip else (max(tlo, -8.0), min(thi, 8.0))
    res = integrate_realline(f, cfg=spec.quad_cfg, window=win)
    return max(0.0, float(res.value.real))


def _simpson_cdf(xs, fs):
    # cumulative composite Simpson on a uniform grid with an odd point count:
    # full panels are (h/3)(f0 + 4 f1 + f2), half panels (h/12)(5 f0 + 8 f1 - f2)
    h = xs[1] - xs[0]
    out = np.zeros_like(fs)
    pair = h / 3.0 * (fs[:-2:2] + 4.0 * fs[1:-1:2] + fs[2::2])
    out[2::2] = np.cumsum(pair)
    mid = h / 12.0 * (5.0 * fs[:-2:2] + 8.0 * fs[1:-1:2] - fs[2::2])
    out[1::2] = out[:-2:2] + mid
    return out


class _Sampler2D:
    """theta by marginal inverse transform, then eta from the conditional
    quantile curves cached on a 64-point theta grid (linear blend between the
    two bracketing nodes)."""

    def __init__(self, spec):
        self.spec = spec
        (elo, ehi), (tlo, thi) = spec.support
        ts = np.linspace(tlo, thi, _MARGINAL_NODES)
        ms = np.array([marginal_theta(spec, t) for t in ts])
        cdf = _simpson_cdf(ts, ms)
        total = cdf[-1]
        if not 0.9 < total < 1.1:
            raise NonConvergence(f"theta-marginal integrates to {total}")
        cdf /= total
        keep = np.concatenate(([True], np.diff(cdf) > 1e-14))
        self.th_cdf, self.th_nodes = cdf[keep], ts[keep]
        self.th_slopes = kernels.pchip_slopes(self.th_cdf, self.th_nodes)
        lo_i = int(np.searchsorted(self.th_cdf, 1e-7))
        hi_i = int(np.searchsorted(self.th_cdf, 1.0 - 1e-7))
        self.cond_thetas = np.linspace(self.th_nodes[max(lo_i - 1, 0)],
                                       self.th_nodes[min(hi_i, len(self.th_nodes) - 1)],
                                       _COND_THETA_NODES)
        self.cond_curves = [self._cond_quantile_curve(t) for t in self.cond_thetas]

    def _cond_quantile_curve(self, theta):
        spec = self.spec
        lo, hi = spec.inner_window(theta)
        (elo, ehi), _ = spec.support
        lo, hi = min(lo, -12.0), hi
        for _ in range(40):
            if density2(spec, lo, theta) < 1e-14:
                break
            lo *= 1.5
        for _ in range(40):
            if density2(spec, hi, theta) < 1e-14:
                break
            hi += 8.0
        es = np.linspace(lo, hi, _COND_ETA_NODES)
        ds = density2(spec, es, theta)
        cdf = _simpson_cdf(es, ds)
        if cdf[-1] <= 0.0:
            raise NonConvergence(f"empty conditional slice at theta={theta}")
        cdf /= cdf[-1]
        keep = np.concatenate(([True], np.diff(cdf) > 1e-14))
        cdfk, esk = cdf[keep], es[keep]
        slopes = kernels.pchip_slopes(cdfk, esk)
        return cdfk, esk, slopes

    def draw(self, n, seed):
        rng = np.random.default_rng(seed)
        u = rng.random((n, 2))
        u1 = np.clip(u[:, 0], self.th_cdf[0], self.th_cdf[-1])
        thetas = kernels.pchip_eval(self.th_cdf, self.th_nodes, self.th_slopes, u1)
        pos = np.clip(np.searchsorted(self.cond_thetas, thetas) - 1,
                      0, _COND_THETA_NODES - 2)
        lam = ((thetas - self.cond_thetas[pos])
               / (self.cond_thetas[pos + 1] - self.cond_thetas[pos]))
        lam = np.clip(lam, 0.0, 1.0)
        etas = np.empty(n)
        for j in range(n):
            cdfk0, es0, sl0 = self.cond_curves[pos[j]]
            cdfk1, es1, sl1 = self.cond_curves[pos[j] + 1]
            u2 = u[j, 1]
            e0 = kernels.pchip_eval(cdfk0, es0, sl0,
                                    np.array([np.clip(u2, cdfk0[0], cdfk0[-1])]))[0]
            e1 = kernels.pchip_eval(cdfk1, es1, sl1,
                                    np.array([np.clip(u2, cdfk1[0], cdfk1[-1])]))[0]
            etas[j] = (1.0 - lam[j]) * e0 + lam[j] * e1
        return etas, thetas


def sample2(spec, n, seed):
    """n joint draws (eta, theta), deterministic for a given seed."""
    if n < 1:
        raise DomainError("n must be >= 1")
    if spec._sampler is None:
        spec._sampler = {"impl": _Sampler2D(spec)}
    etas, thetas = spec._sampler["impl"].draw(n, seed)
    from .dist_single import SampleBatch

    return SampleBatch(values=np.column_stack([etas, thetas]), seed=seed,
                       method="inverse-transform-theta/conditional-eta")
