"""The Hurwitz-Lerch zeta function Phi(s, a, z) and its relatives.

Evaluation routes:

* ``phi_series`` -- the defining Dirichlet-type series with certified
  truncation: geometric tail bound for |z| < 1, Euler-Maclaurin tail for
  z = +-1 (plain summation cannot reach double-precision tolerances for
  Re s near 1), integral-comparison stopping for other unit-modulus z;
* ``gamma_phi`` -- Gamma(s) Phi(s, a, z) through its Mellin-type integral
  representation, which is what analytically continues the z = 1 case to
  0 < Re s < 1;
* ``hurwitz_zeta`` / ``phi`` -- regime dispatchers over the two routes.

The kernel H(a, x) = e^{(1-a)x}/(e^x - 1) - 1/x drives the continued-regime
representation and the sign structure of the derived densities.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import kernels
from .errors import DomainError, NonConvergence, PoleError, RegionError
from .numerics import (DEFAULT_CFG, OSCILLATION_T_CAP, QuadratureResult, gamma,
                       integrate_halfline, integrate_realline)

# B_{2k}/(2k)! for k = 1..11; the k = 11 entry only feeds the remainder bound.
_EM_B = (
    8.3333333333333333e-02,
    -1.3888888888888889e-03,
    3.3068783068783069e-05,
    -8.2671957671957672e-07,
    2.0876756987868099e-08,
    -5.2841901386874932e-10,
    1.3382536530684679e-11,
    -3.3896802963225829e-13,
    8.5860620562778446e-15,
    -2.1748686985580619e-16,
    5.5090028283602295e-18,
)
_EM_K = 10
_EM_MAX_N = 4_000_000


class LerchRegime(str, Enum):
    SERIES_ABS = "SeriesAbs"
    CONTINUED_Z1 = "ContinuedZ1"
    CONTINUED_ZNE1 = "ContinuedZne1"


@dataclass(frozen=True)
class LerchParams:
    """Parameter bundle (a, z) with the evaluation regime for a given Re s."""

    a: float
    z: complex
    regime: LerchRegime

    def __post_init__(self):
        if not 0.0 < self.a <= 1.0:
            raise DomainError(f"a must be in (0, 1], got {self.a}")
        if not 0.0 < abs(self.z) <= 1.0:
            raise DomainError(f"z must satisfy 0 < |z| <= 1, got {self.z}")


def classify_lerch(sigma, a, z):
    """Regime tag for evaluating Phi(sigma + it, a, z)."""
    if sigma > 1.0:
        regime = LerchRegime.SERIES_ABS
    elif z == 1.0:
        if sigma <= 0.0 or abs(sigma - 1.0) < 1e-8:
            raise RegionError(f"no regime for sigma={sigma}, z=1")
        regime = LerchRegime.CONTINUED_Z1
    else:
        if sigma <= 0.0:
            raise RegionError(f"no regime for sigma={sigma}, z={z}")
        regime = LerchRegime.CONTINUED_ZNE1
    return LerchParams(a=float(a), z=z, regime=regime)


# ---------------------------------------------------------------------------
# kernel H(a, x)
# ---------------------------------------------------------------------------

def h_kernel(a, x):
    """H(a, x) = e^{(1-a)x}/(e^x - 1) - 1/x for x > 0.

    Uses the Taylor-quotient form below x = 0.25 where the direct expression
    loses ~x^-2 precision to cancellation.  Accepts scalars or arrays.
    """
    if not 0.0 < a <= 1.0:
        raise DomainError(f"a must be in (0, 1], got {a}")
    arr = np.asarray(x, dtype=np.float64)
    if np.any(arr <= 0.0):
        raise DomainError("h_kernel requires x > 0")
    out = kernels.h_kernel_arr(float(a), np.atleast_1d(arr))
    if np.isscalar(x) or arr.ndim == 0:
        return float(out[0])
    return out.reshape(arr.shape)


# ---------------------------------------------------------------------------
# Euler-Maclaurin engine for sum_{n>=0} (n + alpha)^{-s}
# ---------------------------------------------------------------------------

def _pochhammer(s, m):
    p = complex(1.0)
    for j in range(m):
        p *= s + j
    return p


def _em_remainder_bound(s, alpha, n):
    sig = s.real
    lead = abs(_EM_B[_EM_K]) * abs(_pochhammer(s, 2 * _EM_K + 1))
    safety = abs(s + 2 * _EM_K + 1) / (sig + 2 * _EM_K + 1)
    return lead * safety * (n + alpha) ** (-(sig + 2 * _EM_K + 1))


def _em_choose_n(s, alpha, tol):
    sig = s.real
    lead = abs(_EM_B[_EM_K]) * abs(_pochhammer(s, 2 * _EM_K + 1))
    safety = abs(s + 2 * _EM_K + 1) / (sig + 2 * _EM_K + 1)
    if lead == 0.0:
        return 16
    target = (lead * safety / tol) ** (1.0 / (sig + 2 * _EM_K + 1))
    n = int(max(16.0, 2.0 * abs(s), math.ceil(target - alpha) + 1))
    if n > _EM_MAX_N:
        raise NonConvergence(
            f"Euler-Maclaurin needs N={n} > {_EM_MAX_N} for tol={tol:.1e} at s={s}")
    return n


def hurwitz_zeta_em(s, alpha, tol=1e-14):
    """sum_{n>=0} (n + alpha)^{-s} by Euler-Maclaurin with a certified tail.

    Valid for any complex s away from the pole s = 1 (the expansion also
    provides the analytic continuation below Re s = 1); alpha > 0.

    Returns (value, tail_bound).
    """
    s = complex(s)
    if abs(s - 1.0) < 1e-10:
        raise PoleError(f"zeta(s, alpha) pole at s = {s}")
    if alpha <= 0.0:
        raise DomainError("alpha must be positive")
    n = _em_choose_n(s, alpha, tol)
    k = np.arange(n)
    partial = np.exp(-s * np.log(k + alpha)).sum()
    w = n + alpha
    lw = math.log(w)
    value = partial + np.exp((1.0 - s) * lw) / (s - 1.0) + 0.5 * np.exp(-s * lw)
    powc = np.exp(-(s + 1.0) * lw)
    scale = math.exp(-2.0 * lw)
    poch = s
    for kk in range(1, _EM_K + 1):
        value += _EM_B[kk - 1] * poch * powc
        poch *= (s + 2 * kk - 1) * (s + 2 * kk)
        powc *= scale
    return complex(value), _em_remainder_bound(s, alpha, n)


def _pole_pair_term(s, w1, w2):
    # ((w1)^{1-s} - (w2)^{1-s}) / (s - 1), stable through the cancelling pole
    l1, l2 = math.log(w1), math.log(w2)
    eps = s - 1.0
    if abs(eps) < 1e-4:
        # (e^{-eps l1} - e^{-eps l2})/eps = -sum_{k>=1} (-eps)^{k-1}(l1^k - l2^k)/k!
        total = complex(0.0)
        fact = 1.0
        for k in range(1, 6):
            fact *= k
            total += (-eps) ** (k - 1) * (l1 ** k - l2 ** k) / fact
        return -total
    return (np.exp((1.0 - s) * l1) - np.exp((1.0 - s) * l2)) / eps


def phi_neg1_em(s, a, tol=1e-14):
    """Phi(s, a, -1) = 2^{-s} [zeta(s, a/2) - zeta(s, (a+1)/2)], sharing one
    Euler-Maclaurin cutoff so the s = 1 poles cancel exactly.

    Valid for all Re s > 0 (including s = 1).  Returns (value, tail_bound).
    """
    s = complex(s)
    a1, a2 = a / 2.0, (a + 1.0) / 2.0
    n = max(_em_choose_n(s, a1, tol), 16)
    k = np.arange(n)
    partial = (np.exp(-s * np.log(k + a1)) - np.exp(-s * np.log(k + a2))).sum()
    w1, w2 = n + a1, n + a2
    value = partial + _pole_pair_term(s, w1, w2)
    value += 0.5 * (np.exp(-s * math.log(w1)) - np.exp(-s * math.log(w2)))
    pow1 = np.exp(-(s + 1.0) * math.log(w1))
    pow2 = np.exp(-(s + 1.0) * math.log(w2))
    sc1, sc2 = w1 ** -2.0, w2 ** -2.0
    poch = s
    for kk in range(1, _EM_K + 1):
        value += _EM_B[kk - 1] * poch * (pow1 - pow2)
        poch *= (s + 2 * kk - 1) * (s + 2 * kk)
        pow1 *= sc1
        pow2 *= sc2
    bound = _em_remainder_bound(s, a1, n) + _em_remainder_bound(s, a2, n)
    scale = np.exp(-s * math.log(2.0))
    return complex(scale * value), abs(scale) * bound


def phi_interior(s, a, z, tol=1e-14, max_terms=2_000_000):
    """Phi(s, a, z) for |z| < 1 by direct summation with a geometric tail bound.

    Valid for Re s > 0 and any alpha-like a > 0; z may be complex.
    Returns (value, tail_bound).
    """
    s = complex(s)
    z = complex(z)
    r = abs(z)
    if r >= 1.0:
        raise RegionError("phi_interior requires |z| < 1")
    total = complex(0.0)
    n0 = 0
    chunk = 64
    zn = complex(1.0)
    while n0 < max_terms:
        n = np.arange(n0, n0 + chunk)
        terms = zn * (z ** np.arange(chunk)) * np.exp(-s * np.log(n + a))
        total += terms.sum()
        n0 += chunk
        zn *= z ** chunk
        bound = r ** n0 * (n0 + a) ** (-s.real) / (1.0 - r)
        if bound <= tol * max(abs(total), 1.0):
            return total, bound
        chunk = min(2 * chunk, 8192)
    raise NonConvergence(f"phi_interior: {max_terms} terms without meeting tol={tol}")


def _phi_unit_circle(s, a, z, tol, max_terms=2_000_000):
    # generic |z| = 1 (z != +-1, complex): plain partial sums, integral tail bound
    s = complex(s)
    if s.real <= 1.0:
        raise RegionError("unit-circle series requires Re s > 1")
    total = complex(0.0)
    n0 = 0
    chunk = 4096
    while n0 < max_terms:
        n = np.arange(n0, n0 + chunk)
        total += (z ** n * np.exp(-s * np.log(n + a))).sum()
        n0 += chunk
        bound = (n0 + a) ** (1.0 - s.real) / (s.real - 1.0)
        if bound <= tol * max(abs(total), 1.0):
            return total, bound
    raise NonConvergence(
        f"unit-circle series: {max_terms} terms insufficient for tol={tol} "
        f"(Re s = {s.real} too close to 1)")


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

def _validate_az(a, z, allow_complex_z):
    if not 0.0 < a <= 1.0:
        raise DomainError(f"a must be in (0, 1], got {a}")
    if isinstance(z, complex) and z.imag != 0.0:
        if not allow_complex_z:
            raise DomainError("complex z is only supported in the series region")
        if not 0.0 < abs(z) <= 1.0:
            raise DomainError(f"need 0 < |z| <= 1, got {z}")
        return z
    z = float(np.real(z))
    if z == 0.0 or abs(z) > 1.0:
        raise DomainError(f"z must lie in [-1, 1] \\ {{0}}, got {z}")
    return z


def phi_series(s, a, z, rel_tol=1e-13):
    """Phi(s, a, z) = sum_{n>=0} z^n (n+a)^{-s} with certified truncation.

    Convergence region: (Re s > 1 and |z| <= 1) or (|z| < 1 and Re s > 0);
    RegionError outside.  (n+a)^{-s} uses the real logarithm of n+a.
    """
    s = complex(s)
    z = _validate_az(a, z, allow_complex_z=True)
    sig = s.real
    inside = abs(z) < 1.0
    if not ((sig > 1.0 and abs(z) <= 1.0) or (inside and sig > 0.0)):
        raise RegionError(
            f"phi_series requires (Re s > 1, |z| <= 1) or (|z| < 1, Re s > 0); "
            f"got s={s}, z={z}")
    if inside:
        value, _ = phi_interior(s, a, z, tol=rel_tol)
    elif z == 1.0:
        value, _ = hurwitz_zeta_em(s, a, tol=rel_tol)
    elif z == -1.0:
        value, _ = phi_neg1_em(s, a, tol=rel_tol)
    else:
        value, _ = _phi_unit_circle(s, a, z, tol=rel_tol)
    return value


def gamma_phi(s, a, z, cfg=None, full_output=False):
    """f(s) = Gamma(s) Phi(s, a, z) through the integral representations.

    Representation dispatch:
      z = 1, Re s > 1   -> int_0^inf x^{s-1} e^{(1-a)x}/(e^x - 1) dx
      z != 1, Re s > 0  -> same integrand with e^x - z
      z = 1, 0<Re s<1   -> int_0^inf H(a, x) x^{s-1} dx, computed as
                           int R1(x) x^{s-1} dx + Gamma(s-1) where
                           R1(x) = H(a,x) + (1-e^{-x})/x decays exponentially
                           (the -1/x tail of H is integrated in closed form,
                           which is what makes Re s near 1 tractable).

    For Im s != 0 the integrals are evaluated after x = e^y, where the
    oscillation e^{it y} is uniform and trapezoid-friendly.
    """
    cfg = cfg or DEFAULT_CFG
    s = complex(s)
    z = _validate_az(a, z, allow_complex_z=False)
    sig, t = s.real, s.imag
    if abs(t) > OSCILLATION_T_CAP:
        raise DomainError(f"|Im s| = {abs(t)} beyond supported cap {OSCILLATION_T_CAP}")
    a = float(a)

    if z == 1.0:
        if abs(s - 1.0) < 1e-8:
            raise RegionError("z = 1: pole at s = 1")
        if sig <= 0.0:
            raise RegionError("z = 1 requires Re s > 0")
        continued = sig < 1.0
    else:
        if sig <= 0.0:
            raise RegionError("z != 1 requires Re s > 0")
        continued = False

    if continued:
        if t == 0.0:
            res = integrate_halfline(lambda x: kernels.hr1_x(x, sig, 0.0, a), cfg)
        else:
            res = integrate_realline(lambda y: kernels.hr1_y(y, sig, t, a), cfg)
        value = res.value + gamma(s - 1.0)
    else:
        if t == 0.0:
            res = integrate_halfline(lambda x: kernels.lerch_x(x, sig, 0.0, a, z), cfg)
        else:
            res = integrate_realline(lambda y: kernels.lerch_y(y, sig, t, a, z), cfg)
        value = res.value
    value = complex(value)
    if t == 0.0:
        value = complex(value.real, 0.0)
    if full_output:
        return value, QuadratureResult(value, res.err_estimate, res.nodes_used)
    return value


def hurwitz_zeta(s, a, cfg=None):
    """zeta(s, a) = Phi(s, a, 1): series for Re s > 1, the Gamma-weighted
    integral continuation for 0 < Re s < 1.

    PoleError within 1e-8 of s = 1; RegionError for Re s <= 0.
    """
    s = complex(s)
    if not 0.0 < a <= 1.0:
        raise DomainError(f"a must be in (0, 1], got {a}")
    if abs(s - 1.0) < 1e-8:
        raise PoleError("zeta(s, a) has its pole at s = 1")
    sig = s.real
    if sig <= 0.0:
        raise RegionError("hurwitz_zeta requires Re s > 0")
    if sig > 1.0 or (sig == 1.0 and s.imag != 0.0):
        value, _ = hurwitz_zeta_em(s, a)
        return value
    return gamma_phi(s, a, 1.0, cfg=cfg) / gamma(s)


def phi(s, a, z, cfg=None):
    """Phi(s, a, z) dispatched over the series and integral routes.

    Accepts (Re s > 1) or (z != 1, Re s > 0) or (z = 1, 0 < Re s < 1);
    complex z only in the absolutely convergent series region.
    """
    s = complex(s)
    sig = s.real
    if sig > 1.0:
        return phi_series(s, a, z)
    z = _validate_az(a, z, allow_complex_z=False)
    if z == 1.0 and abs(s - 1.0) < 1e-8:
        raise RegionError("z = 1: pole at s = 1")
    return gamma_phi(s, a, z, cfg=cfg) / gamma(s)
