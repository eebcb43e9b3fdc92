"""The Hurwitz-Lerch type Euler-Zagier double zeta function Phi_2.

Phi_2(s1, s2, a, z1, z2) = sum_{m>=0} z1^m (m+a)^{-s1}
                           sum_{n>=1} z2^{n-1} (m+n+a)^{-s2}.

Routes:

* ``phi2_series`` -- the double sum, evaluated as an iterated series: the
  inner sum is Phi(s2, m+1+a, z2) (recurrences for z2 = +-1, chunked
  geometric summation for |z2| < 1), the outer sum carries a certified tail
  bound per z1 case;
* ``zeta2_em`` -- z1 = z2 = 1 at real exponents: outer tail resummed through
  the Euler-Maclaurin expansion of the inner zeta, which both accelerates the
  absolute region and analytically continues into the strip
  1 < s1 + s2 < 2 (where the plain double sum diverges);
* ``gamma2_phi2`` -- Gamma(s1) Gamma(s2) Phi_2 by iterated quadrature of the
  double Mellin integrand, with the validity cases (z1 = 1 / z2 = 1 /
  neither) dispatched strictly;
* ``zeta2_continued`` -- the z1 = z2 = 1 strip representation built from the
  kernels H(a, x+y) and H(1, y).
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import kernels
from .errors import DomainError, NonConvergence, PoleError, RegionError
from .lerch import _EM_B, _EM_K, _pochhammer, hurwitz_zeta_em
from .numerics import (DEFAULT_CFG, OSCILLATION_T_CAP, QuadratureResult,
                       gamma, integrate_halfline, integrate_plane,
                       integrate_realline, vectorize_scalar)

MAX_SIGMA1_STRIP = 1.0 - 1e-3  # 1/(x+y) tails need x beyond double range above this


class DoubleZetaRegime(str, Enum):
    CASE11 = "Case11"
    CASE1Z = "Case1Z"
    CASEZ1 = "CaseZ1"
    CASEZZ = "CaseZZ"
    CONTINUED_STRIP = "ContinuedStrip"


@dataclass(frozen=True)
class DoubleZetaParams:
    a: float
    z1: float
    z2: float
    regime: DoubleZetaRegime

    def __post_init__(self):
        if not 0.0 < self.a <= 1.0:
            raise DomainError(f"a must be in (0, 1], got {self.a}")
        for z in (self.z1, self.z2):
            if not 0.0 < abs(z) <= 1.0:
                raise DomainError(f"z parameters need 0 < |z| <= 1, got {z}")


def _case_regime(z1, z2):
    if z1 == 1.0 and z2 == 1.0:
        return DoubleZetaRegime.CASE11
    if z1 == 1.0:
        return DoubleZetaRegime.CASE1Z
    if z2 == 1.0:
        return DoubleZetaRegime.CASEZ1
    return DoubleZetaRegime.CASEZZ


def _case_region_ok(sig1, sig2, z1, z2):
    if z1 == 1.0 and z2 == 1.0:
        return sig1 > 0.0 and sig2 > 1.0 and sig1 + sig2 > 2.0
    if z1 == 1.0:
        return sig1 > 1.0 and sig2 > 0.0
    if z2 == 1.0:
        return sig1 > 0.0 and sig2 > 1.0
    return sig1 > 0.0 and sig2 > 0.0


def classify_double(sig1, sig2, a, z1, z2):
    """Regime tag for (sigma1, sigma2, a, z1, z2) over the per-case regions."""
    if _case_region_ok(sig1, sig2, z1, z2):
        return DoubleZetaParams(a=a, z1=z1, z2=z2, regime=_case_regime(z1, z2))
    if (z1 == 1.0 and z2 == 1.0 and 0.0 < sig1 < 1.0 and sig2 > 1.0
            and 1.0 < sig1 + sig2 < 2.0):
        return DoubleZetaParams(a=a, z1=z1, z2=z2,
                                regime=DoubleZetaRegime.CONTINUED_STRIP)
    raise RegionError(
        f"(sigma1={sig1}, sigma2={sig2}, z1={z1}, z2={z2}) outside every "
        f"supported representation region")


# ---------------------------------------------------------------------------
# the 2D kernel calligraphic-H
# ---------------------------------------------------------------------------

def cal_h(a, x, y):
    """H(a, x+y)/(e^y - 1) + H(1, y)/(x + y) for x, y > 0 (scalar or array)."""
    if not 0.0 < a <= 1.0:
        raise DomainError(f"a must be in (0, 1], got {a}")
    xa = np.asarray(x, dtype=np.float64)
    ya = np.asarray(y, dtype=np.float64)
    if np.any(xa <= 0.0) or np.any(ya <= 0.0):
        raise DomainError("cal_h requires x > 0 and y > 0")
    xb, yb = np.broadcast_arrays(xa, ya)
    out = kernels.cal_h_arr(float(a), np.ascontiguousarray(xb.ravel(), dtype=np.float64),
                            np.ascontiguousarray(yb.ravel(), dtype=np.float64))
    if np.isscalar(x) and np.isscalar(y):
        return float(out[0])
    return out.reshape(xb.shape)


# ---------------------------------------------------------------------------
# inner sums Phi(s2, m+1+a, z2), streamed over consecutive m-chunks
# ---------------------------------------------------------------------------

class _InnerSeq:
    """Streaming values, magnitude bounds, and increment bounds of
    G_m = Phi(s2, m+1+a, z2)."""

    def __init__(self, s2, a, z2, tol):
        self.s2 = complex(s2)
        self.a = float(a)
        self.z2 = float(z2)
        self.m_next = 0
        sig2 = self.s2.real
        if z2 == 1.0:
            if sig2 <= 1.0:
                raise RegionError("inner sum with z2 = 1 needs Re s2 > 1")
            self.g_cur, _ = hurwitz_zeta_em(self.s2, a + 1.0, tol=tol * 1e-3)
        elif z2 == -1.0:
            from .lerch import phi_neg1_em

            self.g0, _ = phi_neg1_em(self.s2, a + 1.0, tol=tol * 1e-3)
            self.s_cur = 0.0j
        else:
            if sig2 <= 0.0:
                raise RegionError("inner sum with |z2| < 1 needs Re s2 > 0")
            r = abs(z2)
            self.n2 = max(8, int(math.ceil(math.log(1e-17 * (1.0 - r)) / math.log(r))))

    def _pow(self, base):
        # base^{-s2}, staying real when the exponent is real
        if self.s2.imag == 0.0:
            return base ** -self.s2.real
        return np.exp(-self.s2 * np.log(base))

    def next(self, count):
        m = np.arange(self.m_next, self.m_next + count)
        alpha = m + 1.0 + self.a
        if self.z2 == 1.0:
            pows = self._pow(alpha)
            g = self.g_cur - np.concatenate(([0.0], np.cumsum(pows[:-1])))
            self.g_cur = self.g_cur - pows.sum()
        elif self.z2 == -1.0:
            c = self._pow(alpha)
            signs = np.where(m % 2 == 0, 1.0, -1.0)
            s_vals = self.s_cur + np.concatenate(([0.0], np.cumsum(signs[:-1] * c[:-1])))
            g = signs * (self.g0 - s_vals)
            self.s_cur = self.s_cur + (signs * c).sum()
        else:
            n = np.arange(self.n2)
            g = (self.z2 ** n * self._pow(alpha[:, None] + n[None, :])).sum(axis=1)
        self.m_next += count
        return g

    def bound_pieces(self, with_increment=False):
        """[(coef, exponent)] with |G_m| <= sum coef*(m+1+a)^{-exponent}, and
        the analogous pieces for |G_m - G_{m+1}| when requested."""
        sig2 = self.s2.real
        if self.z2 == 1.0:
            mag = [(1.0 / (sig2 - 1.0), sig2 - 1.0), (1.0, sig2)]
            inc = [(1.0, sig2)]
        elif self.z2 == -1.0:
            c = 1.0 + abs(self.s2) * (1.0 + 1.0 / (2.0 * sig2))
            mag = [(c, sig2)]
            inc = [(1.0 + 2.0 * c, sig2)]
        else:
            r = abs(self.z2)
            mag = [(1.0 / (1.0 - r), sig2)]
            inc = [(abs(self.s2) / (1.0 - r), sig2 + 1.0)]
        return (mag, inc) if with_increment else mag


def _power_tail(coef, q, m0, a):
    # sum_{m >= m0} coef * (m+a)^{-q}, bounded by first term + integral
    if q <= 1.0:
        return math.inf
    base = m0 + a
    return coef * (base ** -q + base ** (1.0 - q) / (q - 1.0))


def _phi2_tail_bound(s1, inner, z1, m0, a):
    sig1 = complex(s1).real
    mag, inc = inner.bound_pieces(with_increment=True)
    if abs(z1) < 1.0:
        r = abs(z1)
        b = sum(c * (m0 + 1.0 + a) ** -q for c, q in mag)
        return r ** m0 * (m0 + a) ** -sig1 * b / (1.0 - r)
    if z1 == 1.0:
        return sum(_power_tail(c, sig1 + q, m0, a) for c, q in mag)
    # z1 = -1: pair consecutive terms; each pair is bounded by the term-to-term
    # increment, which gains one power of m
    t = sum(_power_tail(abs(s1) * c, sig1 + q + 1.0, m0, a) for c, q in mag)
    t += sum(_power_tail(c, sig1 + q, m0, a) for c, q in inc)
    return 0.5 * t + sum(c * (m0 + a) ** -(sig1 + q) for c, q in mag)


def _euler_alternating_tail(gvals, parity, tol_abs):
    """sum_{m >= M} (-1)^m g(m) from samples g(M), g(M+1), ... of a completely
    monotone g, via the Euler transformation
        tail = (-1)^M sum_j (-1)^j Delta^j g(M) / 2^{j+1};
    the transformed terms are positive and decreasing, so the first omitted
    term is a valid remainder bound.  Returns (tail, bound)."""
    diffs = np.array(gvals, dtype=np.float64)
    total = 0.0
    term_prev = math.inf
    bound = abs(diffs[0]) * 0.5
    for j in range(len(gvals) - 1):
        term = (-1.0) ** j * diffs[0] / 2.0 ** (j + 1)
        if term <= 0.0 or term > term_prev:
            break  # monotonicity exhausted (noise floor)
        total += term
        bound = 0.5 * term
        if term < tol_abs:
            break
        term_prev = term
        diffs = np.diff(diffs)
    return parity * total, bound


def _phi2_iterated(s1, s2, a, z1, z2, tol=1e-12, max_terms=4_000_000):
    """Iterated-series Phi_2 on the case region of (z1, z2); certified tail.

    Returns (value, bound).  Raises NonConvergence when the outer decay rate
    is too slow for the term cap (rates near the region boundary).
    """
    s1 = complex(s1)
    real_case = s1.imag == 0.0 and complex(s2).imag == 0.0
    inner = _InnerSeq(s2, a, z2, tol)
    acc = 0.0j
    chunk = 2048
    m0 = 0
    while m0 < max_terms:
        m = np.arange(m0, m0 + chunk)
        g = inner.next(chunk)
        if s1.imag == 0.0:
            opow = (m + a) ** -s1.real
        else:
            opow = np.exp(-s1 * np.log(m + a))
        if z1 == 1.0:
            zp = 1.0
        elif z1 == -1.0:
            zp = np.where(m % 2 == 0, 1.0, -1.0)
        else:
            zp = z1 ** m
        acc += (zp * opow * g).sum()
        m0 += chunk
        bound = _phi2_tail_bound(s1, inner, z1, m0, a)
        if bound <= tol * max(abs(acc), 1e-3):
            return complex(acc), bound
        if z1 == -1.0 and real_case and m0 >= 4096:
            # completely monotone terms: resum the alternating tail
            nd = 40
            mt = np.arange(m0, m0 + nd)
            gt = inner.next(nd).real * (mt + a) ** -s1.real
            parity = 1.0 if m0 % 2 == 0 else -1.0
            tail, bound = _euler_alternating_tail(gt, parity, tol * abs(acc) * 0.1)
            if bound <= tol * max(abs(acc + tail), 1e-3):
                return complex(acc + tail), bound
            m0 += nd
            acc += (np.where(mt % 2 == 0, 1.0, -1.0) * gt).sum()
        chunk = min(2 * chunk, 65536)
    raise NonConvergence(
        f"phi2 series: tail bound {bound:.2e} after {m0} outer terms "
        f"(decay too slow at s1={s1}, s2={s2}, z=({z1},{z2}))")


# ---------------------------------------------------------------------------
# z1 = z2 = 1, real exponents: Euler-Maclaurin resummation / continuation
# ---------------------------------------------------------------------------

def _binom_seq(w, imax):
    out = np.empty(imax + 2)
    out[0] = 1.0
    for i in range(imax + 1):
        out[i + 1] = out[i] * (-(w + i)) / (i + 1.0)
    return out


def zeta2_em(s1, s2, a, tol=1e-12, m_split=1024, i_max=10):
    """zeta_2(s1, s2; a) at real s1, s2 via Euler-Maclaurin resummation.

    Sums m < m_split directly (inner zeta by recurrence) and replaces the
    outer tail with its expansion through Hurwitz zetas at shifted exponents.
    The assembled expression is analytic in (s1, s2) and therefore also
    provides the continuation to 1 < s1 + s2 < 2, where the plain double sum
    diverges.  Requires s1 + s2 > 1, s2 away from 1, s1 + s2 away from 2.

    Returns (value, error_bound).
    """
    s1, s2 = float(s1), float(s2)
    if abs(s2 - 1.0) < 1e-8:
        raise PoleError("inner exponent s2 at its pole 1")
    if abs(s1 + s2 - 2.0) < 1e-8:
        raise PoleError("s1 + s2 on the singular line 2")
    if s1 + s2 <= 1.0 + 1e-8:
        raise RegionError("zeta2_em needs s1 + s2 > 1")
    m = m_split
    sub_tol = tol * min(1.0, (m + a) ** (s1 - 1.0)) * 1e-2
    g0, g0_err = hurwitz_zeta_em(s2, a + 1.0, tol=sub_tol)
    j = np.arange(1, m)
    pows = (j + a) ** -s2
    g = g0.real - np.concatenate(([0.0], np.cumsum(pows)))
    mm = np.arange(m)
    partial = ((mm + a) ** -s1 * g).sum()
    err = g0_err * m ** max(0.0, 1.0 - s1)

    base = m + a  # = (m_split - 1) + 1 + a, the inner-zeta shift of the tail head
    ws = [s2 - 1.0, s2]
    gs = [1.0 / (s2 - 1.0), 0.5]
    poch = s2
    for k in range(1, _EM_K + 1):
        ws.append(s2 + 2.0 * k - 1.0)
        gs.append(_EM_B[k - 1] * poch)
        poch *= (s2 + 2 * k - 1) * (s2 + 2 * k)
    value = partial
    for w, gcoef in zip(ws, gs):
        binom = _binom_seq(w, i_max)
        aw = 0.0
        for i in range(i_max + 1):
            zv, zb = hurwitz_zeta_em(s1 + w + i, m + a, tol=tol * 1e-3)
            aw += binom[i] * zv.real
            err += abs(gcoef) * abs(binom[i]) * zb
        rho = abs(binom[i_max + 1]) * _power_tail(1.0, s1 + w + i_max + 1.0, m, a)
        err += abs(gcoef) * rho
        value += gcoef * aw
    # inner Euler-Maclaurin remainder summed over the tail
    r2 = abs(_EM_B[_EM_K]) * abs(_pochhammer(s2, 2 * _EM_K + 1))
    err += r2 * _power_tail(1.0, s1 + s2 + 2.0 * _EM_K + 1.0, m, a)
    if not err < abs(value) * 1e-3 + 1.0:
        raise NonConvergence(f"zeta2_em error bound {err:.2e} too large")
    return value, err


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

def _validate_common(a, z1, z2):
    if not 0.0 < a <= 1.0:
        raise DomainError(f"a must be in (0, 1], got {a}")
    for name, z in (("z1", z1), ("z2", z2)):
        zf = float(np.real(z))
        if complex(z).imag != 0.0 or zf == 0.0 or abs(zf) > 1.0:
            raise DomainError(f"{name} must lie in [-1, 1] \\ {{0}}, got {z}")
    return float(np.real(z1)), float(np.real(z2))


def phi2_series(s1, s2, a, z1, z2, rel_tol=1e-12):
    """Phi_2 by its double series on the absolute-convergence region
    Re s1 > 0, Re s2 > 1, Re(s1 + s2) > 2; RegionError outside."""
    s1, s2 = complex(s1), complex(s2)
    z1, z2 = _validate_common(a, z1, z2)
    if not (s1.real > 0.0 and s2.real > 1.0 and (s1 + s2).real > 2.0):
        raise RegionError(
            f"absolute region needs Re s1 > 0, Re s2 > 1, Re(s1+s2) > 2; "
            f"got ({s1}, {s2})")
    if (z1 == 1.0 and z2 == 1.0 and s1.imag == 0.0 and s2.imag == 0.0):
        value, _ = zeta2_em(s1.real, s2.real, a, tol=rel_tol)
        return complex(value)
    value, _ = _phi2_iterated(s1, s2, a, z1, z2, tol=rel_tol)
    return value


def phi2_case(s1, s2, a, z1, z2, rel_tol=1e-12, max_terms=4_000_000):
    """Phi_2 by the iterated series on the full case region of (z1, z2)
    (wider than the absolute region for z's below 1)."""
    s1, s2 = complex(s1), complex(s2)
    z1, z2 = _validate_common(a, z1, z2)
    if not _case_region_ok(s1.real, s2.real, z1, z2):
        raise RegionError("outside the case region for this (z1, z2)")
    if (z1 == 1.0 and z2 == 1.0 and s1.imag == 0.0 and s2.imag == 0.0):
        value, _ = zeta2_em(s1.real, s2.real, a, tol=rel_tol)
        return complex(value)
    value, _ = _phi2_iterated(s1, s2, a, z1, z2, tol=rel_tol,
                              max_terms=max_terms)
    return value


def gamma2_phi2(s1, s2, a, z1, z2, cfg=None, order="xy", full_output=False):
    """Gamma(s1) Gamma(s2) Phi_2(s1, s2, a, z1, z2) by iterated quadrature of
    the double Mellin integrand, on the validity cases:

      z1 = z2 = 1:     Re s1 > 0, Re s2 > 1, Re(s1+s2) > 2
      z1 = 1, z2 != 1: Re s1 > 1, Re s2 > 0
      z1 != 1, z2 = 1: Re s1 > 0, Re s2 > 1
      z1, z2 != 1:     Re s1 > 0, Re s2 > 0

    The integrand is taken in the exponentially substituted (eta, theta)
    coordinates, where the corner blow-up of the (x, y) form folds into the
    exponent and any oscillation is uniform.  ``order="yx"`` swaps the
    iteration order (Fubini check).
    """
    cfg = cfg or DEFAULT_CFG
    s1, s2 = complex(s1), complex(s2)
    z1, z2 = _validate_common(a, z1, z2)
    if max(abs(s1.imag), abs(s2.imag)) > OSCILLATION_T_CAP:
        raise DomainError(f"|Im s| beyond supported cap {OSCILLATION_T_CAP}")
    if not _case_region_ok(s1.real, s2.real, z1, z2):
        raise RegionError(
            f"({s1}, {s2}) outside the integral-representation region for "
            f"z=({z1}, {z2})")
    a = float(a)

    def f(eta, theta):
        return kernels.dz_plane(eta, theta, s1.real, s1.imag,
                                s2.real, s2.imag, a, z1, z2)

    res = integrate_plane(f, cfg, domain="plane", order=order)
    value = complex(res.value)
    if s1.imag == 0.0 and s2.imag == 0.0:
        value = complex(value.real, 0.0)
    if full_output:
        return value, QuadratureResult(value, res.err_estimate, res.nodes_used)
    return value


def zeta2_continued(s1, s2, a, cfg=None, order="xy", full_output=False):
    """zeta_2(s1, s2; a) on the strip 0 < Re s1 < 1, Re s2 > 1,
    1 < Re(s1+s2) < 2, through the two-kernel integral representation
    divided by Gamma(s1) Gamma(s2).

    Re s1 above 1 - 1e-3 is rejected: the 1/(x+y) component then decays too
    slowly for double-precision truncation.
    """
    cfg = cfg or DEFAULT_CFG
    s1, s2 = complex(s1), complex(s2)
    if not 0.0 < a <= 1.0:
        raise DomainError(f"a must be in (0, 1], got {a}")
    if max(abs(s1.imag), abs(s2.imag)) > OSCILLATION_T_CAP:
        raise DomainError(f"|Im s| beyond supported cap {OSCILLATION_T_CAP}")
    sig1, sig2 = s1.real, s2.real
    if not (0.0 < sig1 < 1.0 and sig2 > 1.0 and 1.0 < sig1 + sig2 < 2.0):
        raise RegionError(
            f"strip representation needs 0 < Re s1 < 1 < Re s2 and "
            f"1 < Re(s1+s2) < 2; got ({s1}, {s2})")
    if sig1 > MAX_SIGMA1_STRIP:
        raise RegionError(f"Re s1 > {MAX_SIGMA1_STRIP} unsupported in this path")
    a = float(a)

    def f(eta, theta):
        return kernels.dz_strip(eta, theta, s1.real, s1.imag,
                                s2.real, s2.imag, a)

    # the H(1, e^theta)/(e^eta + e^theta) component peaks near eta = theta,
    # so the inner window must track the outer node
    def win(outer):
        return (-8.0, max(8.0, outer + 8.0))

    res = integrate_plane(f, cfg, domain="plane", order=order, inner_window=win)
    num = complex(res.value)
    if s1.imag == 0.0 and s2.imag == 0.0:
        num = complex(num.real, 0.0)
    value = num / (gamma(s1) * gamma(s2))
    if full_output:
        return value, QuadratureResult(value, res.err_estimate, res.nodes_used)
    return value
