"""Numerical verification scans for every sign lemma, bound, and iff gate.

Each scan produces a ScanReport: deterministic given its grid, serializable
to JSON, with ``passed`` true exactly when no violations were recorded.
Claims come in two directions:

* universal claims (kernel negative everywhere, |CF| <= 1, strict signs):
  any offending grid point is a violation;
* converse/witness claims (a < 1/2 admits a sign flip): failing to find the
  promised witness is the violation, and the witness search includes the
  constructive points x = floor(y^{-1/2}) * y near y -> 0.

``exceedance_search`` and ``real_zero_search`` are exploratory: they always
return well-formed reports and never assert existence (the guaranteed t0 may
sit far beyond any desk-scale horizon).
"""

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .dist_double import DoubleDistSpec, cf2, density2
from .dist_single import SingleDistSpec, cf, density
from .double_zeta import cal_h, phi2_case, zeta2_continued, zeta2_em
from .errors import DomainError, NonConvergence
from .lerch import h_kernel, hurwitz_zeta, hurwitz_zeta_em, phi
from .numerics import QuadratureConfig, integrate_plane, integrate_realline

BOUND_SLACK = 1e-9
FOURIER_TOL_1D = 1e-6
FOURIER_TOL_2D = 1e-5

_SCAN_CFG = QuadratureConfig(rel_tol=1e-9, abs_tol=1e-11)


@dataclass
class ScanReport:
    claim_id: str
    grid_spec: str
    violations: list
    max_slack: float
    passed: bool
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.passed != (len(self.violations) == 0):
            raise ValueError("passed must mirror an empty violation list")

    def to_json(self):
        def conv(x):
            if isinstance(x, (np.floating, np.integer)):
                return x.item()
            if isinstance(x, complex):
                return {"re": x.real, "im": x.imag}
            if isinstance(x, (list, tuple)):
                return [conv(v) for v in x]
            if isinstance(x, dict):
                return {k: conv(v) for k, v in x.items()}
            return x

        return json.dumps({
            "claim_id": self.claim_id,
            "grid": self.grid_spec,
            "violations": conv(self.violations[:50]),
            "max_slack": conv(self.max_slack),
            "passed": self.passed,
            "details": conv(self.details),
        })


def _report(claim_id, grid_spec, violations, max_slack, details=None):
    return ScanReport(claim_id=claim_id, grid_spec=grid_spec,
                      violations=violations, max_slack=float(max_slack),
                      passed=not violations, details=details or {})


# ---------------------------------------------------------------------------
# kernel sign scans
# ---------------------------------------------------------------------------

def sign_scan_h(a, x_grid=None):
    """Sign of H(a, x): all-negative for a >= 1/2, a positive witness below."""
    if x_grid is None:
        x_grid = np.geomspace(1e-6, 50.0, 400)
    vals = h_kernel(a, x_grid)
    grid_spec = f"log grid x in [{x_grid[0]:.2g}, {x_grid[-1]:.2g}], n={len(x_grid)}"
    if a >= 0.5:
        bad = np.nonzero(vals >= 0.0)[0]
        violations = [((float(x_grid[i]),), float(vals[i])) for i in bad]
        return _report(f"h-kernel-negative[a={a}]", grid_spec, violations,
                       float(vals.max()))
    pos = np.nonzero(vals > 0.0)[0]
    if len(pos):
        i = pos[np.argmax(vals[pos])]
        return _report(f"h-kernel-witness[a={a}]", grid_spec, [],
                       float(vals[i]),
                       details={"witness_x": float(x_grid[i]),
                                "witness_value": float(vals[i])})
    return _report(f"h-kernel-witness[a={a}]", grid_spec,
                   [(("no positive point",), float(vals.max()))],
                   float(vals.max()))


def sign_scan_calh(a, xy_grid=None):
    """Sign of the 2D kernel: negative everywhere iff a >= 1/2; the witness
    search for a < 1/2 walks the constructive ray x = floor(y^{-1/2}) y."""
    if xy_grid is None:
        g = np.geomspace(1e-4, 30.0, 48)
        xx, yy = np.meshgrid(g, g)
        xy_grid = np.column_stack([xx.ravel(), yy.ravel()])
    x = np.asarray(xy_grid)[:, 0]
    y = np.asarray(xy_grid)[:, 1]
    vals = cal_h(a, x, y)
    grid_spec = f"grid of {len(x)} (x, y) points in [1e-4, 30]^2"
    if a >= 0.5:
        bad = np.nonzero(vals >= 0.0)[0]
        violations = [((float(x[i]), float(y[i])), float(vals[i])) for i in bad]
        return _report(f"cal-h-negative[a={a}]", grid_spec, violations,
                       float(vals.max()))
    ys = np.geomspace(1e-4, 0.2, 30)
    ns = np.floor(ys ** -0.5)
    xs = ns * ys
    cons = cal_h(a, xs, ys)
    allv = np.concatenate([vals, cons])
    if np.any(allv > 0.0):
        i = int(np.argmax(cons))
        det = {"witness_x": float(xs[i]), "witness_y": float(ys[i]),
               "witness_value": float(cons[i])} if cons[i] > 0 else \
              {"witness_value": float(allv.max())}
        return _report(f"cal-h-witness[a={a}]",
                       grid_spec + " + constructive ray", [],
                       float(allv.max()), details=det)
    return _report(f"cal-h-witness[a={a}]", grid_spec + " + constructive ray",
                   [(("no positive point",), float(allv.max()))], float(allv.max()))


# ---------------------------------------------------------------------------
# positivity / negativity scans
# ---------------------------------------------------------------------------

_PHI_GRID = {
    "sigma": (0.3, 0.7, 1.0, 1.5, 2.5),
    "a": (0.2, 0.5, 0.8, 1.0),
    "z": (-1.0, -0.5, -0.1, 0.5, 0.9),
}

_PHI2_POINTS = {
    # regime tag -> [(s1, s2, z1, z2)]
    "case11": [(1.5, 1.6, 1.0, 1.0), (0.5, 2.0, 1.0, 1.0), (2.0, 2.0, 1.0, 1.0)],
    "case1z": [(1.5, 0.5, 1.0, -0.5), (2.0, 1.0, 1.0, -1.0), (1.2, 0.3, 1.0, 0.5)],
    "casez1": [(0.5, 1.5, -0.5, 1.0), (0.9, 2.0, -1.0, 1.0), (0.3, 1.4, 0.5, 1.0)],
    "casezz": [(0.5, 0.5, -1.0, -1.0), (1.0, 0.8, 0.5, -0.5), (0.4, 0.6, -0.5, 0.5)],
}


def _phi2_value(s1, s2, a, z1, z2):
    """Phi_2 at real exponents: series first, quadrature where the outer
    decay is too slow for the term cap."""
    from .double_zeta import gamma2_phi2
    from .numerics import gamma_real

    try:
        return phi2_case(s1, s2, a, z1, z2, rel_tol=1e-9).real
    except NonConvergence:
        g = gamma2_phi2(s1, s2, a, z1, z2, cfg=_SCAN_CFG).real
        return g / (gamma_real(s1) * gamma_real(s2))


def positivity_scan(kind, grid=None):
    """Strict-sign scans; kind selects the claim:

    * ``phi``         Phi(sigma, a, z) > 0 for z in [-1, 1) \\ {0}
    * ``phi2``        Phi_2 > 0 on each representation-case region
    * ``hurwitz_neg`` zeta(sigma, a) < 0 for a >= 1/2, 0 < sigma < 1
    * ``zeta2_neg``   zeta_2(s1, s2; a) < 0 on the strip for a >= 1/2
    """
    violations = []
    worst = -math.inf
    if kind == "phi":
        g = grid or _PHI_GRID
        n = 0
        for sig in g["sigma"]:
            for a in g["a"]:
                for z in g["z"]:
                    v = phi(sig, a, z).real
                    n += 1
                    worst = max(worst, -v)
                    if not v > 0.0:
                        violations.append(((sig, a, z), v))
        return _report("phi-positive", f"{n} (sigma, a, z) points",
                       violations, worst)
    if kind == "phi2":
        a_vals = (0.3, 0.6, 1.0)
        n = 0
        for case, pts in _PHI2_POINTS.items():
            for (s1, s2, z1, z2) in pts:
                for a in a_vals:
                    v = _phi2_value(s1, s2, a, z1, z2)
                    n += 1
                    worst = max(worst, -v)
                    if not v > 0.0:
                        violations.append(((case, s1, s2, a, z1, z2), v))
        return _report("phi2-positive", f"{n} case-region points", violations, worst)
    if kind == "hurwitz_neg":
        a_vals = (0.5, 0.75, 1.0)
        sig_vals = grid or (0.1, 0.25, 0.4, 0.55, 0.7, 0.85, 0.95)
        n = 0
        for a in a_vals:
            for sig in sig_vals:
                v = hurwitz_zeta(sig, a).real
                n += 1
                worst = max(worst, v)
                if not v < 0.0:
                    violations.append(((sig, a), v))
        return _report("hurwitz-negative", f"{n} (sigma, a) points", violations, worst)
    if kind == "zeta2_neg":
        a_vals = (0.5, 0.8, 1.0)
        pts = grid or ((0.3, 1.2), (0.5, 1.3), (0.7, 1.2), (0.2, 1.5), (0.45, 1.5))
        n = 0
        for a in a_vals:
            for (s1, s2) in pts:
                v = zeta2_continued(s1, s2, a, cfg=_SCAN_CFG).real
                n += 1
                worst = max(worst, v)
                if not v < 0.0:
                    violations.append(((s1, s2, a), v))
        return _report("zeta2-negative", f"{n} strip points", violations, worst)
    raise DomainError(f"unknown positivity kind {kind!r}")


# ---------------------------------------------------------------------------
# characteristic-function scans
# ---------------------------------------------------------------------------

def cf_bound_scan(spec, t_grid=None):
    """max |F| over the grid must not exceed 1 + 1e-9."""
    if isinstance(spec, SingleDistSpec):
        if t_grid is None:
            t_grid = np.arange(-20.0, 20.0 + 1e-9, 0.25)
        vals = np.array([abs(cf(spec, t)) for t in t_grid])
        label = f"(sigma={spec.sigma}, a={spec.a}, z={spec.z})"
        points = [(float(t),) for t in t_grid]
        grid_spec = f"1D t grid [{t_grid[0]}, {t_grid[-1]}] step {t_grid[1]-t_grid[0]:.3g}"
    elif isinstance(spec, DoubleDistSpec):
        if t_grid is None:
            t_grid = default_t_grid_2d()
        vals = np.array([abs(cf2(spec, t1, t2)) for (t1, t2) in t_grid])
        label = (f"(sigma=({spec.sigma1}, {spec.sigma2}), a={spec.a}, "
                 f"z=({spec.z1}, {spec.z2}))")
        points = [(float(t1), float(t2)) for (t1, t2) in t_grid]
        grid_spec = f"2D axis/diagonal cross, {len(t_grid)} points"
    else:
        raise DomainError("spec must be a validated distribution spec")
    bad = np.nonzero(vals > 1.0 + BOUND_SLACK)[0]
    violations = [(points[i], float(vals[i])) for i in bad]
    return _report(f"cf-bound{label}", grid_spec, violations,
                   float(vals.max() - 1.0))


def default_t_grid_2d(tmax=4.0, step=1.0):
    """Axis and diagonal cross in the (t1, t2) plane (full square grids at
    0.25 step are quadrature-hours at desk scale)."""
    ts = np.arange(-tmax, tmax + 1e-9, step)
    pts = []
    for t in ts:
        pts.extend([(t, 0.0), (0.0, t), (t, t), (t, -t)])
    uniq = sorted(set(pts))
    return uniq


def fourier_check(spec, t_points=None):
    """Quadrature Fourier transform of the density vs the CF.

    1D threshold 1e-6 absolute, 2D 1e-5.  In the series-backed regimes the
    two sides come from genuinely independent pipelines.
    """
    if isinstance(spec, SingleDistSpec):
        if t_points is None:
            t_points = (0.0, 0.5, -0.5, 1.0, -1.0, 1.7, -1.7, 2.0, 5.0, -5.0,
                        10.0, -10.0)
        violations = []
        worst = 0.0
        for t in t_points:
            ft = integrate_realline(
                lambda y: density(spec, y) * np.exp(1j * t * y),
                cfg=_SCAN_CFG, window=spec.support).value
            err = abs(ft - cf(spec, t))
            worst = max(worst, err)
            if err > FOURIER_TOL_1D:
                violations.append(((float(t),), err))
        return _report(
            f"fourier-1d(sigma={spec.sigma}, a={spec.a}, z={spec.z})",
            f"{len(t_points)} t points", violations, worst)
    if isinstance(spec, DoubleDistSpec):
        if t_points is None:
            t_points = ((0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 0.5),
                        (-1.0, 0.5), (2.0, -1.0), (0.7, -1.3), (0.5, 0.5),
                        (-2.0, 2.0))
        violations = []
        worst = 0.0
        for (t1, t2) in t_points:
            def f(eta, theta):
                return (density2(spec, eta, theta)
                        * np.exp(1j * (t1 * eta + t2 * theta)))

            ft = integrate_plane(f, _SCAN_CFG, domain="plane",
                                 inner_window=spec.inner_window).value
            err = abs(ft - cf2(spec, t1, t2))
            worst = max(worst, err)
            if err > FOURIER_TOL_2D:
                violations.append(((float(t1), float(t2)), err))
        return _report(
            f"fourier-2d(sigma=({spec.sigma1}, {spec.sigma2}), a={spec.a}, "
            f"z=({spec.z1}, {spec.z2}))",
            f"{len(t_points)} (t1, t2) points", violations, worst)
    raise DomainError("spec must be a validated distribution spec")


# ---------------------------------------------------------------------------
# the lower-bound constants and the exceedance search
# ---------------------------------------------------------------------------

def solve_y0(tol=1e-14):
    """Positive root of e^y = 2y + 1 by bisection on [1, 2]."""
    f = lambda y: math.exp(y) - 2.0 * y - 1.0
    lo, hi = 1.0, 2.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if f(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class RasaConstants:
    """Constants of the real-part lower bound for zeta(sigma0 + it, a):
    an integer l >= 6, the root y0 of e^y = 2y + 1, c2 = 2 y0 (2 y0 + 1)^-2,
    any 0 < c1 < c2, and c0 = cos(2 pi / l) (log l)^(sigma0 - 1)."""

    sigma0: float
    l: int
    theta: float
    c1: float
    y0: float
    c2: float
    c0: float

    @classmethod
    def build(cls, sigma0, l=6, theta=0.0, c1=None):
        if not 0.5 <= sigma0 < 1.0:
            raise DomainError(f"sigma0 must be in [1/2, 1), got {sigma0}")
        if int(l) != l or l < 6:
            raise DomainError(f"l must be an integer >= 6, got {l}")
        if not 0.0 <= theta < 2.0 * math.pi:
            raise DomainError(f"theta must be in [0, 2 pi), got {theta}")
        y0 = solve_y0()
        c2 = 2.0 * y0 * (2.0 * y0 + 1.0) ** -2.0
        if c1 is None:
            c1 = 0.5 * c2
        if not 0.0 < c1 < c2:
            raise DomainError(f"need 0 < c1 < c2 = {c2}, got c1 = {c1}")
        c0 = math.cos(2.0 * math.pi / l) * math.log(l) ** (sigma0 - 1.0)
        return cls(sigma0=float(sigma0), l=int(l), theta=float(theta),
                   c1=float(c1), y0=y0, c2=c2, c0=c0)


def rasa_bound(consts, t0):
    """The guaranteed lower-bound value c0 c1 (log t0)^(1-sigma0)/(1-sigma0)."""
    if not consts.c1 < consts.c2:
        raise DomainError("constants violate c1 < c2")
    if t0 <= 1.0:
        raise DomainError("t0 must exceed 1")
    s0 = consts.sigma0
    return consts.c0 * consts.c1 / (1.0 - s0) * math.log(t0) ** (1.0 - s0)


def exceedance_search(sigma, a, t_max=100.0, step=0.25):
    """Scan t in (0, t_max] for |zeta(sigma+it, a)| > |zeta(sigma, a)|.

    A witness shows the zeta-normalized function exceeds modulus one and so
    cannot be a characteristic function; absence of a witness at desk scale
    is expected (the guaranteed exceedance grows only like a power of log t)
    and is reported, never asserted as a failure.
    """
    if not 0.5 <= sigma < 1.0:
        raise DomainError(f"sigma must be in [1/2, 1), got {sigma}")
    base = abs(hurwitz_zeta_em(complex(sigma, 0.0), a)[0])
    ts = np.arange(step, t_max + 1e-9, step)
    ratios = np.array([abs(hurwitz_zeta_em(complex(sigma, t), a)[0]) / base
                       for t in ts])
    i = int(np.argmax(ratios))
    found = ratios[i] > 1.0
    details = {
        "sigma": sigma, "a": a, "base_modulus": base,
        "best_t": float(ts[i]), "best_ratio": float(ratios[i]),
        "witness_found": bool(found),
        "witness_t": float(ts[i]) if found else None,
    }
    return _report(f"exceedance[sigma={sigma}, a={a}]",
                   f"t in (0, {t_max}] step {step}", [], float(ratios[i] - 1.0),
                   details=details)


def real_zero_search(a, sigma_lo=0.5, sigma_hi=1.0, n_grid=24):
    """Bracket-and-bisect search for a real zero of zeta_2(s, s; a) on the
    diagonal of the strip (1 < 2s < 2).

    The two-kernel integral representation requires Re s2 > 1 and therefore
    does not reach the diagonal; the Euler-Maclaurin resummation of the outer
    series provides the continuation used here.  Returns the zero location or
    None; existence for any particular a is not asserted.
    """
    lo = max(sigma_lo, 0.5) + 1e-3
    hi = min(sigma_hi, 1.0) - 1e-3
    sigmas = np.linspace(lo, hi, n_grid)
    vals = np.array([zeta2_em(s, s, a)[0] for s in sigmas])
    sign_flip = np.nonzero(np.diff(np.sign(vals)) != 0)[0]
    if len(sign_flip) == 0:
        return None
    i = int(sign_flip[0])
    slo, shi = sigmas[i], sigmas[i + 1]
    flo = vals[i]
    while shi - slo > 1e-8:
        mid = 0.5 * (slo + shi)
        fm = zeta2_em(mid, mid, a)[0]
        if (fm < 0.0) == (flo < 0.0):
            slo, flo = mid, fm
        else:
            shi = mid
    return 0.5 * (slo + shi)


def scan_real_zero(a, sigma_lo=0.5, sigma_hi=1.0, n_grid=24):
    """ScanReport wrapper around real_zero_search (always passes; the result
    is informational)."""
    sigma0 = real_zero_search(a, sigma_lo, sigma_hi, n_grid)
    details = {"a": a, "sigma0": sigma0, "found": sigma0 is not None}
    if sigma0 is not None:
        details["residual"] = float(zeta2_em(sigma0, sigma0, a)[0])
    return _report(f"real-zero[a={a}]",
                   f"diagonal sigma in [{sigma_lo}, {sigma_hi}], {n_grid} nodes",
                   [], 0.0, details=details)
