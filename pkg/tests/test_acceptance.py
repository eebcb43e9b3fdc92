"""Acceptance gate: every release criterion at its stated tolerance.

Each criterion prints one ``[ACCEPTANCE] ... PASS/FAIL`` line (visible with
``pytest -s`` or in failure output).  Runtime limits are asserted where the
criterion specifies one; the session fixture has already triggered jit
compilation, so timings measure the algorithms.
"""

import math
import time
from contextlib import contextmanager

import numpy as np
import pytest

import reference as ref
from zetadist.dist_double import (cf2, density2, marginal_theta, sample2,
                                  validate_double)
from zetadist.dist_single import (cdf, cf, density, sample, single_region_ok,
                                  validate_single)
from zetadist.double_zeta import (gamma2_phi2, phi2_case, phi2_series,
                                  zeta2_continued)
from zetadist.dist_double import double_region_ok
from zetadist.errors import DomainError, InvalidDistribution
from zetadist.lerch import gamma_phi, phi, phi_series
from zetadist.numerics import (QuadratureConfig, gamma, gamma_real,
                               integrate_plane, integrate_realline)
from zetadist.verify import (RasaConstants, cf_bound_scan, exceedance_search,
                             fourier_check, positivity_scan, rasa_bound,
                             scan_real_zero, sign_scan_calh, sign_scan_h,
                             solve_y0)


@contextmanager
def criterion(num, desc, limit=None):
    t0 = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"[ACCEPTANCE] criterion {num}: FAIL - {desc}")
        raise
    elapsed = time.perf_counter() - t0
    stamp = f" ({elapsed:.1f}s)" if limit else ""
    print(f"[ACCEPTANCE] criterion {num}: PASS - {desc}{stamp}")
    if limit is not None:
        assert elapsed < limit, f"runtime {elapsed:.1f}s over the {limit}s budget"


def rel_err(x, y):
    return abs(complex(x) - complex(y)) / abs(complex(y))


SCAN_CFG = QuadratureConfig(rel_tol=1e-7, abs_tol=1e-9)


def _tuned(spec):
    spec.quad_cfg = SCAN_CFG
    return spec


def test_c01_special_function_oracles():
    with criterion(1, "special-function identity oracles at rel 1e-9", limit=5.0):
        assert rel_err(phi(2.0, 1.0, 1.0), ref.ZETA2) < 1e-9
        assert rel_err(phi(3.0, 1.0, 1.0), ref.ZETA3) < 1e-9
        assert rel_err(gamma_phi(1.0, 1.0, -1.0), ref.LOG2) < 1e-9
        assert rel_err(phi2_series(1.0, 2.0, 1.0, 1.0, 1.0), ref.ZETA3) < 1e-9
        assert rel_err(phi2_series(2.0, 2.0, 1.0, 1.0, 1.0), ref.ZETA2_22) < 1e-9


OVERLAP_POINTS_2D = [
    (1.5, 1.6, 1.0, 1.0, -0.5),   # z1 = 1, z2 in (-1, 1)
    (2.0, 1.5, 0.3, 1.0, -1.0),
    (1.8, 1.0, 0.5, 1.0, 0.5),
    (1.2, 2.0, 0.5, -0.5, 1.0),   # z1 in (-1, 1), z2 = 1
    (0.5, 1.6, 1.0, -1.0, 1.0),
    (0.4, 1.7, 0.9, 0.5, 1.0),
    (0.6, 0.7, 0.4, -0.5, 0.5),   # both z below 1
    (1.0, 1.1, 0.7, -1.0, 0.5),
    (0.7, 1.4, 0.9, -1.0, -1.0),
]


def test_c02_series_integral_overlap():
    with criterion(2, "series vs integral overlap at rel 1e-8 "
                      f"({len(OVERLAP_POINTS_2D)} 2D + 6 1D points)", limit=60.0):
        for sigma, a, z in [(1.2, 0.3, 1.0), (2.0, 1.0, -1.0), (5.0, 0.5, 0.5),
                            (1.5, 0.3, -0.5), (3.0, 0.7, 1.0), (1.2, 1.0, -1.0)]:
            q = gamma_phi(sigma, a, z)
            srs = gamma_real(sigma) * phi_series(sigma, a, z).real
            assert rel_err(q, srs) < 1e-8, (sigma, a, z)
        for (s1, s2, a, z1, z2) in OVERLAP_POINTS_2D:
            srs = phi2_case(s1, s2, a, z1, z2, rel_tol=1e-9)
            q = gamma2_phi2(s1, s2, a, z1, z2)
            gg = gamma_real(s1) * gamma_real(s2)
            assert rel_err(q / gg, srs) < 1e-8, (s1, s2, a, z1, z2)


def regime_specs_1d():
    return [validate_single(2.0, 1.0, 1.0),     # Prop21
            validate_single(0.8, 0.5, 1.0),     # Thm22a
            validate_single(0.7, 0.3, -0.5)]    # Thm22b


def regime_specs_2d():
    return [validate_double(2.0, 2.0, 1.0, 1.0, 1.0),      # Thm24
            validate_double(0.5, 1.3, 0.5, 1.0, 1.0),      # Thm25c1
            validate_double(1.5, 0.8, 0.7, 1.0, -0.5),     # Thm25c2
            validate_double(0.6, 1.3, 0.6, -0.5, 1.0),     # Thm25c3
            validate_double(0.6, 0.7, 0.4, -0.5, 0.5)]     # Thm25c4


def test_c03_distribution_well_formedness():
    with criterion(3, "one spec per regime: density >= 0, unit mass "
                      "(1e-7 1D / 1e-6 2D)", limit=120.0):
        ygrid = np.linspace(-35.0, 9.0, 300)
        for spec in regime_specs_1d():
            assert np.all(density(spec, ygrid) >= 0.0)
            mass = integrate_realline(lambda y: density(spec, y),
                                      window=spec.support).value.real
            assert abs(mass - 1.0) < 1e-7, spec.regime
        mass_cfg = QuadratureConfig(rel_tol=1e-8, abs_tol=1e-10)
        for spec in regime_specs_2d():
            for th in (-6.0, -1.0, 0.5, 3.0):
                assert np.all(density2(spec, ygrid, th) >= 0.0)
            f = lambda eta, theta: density2(spec, eta, theta).astype(complex)
            mass = integrate_plane(f, mass_cfg, domain="plane",
                                   inner_window=spec.inner_window).value.real
            assert abs(mass - 1.0) < 1e-6, spec.regime


def test_c04_cf_duality():
    with criterion(4, "Fourier transform of density matches CF "
                      "(12+ 1D points < 1e-6; 9+ 2D points < 1e-5)"):
        spec1 = validate_single(2.0, 1.0, 1.0)
        r = fourier_check(spec1)  # 12 default t points
        assert r.passed and r.max_slack < 1e-6
        spec1c = validate_single(0.8, 0.5, 1.0)
        r = fourier_check(spec1c)
        assert r.passed and r.max_slack < 1e-6
        spec2 = validate_double(2.0, 2.0, 1.0, 1.0, 1.0)
        r = fourier_check(spec2)  # 9 default (t1, t2) points
        assert r.passed and r.max_slack < 1e-5
        spec2c = _tuned(validate_double(0.5, 1.3, 0.5, 1.0, 1.0))
        r = fourier_check(spec2c, t_points=((1.0, 0.5), (0.0, 1.0), (1.0, 0.0),
                                            (-1.0, 1.0), (0.5, -0.5), (2.0, 1.0),
                                            (0.7, -1.3), (1.5, 0.0), (0.0, -2.0)))
        assert r.passed and r.max_slack < 1e-5


def test_c05_bound_suite():
    with criterion(5, "max |F| <= 1 + 1e-9 over the default t grids, "
                      "every regime"):
        for spec in regime_specs_1d():
            r = cf_bound_scan(spec)
            assert r.passed, r.claim_id
        for spec in regime_specs_2d():
            r = cf_bound_scan(_tuned(spec))
            assert r.passed, r.claim_id


def test_c06_sign_suite():
    with criterion(6, "kernel signs both directions; strict sign scans"):
        for a in (0.5, 0.75, 1.0):
            assert sign_scan_h(a).passed
            assert sign_scan_calh(a).passed
        for a in (0.2, 0.3, 0.4):
            r = sign_scan_h(a)
            assert r.passed and r.details["witness_value"] > 0.0
        for a in (0.2, 0.3, 0.4):
            r = sign_scan_calh(a)
            assert r.passed and r.details["witness_value"] > 0.0
        assert positivity_scan("phi").passed
        assert positivity_scan("phi2").passed
        assert positivity_scan("hurwitz_neg").passed
        assert positivity_scan("zeta2_neg").passed


def test_c07_iff_gate():
    with criterion(7, "validation accepts exactly the iff regions "
                      "(10^4 random tuples each, zero mismatches)"):
        rng = np.random.default_rng(20260810)
        mism = 0
        for _ in range(10_000):
            sigma = rng.uniform(-0.5, 3.5)
            a = rng.uniform(-0.2, 1.2)
            z = float(rng.choice([1.0, -1.0, rng.uniform(-1.5, 1.5)]))
            want = single_region_ok(sigma, a, z)
            try:
                validate_single(sigma, a, z)
                got = True
            except (InvalidDistribution, DomainError):
                got = False
            mism += got != want
        assert mism == 0
        for _ in range(10_000):
            s1 = rng.uniform(-0.5, 3.0)
            s2 = rng.uniform(-0.5, 3.0)
            a = rng.uniform(-0.2, 1.2)
            z1 = float(rng.choice([1.0, -1.0, rng.uniform(-1.5, 1.5)]))
            z2 = float(rng.choice([1.0, -1.0, rng.uniform(-1.5, 1.5)]))
            want = double_region_ok(s1, s2, a, z1, z2)
            try:
                validate_double(s1, s2, a, z1, z2)
                got = True
            except (InvalidDistribution, DomainError):
                got = False
            mism += got != want
        assert mism == 0


def test_c08_sampling():
    with criterion(8, "inverse-transform sampling: KS < 1.63/sqrt(n) at "
                      "n = 10^4, deterministic under the seed"):
        n = 10_000
        crit = 1.63 / math.sqrt(n)
        spec = validate_single(2.0, 1.0, 1.0)
        assert np.array_equal(sample(spec, 64, 42).values,
                              sample(spec, 64, 42).values)
        draws = np.sort(sample(spec, n, 42).values)
        grid = np.linspace(draws[0] - 0.5, draws[-1] + 0.5, 2001)
        cvals = np.array([cdf(spec, g) for g in grid])
        F = np.interp(draws, grid, cvals)
        i = np.arange(1, n + 1)
        ks1 = max(np.max(np.abs(F - i / n)), np.max(np.abs(F - (i - 1) / n)))
        assert ks1 < crit, f"1D KS {ks1:.4f}"

        spec2 = validate_double(2.0, 2.0, 1.0, 1.0, 1.0)
        assert np.array_equal(sample2(spec2, 16, 7).values,
                              sample2(spec2, 16, 7).values)
        thetas = np.sort(sample2(spec2, n, 42).values[:, 1])
        tgrid = np.linspace(thetas[0] - 0.5, thetas[-1] + 0.5, 1201)
        dens = np.array([marginal_theta(spec2, g) for g in tgrid])
        cdfg = np.concatenate(([0.0], np.cumsum(
            0.5 * (dens[1:] + dens[:-1]) * np.diff(tgrid))))
        cdfg /= cdfg[-1]
        F2 = np.interp(thetas, tgrid, cdfg)
        ks2 = max(np.max(np.abs(F2 - i / n)), np.max(np.abs(F2 - (i - 1) / n)))
        assert ks2 < crit, f"theta-marginal KS {ks2:.4f}"


def test_c09_rasa_constants():
    with criterion(9, "y0 root within 1e-10; bound matches the hand formula "
                      "at rel 1e-12"):
        y0 = solve_y0()
        assert abs(math.exp(y0) - 2.0 * y0 - 1.0) < 1e-10
        consts = RasaConstants.build(0.75, l=6)
        got = rasa_bound(consts, 1e6)
        hand = (math.cos(2.0 * math.pi / 6.0) * math.log(6.0) ** (0.75 - 1.0)
                * consts.c1 / (1.0 - 0.75) * math.log(1e6) ** (1.0 - 0.75))
        assert abs(got - hand) <= 1e-12 * abs(hand)


def test_c10_searches_complete():
    with criterion(10, "exceedance and real-zero searches emit well-formed "
                       "deterministic reports (witnesses never asserted)"):
        r1 = exceedance_search(0.5, 1.0, t_max=60.0)
        r2 = exceedance_search(0.5, 1.0, t_max=60.0)
        assert r1.to_json() == r2.to_json()
        assert r1.passed
        assert {"best_t", "best_ratio", "witness_found"} <= set(r1.details)
        z1 = scan_real_zero(0.5)
        z2 = scan_real_zero(0.5)
        assert z1.to_json() == z2.to_json()
        assert z1.passed and "found" in z1.details
