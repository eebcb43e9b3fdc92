"""Command-line front end.

Subcommands:

* ``eval``  -- point evaluation of phi, hurwitz, phi2, zeta2, gamma-phi, h, calh
* ``dist``  -- density / cf / cdf / quantile / sample and their 2D variants,
               tabulated over a grid or emitted as draws (CSV or JSON)
* ``check`` -- verification scans by claim id (or ``all``), streamed as JSON
               ScanReports; exit 0 iff every selected claim passes

Exit codes: 0 success, 2 invalid parameters / outside a validity region,
3 quadrature or series non-convergence.  ``ZETADIST_CONFIG`` may point to a
JSON file with defaults ({"rel_tol": .., "abs_tol": .., "seed": ..,
"format": ..}); explicit flags win.  All floats print with 17 significant
digits so every value round-trips bit-identically.
"""

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import verify
from .dist_double import (cf2, density2, marginal_theta, sample2,
                          validate_double)
from .dist_single import cdf, cf, density, quantile, sample, validate_single
from .double_zeta import cal_h, gamma2_phi2, phi2_series, zeta2_continued
from .errors import (DomainError, InvalidDistribution, NonConvergence,
                     PoleError, RegionError)
from .lerch import classify_lerch, gamma_phi, h_kernel, hurwitz_zeta, phi
from .numerics import QuadratureConfig

EXIT_OK = 0
EXIT_REGION = 2
EXIT_NONCONV = 3


def fmt(x):
    """17-significant-digit decimal form (lossless double round-trip)."""
    return f"{float(x):.17g}"


@dataclass
class CliConfig:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_nodes: int = 400_000
    seed: int = 0
    output_format: str = "json"
    jobs: int = 1
    grid: str = None

    @property
    def quad_cfg(self):
        return QuadratureConfig(rel_tol=self.rel_tol, abs_tol=self.abs_tol,
                                max_nodes=self.max_nodes)


def load_config(args):
    cfg = CliConfig()
    path = os.environ.get("ZETADIST_CONFIG")
    if path:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        for key in ("rel_tol", "abs_tol", "max_nodes", "seed", "jobs"):
            if key in data:
                setattr(cfg, key, type(getattr(cfg, key))(data[key]))
        if "format" in data:
            cfg.output_format = data["format"]
        if "grid" in data:
            cfg.grid = str(data["grid"])
    if getattr(args, "tol", None) is not None:
        cfg.rel_tol = args.tol
        cfg.abs_tol = min(cfg.abs_tol, args.tol * 1e-2)
    if getattr(args, "format", None):
        cfg.output_format = args.format
    if getattr(args, "seed", None) is not None:
        cfg.seed = args.seed
    if getattr(args, "jobs", None):
        cfg.jobs = args.jobs
    return cfg


def parse_grid(text, default):
    """'lo:hi:n' -> linspace; 'default' or None -> the provided default."""
    if text in (None, "default"):
        lo, hi, n = default
    else:
        parts = text.split(":")
        if len(parts) != 3:
            raise DomainError(f"grid must be lo:hi:n, got {text!r}")
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    return np.linspace(lo, hi, n)


def emit_rows(cfg, header, rows, out):
    if cfg.output_format == "csv":
        out.write(",".join(header) + "\n")
        for row in rows:
            out.write(",".join(fmt(v) if isinstance(v, float) else str(v)
                               for v in row) + "\n")
    else:
        payload = [{h: (fmt(v) if isinstance(v, float) else v)
                    for h, v in zip(header, row)} for row in rows]
        out.write(json.dumps(payload) + "\n")


def emit_value(cfg, data, out):
    if cfg.output_format == "csv":
        keys = list(data)
        out.write(",".join(keys) + "\n")
        out.write(",".join(fmt(v) if isinstance(v, float) else str(v)
                           for v in data.values()) + "\n")
    else:
        out.write(json.dumps({k: (fmt(v) if isinstance(v, float) else v)
                              for k, v in data.items()}) + "\n")


def _complex_fields(value):
    return {"re": float(value.real), "im": float(value.imag)}


# ---------------------------------------------------------------------------
# eval
# ---------------------------------------------------------------------------

def cmd_eval(args, cfg, out):
    quad = cfg.quad_cfg
    which = args.function
    err = None
    nodes = None
    regime = ""
    if which == "phi":
        s = complex(args.s)
        value = phi(s, args.a, args.z, cfg=quad)
        regime = classify_lerch(s.real, args.a, args.z).regime.value
    elif which == "hurwitz":
        s = complex(args.s)
        value = hurwitz_zeta(s, args.a, cfg=quad)
        regime = classify_lerch(s.real, args.a, 1.0).regime.value
    elif which == "gamma-phi":
        s = complex(args.s)
        value, res = gamma_phi(s, args.a, args.z, cfg=quad, full_output=True)
        err, nodes = res.err_estimate, res.nodes_used
        regime = classify_lerch(s.real, args.a, args.z).regime.value
    elif which == "phi2":
        s1, s2 = complex(args.s1), complex(args.s2)
        from .double_zeta import classify_double

        regime = classify_double(s1.real, s2.real, args.a,
                                 args.z1, args.z2).regime.value
        value = phi2_series(s1, s2, args.a, args.z1, args.z2,
                            rel_tol=max(cfg.rel_tol, 1e-13))
    elif which == "zeta2":
        s1, s2 = complex(args.s1), complex(args.s2)
        value, res = zeta2_continued(s1, s2, args.a, cfg=quad, full_output=True)
        err, nodes = res.err_estimate, res.nodes_used
        regime = "ContinuedStrip"
    elif which == "h":
        value = complex(h_kernel(args.a, args.x))
        regime = "kernel"
    elif which == "calh":
        value = complex(cal_h(args.a, args.x, args.y))
        regime = "kernel"
    else:
        raise DomainError(f"unknown eval target {which!r}")
    data = {**_complex_fields(value), "regime": regime}
    data["err_estimate"] = float(err) if err is not None else ""
    data["nodes"] = int(nodes) if nodes is not None else ""
    emit_value(cfg, data, out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# dist
# ---------------------------------------------------------------------------

def _single_spec(args, cfg):
    spec = validate_single(args.sigma, args.a, args.z)
    spec.quad_cfg = cfg.quad_cfg
    return spec


def _double_spec(args, cfg):
    spec = validate_double(args.sigma1, args.sigma2, args.a, args.z1, args.z2)
    spec.quad_cfg = cfg.quad_cfg
    return spec


def cmd_dist(args, cfg, out):
    if args.grid is None and cfg.grid is not None:
        args.grid = cfg.grid
    what = args.quantity
    if what == "density":
        spec = _single_spec(args, cfg)
        ys = (np.array([args.y]) if args.y is not None
              else parse_grid(args.grid, (-10.0, 8.0, 161)))
        emit_rows(cfg, ["y", "value"],
                  [(float(y), float(density(spec, y))) for y in ys], out)
    elif what == "cf":
        spec = _single_spec(args, cfg)
        ts = (np.array([args.t]) if args.t is not None
              else parse_grid(args.grid, (-10.0, 10.0, 81)))
        rows = []
        for t in ts:
            v = cf(spec, float(t))
            rows.append((float(t), float(v.real), float(v.imag)))
        emit_rows(cfg, ["t", "re", "im"], rows, out)
    elif what == "cdf":
        spec = _single_spec(args, cfg)
        ys = (np.array([args.y]) if args.y is not None
              else parse_grid(args.grid, (-10.0, 8.0, 81)))
        emit_rows(cfg, ["y", "value"],
                  [(float(y), float(cdf(spec, y))) for y in ys], out)
    elif what == "quantile":
        spec = _single_spec(args, cfg)
        emit_value(cfg, {"p": float(args.p),
                         "y": float(quantile(spec, args.p))}, out)
    elif what == "sample":
        spec = _single_spec(args, cfg)
        batch = sample(spec, args.n, cfg.seed)
        emit_rows(cfg, ["draw_index", "y"],
                  [(i, float(v)) for i, v in enumerate(batch.values)], out)
    elif what == "density2":
        spec = _double_spec(args, cfg)
        if args.eta is not None and args.theta is not None:
            pts = [(args.eta, args.theta)]
        else:
            g = parse_grid(args.grid, (-8.0, 6.0, 29))
            pts = [(e, t) for t in g for e in g]
        rows = [(float(e), float(t), float(density2(spec, e, t)))
                for (e, t) in pts]
        emit_rows(cfg, ["eta", "theta", "value"], rows, out)
    elif what == "cf2":
        spec = _double_spec(args, cfg)
        v = cf2(spec, args.t1 or 0.0, args.t2 or 0.0)
        emit_value(cfg, {"t1": float(args.t1 or 0.0), "t2": float(args.t2 or 0.0),
                         **_complex_fields(v)}, out)
    elif what == "marginal":
        spec = _double_spec(args, cfg)
        if args.theta is not None:
            ts = np.array([args.theta])
        else:
            ts = parse_grid(args.grid, (-8.0, 6.0, 57))
        emit_rows(cfg, ["theta", "value"],
                  [(float(t), marginal_theta(spec, t)) for t in ts], out)
    elif what == "sample2":
        spec = _double_spec(args, cfg)
        batch = sample2(spec, args.n, cfg.seed)
        emit_rows(cfg, ["draw_index", "y", "theta"],
                  [(i, float(v[0]), float(v[1]))
                   for i, v in enumerate(batch.values)], out)
    else:
        raise DomainError(f"unknown dist quantity {what!r}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# check
# ---------------------------------------------------------------------------

def _default_single_specs():
    return [validate_single(2.0, 1.0, 1.0),
            validate_single(0.7, 0.5, 1.0),
            validate_single(0.8, 0.6, -0.5)]


def _default_double_specs():
    return [validate_double(2.0, 2.0, 1.0, 1.0, 1.0),
            validate_double(0.5, 1.3, 0.5, 1.0, 1.0)]


def _iff_report(kind, n, seed):
    rng = np.random.default_rng(seed)
    violations = []
    if kind == "single":
        from .dist_single import single_region_ok

        for _ in range(n):
            sigma = rng.uniform(-0.5, 3.5)
            a = rng.uniform(-0.2, 1.2)
            z = rng.uniform(-1.5, 1.5)
            expected = single_region_ok(sigma, a, z)
            try:
                validate_single(sigma, a, z)
                got = True
            except (InvalidDistribution, DomainError):
                got = False
            if got != expected:
                violations.append(((sigma, a, z), got))
        label = "iff-single"
    else:
        from .dist_double import double_region_ok

        for _ in range(n):
            s1 = rng.uniform(-0.5, 3.0)
            s2 = rng.uniform(-0.5, 3.0)
            a = rng.uniform(-0.2, 1.2)
            z1 = rng.choice([1.0, -1.0, rng.uniform(-1.5, 1.5)])
            z2 = rng.choice([1.0, -1.0, rng.uniform(-1.5, 1.5)])
            expected = double_region_ok(s1, s2, a, z1, z2)
            try:
                validate_double(s1, s2, a, z1, z2)
                got = True
            except (InvalidDistribution, DomainError):
                got = False
            if got != expected:
                violations.append(((s1, s2, a, z1, z2), got))
        label = "iff-double"
    return verify.ScanReport(
        claim_id=label, grid_spec=f"{n} random tuples (seed {seed})",
        violations=violations, max_slack=float(len(violations)),
        passed=not violations)


def _rasa_report():
    import math

    y0 = verify.solve_y0()
    resid = abs(math.exp(y0) - 2.0 * y0 - 1.0)
    consts = verify.RasaConstants.build(0.75, l=6)
    got = verify.rasa_bound(consts, 1e6)
    hand = consts.c0 * consts.c1 / 0.25 * math.log(1e6) ** 0.25
    err = abs(got - hand) / hand
    violations = []
    if resid > 1e-10:
        violations.append((("y0 residual",), resid))
    if err > 1e-12:
        violations.append((("bound formula",), err))
    return verify.ScanReport(
        claim_id="rasa-y0", grid_spec="root + closed-form arithmetic",
        violations=violations, max_slack=max(resid, err),
        passed=not violations,
        details={"y0": y0, "c2": consts.c2, "c0": consts.c0, "bound@1e6": got})


def claim_runners(args, cfg):
    """claim id -> zero-argument callables producing ScanReports."""
    a_flag = getattr(args, "a", None)
    runners = {}
    h_as = [a_flag] if a_flag is not None else [0.5, 0.75, 1.0, 0.2, 0.3, 0.4]
    runners["lemma-negdefi"] = lambda: [verify.sign_scan_h(a) for a in h_as]
    ch_as = [a_flag] if a_flag is not None else [0.5, 0.75, 1.0, 0.2, 0.4]
    runners["lemma-negdefi2"] = lambda: [verify.sign_scan_calh(a) for a in ch_as]
    runners["lemma-huzero"] = lambda: [verify.positivity_scan("hurwitz_neg")]
    runners["lemma-phiposi"] = lambda: [verify.positivity_scan("phi")]
    runners["lemma-phi2posi"] = lambda: [verify.positivity_scan("phi2")]
    runners["lemma-ezneg"] = lambda: [verify.positivity_scan("zeta2_neg")]

    def bound_1d():
        if getattr(args, "sigma", None) is not None:
            specs = [validate_single(args.sigma, a_flag or 1.0,
                                     getattr(args, "z", None) or 1.0)]
        else:
            specs = _default_single_specs()
        return [verify.cf_bound_scan(s) for s in specs]

    runners["cor-bound"] = bound_1d
    runners["cor-bound2"] = lambda: [verify.cf_bound_scan(s)
                                     for s in _default_double_specs()]
    runners["fourier-1d"] = lambda: [verify.fourier_check(s)
                                     for s in _default_single_specs()]
    runners["fourier-2d"] = lambda: [verify.fourier_check(s)
                                     for s in _default_double_specs()]
    runners["iff-single"] = lambda: [_iff_report("single", 2000, cfg.seed)]
    runners["iff-double"] = lambda: [_iff_report("double", 2000, cfg.seed)]
    runners["rasa-y0"] = lambda: [_rasa_report()]
    runners["exceedance"] = lambda: [verify.exceedance_search(
        getattr(args, "sigma", None) or 0.5, a_flag or 1.0)]
    runners["real-zero"] = lambda: [verify.scan_real_zero(a_flag or 0.5)]
    return runners


def cmd_check(args, cfg, out):
    runners = claim_runners(args, cfg)
    if args.claim == "all":
        selected = list(runners)
    elif args.claim in runners:
        selected = [args.claim]
    else:
        known = ", ".join(sorted(runners))
        raise DomainError(f"unknown claim {args.claim!r}; known: {known}")
    if cfg.jobs > 1:
        with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
            batches = list(pool.map(lambda c: runners[c](), selected))
    else:
        batches = [runners[c]() for c in selected]
    all_ok = True
    for batch in batches:
        for report in batch:
            out.write(report.to_json() + "\n")
            all_ok &= report.passed
    return EXIT_OK if all_ok else 1


# ---------------------------------------------------------------------------
# argument plumbing
# ---------------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default=None)
    common.add_argument("--tol", type=float, default=None,
                        help="relative tolerance for quadrature/series")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--jobs", type=int, default=None)

    p = argparse.ArgumentParser(prog="zetadist",
                                description="Hurwitz-Lerch zeta distributions")
    sub = p.add_subparsers(dest="command", required=True)

    pe = sub.add_parser("eval", help="evaluate a special function",
                        parents=[common])
    pe.add_argument("function", choices=("phi", "hurwitz", "gamma-phi", "phi2",
                                         "zeta2", "h", "calh"))
    pe.add_argument("--s", type=str, default="2")
    pe.add_argument("--s1", type=str, default="1")
    pe.add_argument("--s2", type=str, default="2")
    pe.add_argument("--a", type=float, default=1.0)
    pe.add_argument("--z", type=float, default=1.0)
    pe.add_argument("--z1", type=float, default=1.0)
    pe.add_argument("--z2", type=float, default=1.0)
    pe.add_argument("--x", type=float, default=1.0)
    pe.add_argument("--y", type=float, default=1.0)

    pd = sub.add_parser("dist", help="distribution quantities",
                        parents=[common])
    pd.add_argument("quantity", choices=("density", "cf", "cdf", "quantile",
                                         "sample", "density2", "cf2",
                                         "marginal", "sample2"))
    pd.add_argument("--sigma", type=float, default=2.0)
    pd.add_argument("--sigma1", type=float, default=2.0)
    pd.add_argument("--sigma2", type=float, default=2.0)
    pd.add_argument("--a", type=float, default=1.0)
    pd.add_argument("--z", type=float, default=1.0)
    pd.add_argument("--z1", type=float, default=1.0)
    pd.add_argument("--z2", type=float, default=1.0)
    pd.add_argument("--t", type=float, default=None)
    pd.add_argument("--t1", type=float, default=None)
    pd.add_argument("--t2", type=float, default=None)
    pd.add_argument("--y", type=float, default=None)
    pd.add_argument("--eta", type=float, default=None)
    pd.add_argument("--theta", type=float, default=None)
    pd.add_argument("--p", type=float, default=0.5)
    pd.add_argument("-n", type=int, default=10)
    pd.add_argument("--grid", type=str, default=None)

    pc = sub.add_parser("check", help="verification scans",
                        parents=[common])
    pc.add_argument("claim", type=str)
    pc.add_argument("--a", type=float, default=None)
    pc.add_argument("--sigma", type=float, default=None)
    pc.add_argument("--z", type=float, default=None)
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    cfg = load_config(args)
    try:
        if args.command == "eval":
            return cmd_eval(args, cfg, out)
        if args.command == "dist":
            return cmd_dist(args, cfg, out)
        if args.command == "check":
            return cmd_check(args, cfg, out)
        raise DomainError(f"unknown command {args.command!r}")
    except (RegionError, PoleError, InvalidDistribution, DomainError) as exc:
        reason = getattr(exc, "reason", None)
        if reason is None and "pole at s = 1" in str(exc):
            reason = "PoleSigmaOne"
        out.write(json.dumps({"error": type(exc).__name__,
                              "reason": reason, "message": str(exc)}) + "\n")
        return EXIT_REGION
    except NonConvergence as exc:
        out.write(json.dumps({"error": "NonConvergence",
                              "message": str(exc)}) + "\n")
        return EXIT_NONCONV
    except BrokenPipeError:
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
