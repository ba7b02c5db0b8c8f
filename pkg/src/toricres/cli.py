"""Command-line interface: ``toricres <command> FAN [options]``.

Exit codes: 0 ok, 2 parse or usage error, 3 invalid fan, 4 unsupported
dimension, 5 no compact support function, 6 optimizer did not converge,
7 verification failure.
"""

import argparse
import sys
from fractions import Fraction

import numpy as np

from . import io, potential, reeb, svg
from .errors import (
    DidNotConverge,
    DimensionUnsupported,
    InvalidParameters,
    NoneExists,
    NotFlippable,
    ToricError,
)
from .fan import (
    Fan,
    gorenstein_vector,
    is_nonsingular,
    moment_cone,
    slice_polytope,
    validate_fan,
)
from .kclass import find_compact_support, is_compact, is_strictly_convex, kahler_class
from .resolve import canonical_bundle_fan, flop, refine_fan, triangulate_basic, ypq_fan

EXIT_OK, EXIT_PARSE, EXIT_INVALID, EXIT_DIMENSION = 0, 2, 3, 4
EXIT_NO_SUPPORT, EXIT_NO_CONVERGENCE, EXIT_VERIFY = 5, 6, 7


class InvalidFanError(ToricError):
    def __init__(self, report):
        super().__init__("; ".join(report.violations))
        self.report = report


def exit_code_for(exc):
    if isinstance(exc, (io.FanFileError, InvalidParameters, NotFlippable)):
        return EXIT_PARSE
    if isinstance(exc, DimensionUnsupported):
        return EXIT_DIMENSION
    if isinstance(exc, NoneExists):
        return EXIT_NO_SUPPORT
    if isinstance(exc, DidNotConverge):
        return EXIT_NO_CONVERGENCE
    return EXIT_INVALID


# Pipeline stages.  Each returns a JSON-ready fragment (exact values kept
# as Fractions until encoding).

def checked_fan(f):
    report = validate_fan(f)
    if not report.valid:
        raise InvalidFanError(report)
    return f


def analyze(f):
    report = validate_fan(f)
    out = {"name": f.name, "dim": f.dim, "valid": report.valid,
           "violations": report.violations}
    if not report.valid:
        return out
    out["nonsingular"] = [is_nonsingular(f.cone(k)) for k in range(len(f.cones))]
    out["moment_cone"] = [list(v) for v in moment_cone(f).generators]
    g = gorenstein_vector(f)
    out["gorenstein"] = {"gamma": list(g.gamma), "index": g.index}
    if g.integral is not None:
        p = slice_polytope(f, g)
        out["slice"] = {
            "base": list(p.base), "basis": [list(r) for r in p.basis],
            "vertices": [list(v) for v in p.vertices],
            "boundary": [list(q) for q in p.boundary],
            "interior": [list(q) for q in p.interior_points],
            "boundary_count": len(p.boundary),
            "interior_count": len(p.interior_points),
            "normalized_volume": p.normalized_volume(),
        }
    return out


def resolve_stage(f, flops=()):
    checked_fan(f)
    g = gorenstein_vector(f)
    p = slice_polytope(f, g)
    t = triangulate_basic(p)
    for w in flops:
        t = flop(t, w)
    r = refine_fan(f, t, p)
    frag = {
        "points": [list(q) for q in t.points],
        "simplices": [list(s) for s in t.simplices],
        "flops": list(flops),
        "refined_fan": {"rays": [list(x) for x in r.rays],
                        "cones": [list(c) for c in r.cones],
                        "boundary": list(r.boundary)},
        "checks": {
            "basic": _flag(t.is_basic()),
            "nonsingular": _flag(all(is_nonsingular(r.fan.cone(k))
                                     for k in range(len(r.cones)))),
            "crepant": _flag(all(sum(a * b for a, b in zip(g.integral, x)) == -1
                                 for x in r.rays)),
            "simplex_count": _flag(len(t.simplices) == p.normalized_volume()),
        },
    }
    if not p.interior_points:
        frag["note"] = "no interior points"
    return frag, r, t, p


def _flag(ok):
    return {"passed": bool(ok), "tolerance": "exact"}


def support_stage(r):
    h, margin = find_compact_support(r)
    k = kahler_class(h)
    return {
        "heights": list(h.heights),
        "margin": margin,
        "kahler_class": {str(j): c for j, c in sorted(k.coefficients.items())},
        "checks": {"compact": _flag(is_compact(h)),
                   "strictly_convex": _flag(is_strictly_convex(h))},
    }, h


def reeb_stage(f):
    checked_fan(f)
    p = reeb.ReebProblem.from_fan(f)
    s = reeb.minimize_volume(p)
    g = np.array([float(x) for x in p.gamma])
    return {
        "xi": s.xi, "volume": s.volume, "gradient_norm": s.gradient_norm,
        "iterations": s.iterations, "hessian_min_eigenvalue": s.hessian_min_eigenvalue,
        "margin": s.margin,
        "checks": {
            "constraint": {"passed": bool(abs(g @ s.xi + p.n) < 1e-12),
                           "value": float(abs(g @ s.xi + p.n)), "tolerance": 1e-12},
            "gradient_norm": {"passed": bool(s.gradient_norm < 1e-12),
                              "value": s.gradient_norm, "tolerance": 1e-12},
            "hessian_positive": {"passed": bool(s.hessian_min_eigenvalue > 0),
                                 "value": s.hessian_min_eigenvalue, "tolerance": 0.0},
        },
    }, p, s


def _check_dict(results):
    return {c.name: {"passed": c.passed, "value": c.value, "tolerance": c.tolerance}
            for c in results}


def verify_stage(f, samples=100, seed=0):
    frag, _, s = reeb_stage(f)
    checks = dict(frag["checks"])
    d = potential.ConePotentialData.from_fan(f, s.xi)
    checks.update(_check_dict(potential.cone_property_suite(d, samples, seed)))
    out = {"xi": s.xi, "samples": samples, "seed": seed}
    try:
        _, r, _, _ = resolve_stage(f)
        _, h = support_stage(r)
    except (NoneExists, DimensionUnsupported) as e:
        out["resolved"] = f"skipped: {e}"
    else:
        rd = potential.ResolvedPotentialData.from_support(h)
        checks.update(_check_dict(potential.resolved_property_suite(rd, 10, seed)))
    out["checks"] = checks
    out["passed"] = all(c["passed"] for c in checks.values())
    return out


def render_stage(f, flops=()):
    if f.dim != 3:
        raise DimensionUnsupported(f"rendering needs a 3-dimensional cone, got {f.dim}")
    _, _, t, p = resolve_stage(f, flops)
    return svg.render(p, t, f.name)


FANO = {
    "cp1": Fan(1, ((1,), (-1,)), ((0,), (1,)), "CP^1"),
    "cp2": Fan(2, ((1, 0), (0, 1), (-1, -1)), ((0, 1), (1, 2), (2, 0)), "CP^2"),
    "cp2_2": Fan(2, ((1, 0), (0, 1), (-1, 0), (-1, -1), (0, -1)),
                 ((0, 1), (1, 2), (2, 3), (3, 4), (4, 0)), "CP^2 blown up at two points"),
}

EXAMPLES = ("ypq", "canonical-cp2", "canonical-cp2-two-points", "canonical-cp1",
            "conifold", "affine-space")


def example_fan(name, p=None, q=None, n=3):
    if name == "ypq":
        if p is None or q is None:
            raise InvalidParameters("ypq needs --p and --q")
        return ypq_fan(p, q)
    if name == "canonical-cp2":
        return canonical_bundle_fan(FANO["cp2"])[0]
    if name == "canonical-cp2-two-points":
        return canonical_bundle_fan(FANO["cp2_2"])[0]
    if name == "canonical-cp1":
        return canonical_bundle_fan(FANO["cp1"])[0]
    if name == "conifold":
        return Fan.from_cone([(0, 0, 1), (1, 0, 1), (1, 1, 1), (0, 1, 1)], name="conifold")
    if name == "affine-space":
        if n < 1:
            raise InvalidParameters("--n must be positive")
        return Fan.from_cone([tuple(int(i == j) for j in range(n)) for i in range(n)],
                             name=f"C^{n}")
    raise InvalidParameters(f"unknown example {name!r}")


# Human-readable output.

def _fmt(v):
    if isinstance(v, np.ndarray):
        v = v.tolist()
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, float):
        return f"{v:.12g}"
    if isinstance(v, (list, tuple)):
        return "(" + ", ".join(_fmt(x) for x in v) + ")"
    return str(io.encode(v))


def _print_checks(checks, stream):
    for name, c in checks.items():
        status = "PASS" if c["passed"] else "FAIL"
        value = f" value={_fmt(c['value'])}" if "value" in c else ""
        stream.write(f"  [{status}] {name}{value} tol={c['tolerance']}\n")


def _human(command, result, stream):
    if command == "analyze":
        stream.write(f"fan {result.get('name') or ''} valid={result['valid']}\n")
        for v in result["violations"]:
            stream.write(f"  violation: {v}\n")
        if "gorenstein" in result:
            g = result["gorenstein"]
            stream.write(f"gamma = {_fmt(g['gamma'])} (index {g['index']})\n")
        if "slice" in result:
            s = result["slice"]
            stream.write(f"slice vertices {_fmt(s['vertices'])}\n")
            stream.write(f"lattice points: {s['boundary_count']} boundary, "
                         f"{s['interior_count']} interior\n")
    elif command == "resolve":
        stream.write(f"{len(result['simplices'])} simplices on "
                     f"{len(result['points'])} lattice points\n")
        if "note" in result:
            stream.write(f"note: {result['note']}\n")
        _print_checks(result["checks"], stream)
    elif command == "support":
        stream.write(f"heights {_fmt(result['heights'])} margin {_fmt(result['margin'])}\n")
        _print_checks(result["checks"], stream)
    elif command == "reeb":
        stream.write(f"xi = {_fmt(result['xi'])}\nvolume = {_fmt(result['volume'])}\n")
        _print_checks(result["checks"], stream)
    elif command == "verify":
        stream.write(f"xi = {_fmt(result['xi'])}\n")
        if "resolved" in result:
            stream.write(f"resolved checks {result['resolved']}\n")
        _print_checks(result["checks"], stream)
        stream.write("all checks passed\n" if result["passed"] else "verification FAILED\n")


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    parser = argparse.ArgumentParser(prog="toricres", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in (("analyze", "validity, Gorenstein data and slice polytope"),
                       ("support", "compact strictly convex support function"),
                       ("reeb", "volume-minimizing Reeb vector")):
        sp = sub.add_parser(name, parents=[common], help=text)
        sp.add_argument("fan")
    sp = sub.add_parser("resolve", parents=[common], help="crepant resolution")
    sp.add_argument("fan")
    sp.add_argument("--flop", type=int, action="append", default=[], metavar="WALL")
    sp = sub.add_parser("verify", parents=[common], help="potential identity checks")
    sp.add_argument("fan")
    sp.add_argument("--samples", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp = sub.add_parser("render", parents=[common], help="SVG of the triangulated slice")
    sp.add_argument("fan")
    sp.add_argument("--flop", type=int, action="append", default=[], metavar="WALL")
    sp.add_argument("--out")
    sp = sub.add_parser("example", parents=[common], help="write a bundled construction")
    sp.add_argument("name")
    sp.add_argument("--p", type=int)
    sp.add_argument("--q", type=int)
    sp.add_argument("--n", type=int, default=3)
    sp.add_argument("--out")
    return parser


def run(args, stdout, stderr):
    if args.command == "example":
        text = io.dumps(io.fan_to_dict(example_fan(args.name, args.p, args.q, args.n)))
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            stdout.write(text)
        return EXIT_OK
    f = io.resolve_fan_argument(args.fan)
    code = EXIT_OK
    if args.command == "analyze":
        result = analyze(f)
        if not result["valid"]:
            code = EXIT_INVALID
    elif args.command == "resolve":
        result = resolve_stage(f, args.flop)[0]
    elif args.command == "support":
        result = support_stage(resolve_stage(f)[1])[0]
    elif args.command == "reeb":
        result = reeb_stage(f)[0]
    elif args.command == "verify":
        result = verify_stage(f, args.samples, args.seed)
        if not result["passed"]:
            code = EXIT_VERIFY
    elif args.command == "render":
        text = render_stage(f, args.flop)
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
            result = {"out": args.out}
        else:
            stdout.write(text)
            return EXIT_OK
    if args.json:
        stdout.write(io.dumps(result))
    elif args.command == "render":
        stdout.write(f"wrote {args.out}\n")
    else:
        _human(args.command, result, stdout)
    return code


def main(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code
    try:
        return run(args, stdout, stderr)
    except (ToricError, io.FanFileError) as e:
        code = exit_code_for(e)
        payload = {"error": type(e).__name__, "message": str(e), "exit_code": code}
        if isinstance(e, DidNotConverge):
            payload["diagnostics"] = e.diagnostics
        if isinstance(e, InvalidFanError):
            payload["violations"] = e.report.violations
        if getattr(args, "json", False):
            stdout.write(io.dumps(payload))
        else:
            stderr.write(f"error: {e}\n")
        return code


if __name__ == "__main__":
    sys.exit(main())
