"""Command-line front end.

Exit codes: 0 success, 2 input error, 3 solver error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction

import numpy as np

from . import __version__
from .errors import InputError, NoBranch, SingcurvError, SolverError, ZeroPolynomial
from .parse import parse_point, parse_poly

EXIT_OK, EXIT_INPUT, EXIT_SOLVER = 0, 2, 3


def _num(x):
    if x is None:
        return None
    x = float(x)
    return x if math.isfinite(x) else None


def _pairs(d):
    return [[_num(c.real), _num(c.imag)] for c in d.components]


def _point_text(P):
    return [str(c) for c in P]


def _vars(text, n):
    names = tuple(v.strip() for v in text.split(",")) if text else ("x", "y", "z")[:n]
    if len(names) != n or not all(names) or len(set(names)) != n:
        raise InputError(f"need {n} distinct variable names, got {text!r}")
    return names


def _poly(text, names, flag):
    if text is None:
        raise InputError(f"missing {flag}")
    return parse_poly(text, names)


def _point(text, n):
    if text is None:
        raise InputError("missing --point")
    P = parse_point(text)
    if len(P) != n:
        raise InputError(f"point needs {n} coordinates, got {len(P)}")
    return P


def _report(kind, args):
    return {
        "version": __version__,
        "kind": kind,
        "f": args.f,
        "g": getattr(args, "g", None),
        "point": None,
        "multiplicity": None,
        "branches": [],
        "errors": [],
    }


# ---------------------------------------------------------------------------
# oracle hooks (numeric estimates per real branch)

def _plane_oracle(F, P, branch, which, count):
    from .oracle import estimate_curvature, trace_plane_branch

    d = branch.tangent.real_vector
    for sign, idx in ((1, which), (-1, count - 1 - which)):
        try:
            samples = trace_plane_branch(F, P, sign * d, 1e-2, 16, idx)
            k = estimate_curvature(samples, P)
            return {"curvature": _num(k), "finite": math.isfinite(k), "error": None}
        except SingcurvError as exc:
            err = f"{type(exc).__name__}: {exc}"
    return {"curvature": None, "finite": False, "error": err}


def _space_oracle(F, G, P, branch):
    from .oracle import estimate_frenet, trace_space_branch

    d = branch.tangent.real_vector
    for sign in (1, -1):
        try:
            samples = trace_space_branch(F, G, P, sign * d, 1e-1, 8)
            k, tau = estimate_frenet(samples, P)
            return {"curvature": _num(k), "torsion": _num(tau), "error": None}
        except SingcurvError as exc:
            err = f"{type(exc).__name__}: {exc}"
    return {"curvature": None, "torsion": None, "error": err}


def _surface_oracle(F, P, branch, others):
    from .oracle import normal_section_curvatures

    n = branch.normal.real_vector
    avoid = [np.cross(n, o) for o in others]
    try:
        kg, km = normal_section_curvatures(F, P, n, avoid=avoid)
        return {"gauss": _num(kg), "mean_signed": _num(km), "error": None}
    except (SingcurvError, ValueError, ZeroDivisionError, ArithmeticError) as exc:
        return {"gauss": None, "mean_signed": None, "error": f"{type(exc).__name__}: {exc}"}


# ---------------------------------------------------------------------------
# commands

def cmd_plane(args, rep):
    from .plane import plane_branch_curvatures
    from .singular import multiplicity

    names = _vars(args.vars, 2)
    F = _poly(args.f, names, "--f")
    P = _point(args.point, 2)
    rep["point"] = _point_text(P)
    rep["multiplicity"] = multiplicity(F, P)
    branches = plane_branch_curvatures(F, P, args.max_order)
    groups = {}
    for b in branches:
        groups.setdefault(id(b.tangent), []).append(b)
    for b in branches:
        rec = {
            "tangent": _pairs(b.tangent),
            "tangent_is_real": b.tangent.is_real,
            "multiplicity": b.branch_multiplicity,
            "curvature": {"finite": b.finite, "value": _num(b.curvature)},
            "diagnostics": b.diagnostics,
        }
        if args.oracle and b.tangent.is_real and b.diagnostics != "ComplexTangent":
            group = [x for x in groups[id(b.tangent)] if x.diagnostics != "ComplexTangent"]
            rec["oracle"] = _plane_oracle(F, P, b, group.index(b), len(group))
        rep["branches"].append(rec)


def cmd_surface(args, rep):
    from .singular import multiplicity
    from .surface import surface_branch_curvatures

    names = _vars(args.vars, 3)
    F = _poly(args.f, names, "--f")
    P = _point(args.point, 3)
    rep["point"] = _point_text(P)
    rep["multiplicity"] = multiplicity(F, P)
    branches = surface_branch_curvatures(F, P, args.max_order)
    for b in branches:
        rec = {
            "normal": _pairs(b.normal),
            "gauss": _num(b.K_gauss),
            "mean_signed": _num(b.K_mean_signed),
            "mean_abs": _num(b.K_mean_abs),
            "diagnostics": b.diagnostics,
        }
        if args.oracle and b.diagnostics in ("Regular", "Sheet"):
            others = [o.normal.real_vector for o in branches
                      if o is not b and o.normal.is_real and not o.normal.same_line(b.normal)]
            rec["oracle"] = _surface_oracle(F, P, b, others)
        rep["branches"].append(rec)


def cmd_space(args, rep):
    from .space import space_branch_frenet, space_tangents

    names = _vars(args.vars, 3)
    F = _poly(args.f, names, "--f")
    G = _poly(args.g, names, "--g")
    P = _point(args.point, 3)
    rep["point"] = _point_text(P)
    max_order = args.max_order or 10
    rep["multiplicity"] = sum(d.multiplicity for d in space_tangents(F, G, P, max_order))
    for b in space_branch_frenet(F, G, P, max_order):
        rec = {
            "tangent": _pairs(b.tangent),
            "curvature": {"finite": b.finite, "value": _num(b.curvature)},
            "torsion": {"defined": b.torsion_defined, "value": _num(b.torsion)},
            "multiplicity": b.branch_multiplicity,
            "diagnostics": b.diagnostics,
        }
        if args.oracle and b.tangent.is_real and b.finite:
            rec["oracle"] = _space_oracle(F, G, P, b)
        rep["branches"].append(rec)


def _direction(text, n):
    if text is None:
        raise InputError("missing --direction")
    try:
        d = [float(Fraction(p.strip())) for p in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise InputError(f"bad direction {text!r}") from None
    if len(d) != n or not any(d):
        raise InputError(f"direction needs {n} coordinates, not all zero")
    return d


def cmd_trace(args, out):
    from .oracle import trace_plane_branch, trace_space_branch

    n = 3 if args.g is not None else 2
    names = _vars(args.vars, n)
    F = _poly(args.f, names, "--f")
    P = _point(args.point, n)
    d = _direction(args.direction, n)
    if args.h0 <= 0 or args.steps < 1:
        raise InputError("--h0 must be positive and --steps at least 1")
    from .singular import shifted

    shifted(F, P)
    if n == 2:
        samples = trace_plane_branch(F, P, d, args.h0, args.steps, args.which)
    else:
        G = _poly(args.g, names, "--g")
        shifted(G, P)
        samples = trace_space_branch(F, G, P, d, args.h0, args.steps)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["idx", "h", *names, "residual"])
    for i, s in enumerate(samples):
        w.writerow([i, repr(s.h), *(repr(float(c)) for c in s.point), repr(s.residual)])
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(buf.getvalue())
    else:
        out.write(buf.getvalue())


# ---------------------------------------------------------------------------
# output

def _fmt(v):
    if v is None:
        return "inf"
    return f"{v:.12g}"


def _vec(pairs):
    parts = []
    for re, im in pairs:
        if im:
            parts.append(f"{re:.6g}{im:+.6g}i")
        else:
            parts.append(f"{re:.6g}")
    return "(" + ", ".join(parts) + ")"


def _human(rep) -> str:
    lines = [f"{rep['kind']}: f = {rep['f']}" + (f", g = {rep['g']}" if rep.get("g") else ""),
             f"point {tuple(rep['point'] or ())}, multiplicity {rep['multiplicity']}"]
    for i, b in enumerate(rep["branches"], 1):
        if rep["kind"] == "plane":
            k = b["curvature"]["value"] if b["curvature"]["finite"] else None
            line = f"  [{i}] tangent {_vec(b['tangent'])}  mult {b['multiplicity']}  k = {_fmt(k)}  {b['diagnostics']}"
        elif rep["kind"] == "surface":
            line = (f"  [{i}] normal {_vec(b['normal'])}  K_G = {_fmt(b['gauss'])}  "
                    f"K_M = {_fmt(b['mean_signed'])}  |K_M| = {_fmt(b['mean_abs'])}  {b['diagnostics']}")
        else:
            k = b["curvature"]["value"] if b["curvature"]["finite"] else None
            t = _fmt(b["torsion"]["value"]) if b["torsion"]["defined"] else "undetermined"
            line = (f"  [{i}] tangent {_vec(b['tangent'])}  mult {b['multiplicity']}  k = {_fmt(k)}  "
                    f"tau = {t}  {b['diagnostics']}")
        if "oracle" in b:
            o = b["oracle"]
            extra = ", ".join(f"{key}={_fmt(val) if isinstance(val, float) else val}" for key, val in o.items()
                              if key != "error" and val is not None)
            line += f"  [oracle {extra or o['error']}]"
        lines.append(line)
    for e in rep["errors"]:
        lines.append(f"error: {e['type']}: {e['message']}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="singcurv", description="Curvature at singular points of algebraic varieties.")
    ap.add_argument("--version", action="version", version=f"singcurv {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, with_g=False):
        p.add_argument("--f", required=False, help="polynomial F")
        if with_g:
            p.add_argument("--g", required=False, help="polynomial G")
        p.add_argument("--point", help="comma-separated rationals, e.g. 0,1/2")
        p.add_argument("--vars", default=None, help="variable names, e.g. x,y")
        p.add_argument("--max-order", type=int, default=None, dest="max_order")
        p.add_argument("--json", action="store_true")
        p.add_argument("--oracle", action="store_true", help="add numeric trace estimates per real branch")

    common(sub.add_parser("plane", help="plane curve F(x,y)=0"))
    common(sub.add_parser("surface", help="surface F(x,y,z)=0"))
    common(sub.add_parser("space", help="space curve F=G=0"), with_g=True)
    tr = sub.add_parser("trace", help="CSV samples of one branch")
    tr.add_argument("--f")
    tr.add_argument("--g", default=None)
    tr.add_argument("--point")
    tr.add_argument("--direction")
    tr.add_argument("--vars", default=None)
    tr.add_argument("--h0", type=float, default=1e-2)
    tr.add_argument("--steps", type=int, default=12)
    tr.add_argument("--which", type=int, default=0, help="branch index within the direction cone (plane)")
    tr.add_argument("--out", default=None)
    return ap


def _error_code(exc) -> int:
    if isinstance(exc, SolverError):
        return EXIT_SOLVER
    return EXIT_INPUT


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and EXIT_INPUT
    if args.command == "trace":
        try:
            cmd_trace(args, stdout)
        except (SingcurvError, ValueError, OSError) as exc:
            code = EXIT_SOLVER if isinstance(exc, (SolverError, NoBranch)) else EXIT_INPUT
            print(f"error: {type(exc).__name__}: {exc}", file=stderr)
            return code
        return EXIT_OK
    if args.max_order is not None and args.max_order < 1:
        print("error: InputError: --max-order must be positive", file=stderr)
        return EXIT_INPUT
    rep = _report(args.command, args)
    cmd = {"plane": cmd_plane, "surface": cmd_surface, "space": cmd_space}[args.command]
    code = EXIT_OK
    try:
        cmd(args, rep)
    except (SingcurvError, ValueError, ZeroPolynomial) as exc:
        code = _error_code(exc)
        rep["branches"] = []
        rep["errors"].append({"type": type(exc).__name__, "message": str(exc)})
    if args.json:
        stdout.write(json.dumps(rep, indent=2) + "\n")
    else:
        if code == EXIT_OK:
            stdout.write(_human(rep) + "\n")
        else:
            e = rep["errors"][0]
            print(f"error: {e['type']}: {e['message']}", file=stderr)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
