"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 constraint
violation.
"""
from __future__ import annotations

import argparse
import ast
import csv
import json
import math
import operator
import os
import random
import sys
import warnings
from fractions import Fraction

from . import __version__
from .core import (
    DEFAULT_TOL,
    RATIONAL,
    ConstraintError,
    DegenerateWarning,
    Matrix,
    NoExactRootError,
    SingularMatrixError,
    Triplet,
    YangBaxterError,
    format_scalar,
    is_zero,
    ybe_residual,
)
from .document import DocumentError, TripletDocument, encode_scalar
from .families import baxter, eightvertex, fivevertex, sixvertex
from .invariants import (
    eight_vertex_invariants_from_matrix,
    eight_vertex_invariants_from_params,
    is_eight_vertex_form,
    is_free_fermion,
    is_six_vertex_form,
    p_polys,
    six_vertex_invariants,
)
from .sampling import EXACT_FAMILIES, FLOAT_FAMILIES, sample_family
from .symmetry import DiagonalGauge, apply_aut_word, apply_gauge, orbit, parse_word

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_CONSTRAINT = 3

FAMILY_NAMES = ("5v1", "5vff", "6v-asym-rational", "6v-asym-trig", "6vff", "8v", "8v-baxter")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# parameter parsing

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.Div: operator.truediv, ast.Pow: operator.pow}
_CONSTS = {"pi": math.pi, "e": math.e, "i": 1j, "j": 1j}


def _eval_node(node):
    if isinstance(node, ast.Expression):
        return _eval_node(node.body)
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float, complex)) and not isinstance(node.value, bool):
        return node.value
    if isinstance(node, ast.Name) and node.id in _CONSTS:
        return _CONSTS[node.id]
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval_node(node.operand)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        left, right = _eval_node(node.left), _eval_node(node.right)
        if isinstance(node.op, ast.Div) and isinstance(left, (int, Fraction)) and isinstance(right, (int, Fraction)):
            if right == 0:
                raise UsageError("division by zero in parameter")
            return Fraction(left) / Fraction(right)
        if isinstance(node.op, ast.Pow) and isinstance(right, Fraction) and right.denominator == 1:
            right = int(right)
        return _BINOPS[type(node.op)](left, right)
    raise UsageError(f"unsupported expression element {ast.dump(node)}")


def parse_value(text: str):
    """``3``, ``-2/7`` stay exact; ``0.3``, ``pi/4``, ``1+2*i`` become floats/complex."""
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError:
        raise UsageError(f"cannot parse value {text!r}") from None
    value = _eval_node(tree)
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    return value


def parse_assignments(items) -> dict:
    out = {}
    for item in items:
        for part in item.split(","):
            part = part.strip()
            if not part:
                continue
            if "=" not in part:
                raise UsageError(f"expected key=value, got {part!r}")
            key, value = part.split("=", 1)
            out[key.strip()] = parse_value(value)
    return out


def _take(params: dict, required, optional=None):
    optional = optional or {}
    missing = [k for k in required if k not in params]
    if missing:
        raise UsageError(f"missing parameter(s): {', '.join(missing)}")
    unknown = set(params) - set(required) - set(optional)
    if unknown:
        raise UsageError(f"unknown parameter(s): {', '.join(sorted(unknown))}")
    out = dict(optional)
    out.update(params)
    return out


def _real(v):
    if isinstance(v, complex):
        if v.imag != 0:
            raise UsageError(f"expected a real value, got {v}")
        return v.real
    return float(v)


def build_family(family: str, params: dict) -> Triplet:
    if family == "5v1":
        p = _take(params, ("d", "q1", "q2", "q3"), {"g1": 1, "g2": 1, "g3": 1})
        return fivevertex.build_5v_first(fivevertex.FiveVertex1Params(**p))
    if family == "5vff":
        base = ("p1", "p2", "q2", "q3")
        if "alpha" in params:
            p = _take(params, base + ("alpha",), {"q1": 0, "p3": 0})
            gauge = fivevertex.UniformGauge(p.pop("alpha"), p.pop("q1"), p.pop("p3"))
        else:
            p = _take(params, base + ("g12", "g13", "g23"))
            gauge = fivevertex.ExplicitGauge(p.pop("g12"), p.pop("g13"), p.pop("g23"))
        return fivevertex.build_5v_ff(fivevertex.FiveVertexFFParams(gauge=gauge, **p))
    if family == "6v-asym-rational":
        return sixvertex.build_6v_asym(sixvertex.SixVertexRational(**_take(params, tuple("abcdef"))))
    if family == "6v-asym-trig":
        p = _take(params, ("gamma", "q1", "q2", "q3", "lambdaA", "lambdaC"))
        return sixvertex.build_6v_asym(sixvertex.SixVertexTrig(**p))
    if family == "6vff":
        if "b11" in params:
            keys = ("b11", "b12", "b21", "b22", "c11", "c12", "c21", "c22")
            p = _take(params, keys)
            hb = Matrix([[p["b11"], p["b12"]], [p["b21"], p["b22"]]])
            hc = Matrix([[p["c11"], p["c12"]], [p["c21"], p["c22"]]])
        else:
            p = _take(params, ("qB", "thetaB", "qpB", "qC", "thetaC", "qpC"))
            hb = sixvertex.euler_sl2(p["qB"], p["thetaB"], p["qpB"])
            hc = sixvertex.euler_sl2(p["qC"], p["thetaC"], p["qpC"])
        return sixvertex.build_6v_ff(sixvertex.SL2Pair(hb, hc))
    if family == "8v":
        p = _take(params, ("x", "y", "z", "v"), {"a": 1, "b": 1, "c": 1})
        return eightvertex.build_8v(eightvertex.EightVertexParams(**p))
    if family == "8v-baxter":
        p = _take(params, ("sigma", "chi", "gamma", "k"))
        try:
            bp = baxter.BaxterParams(**{k: _real(v) for k, v in p.items()})
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        return baxter.build_8v_baxter(bp)
    raise UsageError(f"unknown family {family!r}; expected one of {', '.join(FAMILY_NAMES)}")


# ---------------------------------------------------------------------------
# helpers


def default_tol() -> float:
    raw = os.environ.get("YANGBAX_TOL")
    if raw is None:
        return DEFAULT_TOL
    try:
        return float(raw)
    except ValueError:
        raise UsageError(f"YANGBAX_TOL must be a number, got {raw!r}") from None


def _load(path: str) -> TripletDocument:
    try:
        if path == "-":
            return TripletDocument.from_json(sys.stdin.read())
        return TripletDocument.load(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except DocumentError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _emit(text: str, out: str | None):
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _json_scalar(value):
    return None if value is None else encode_scalar(value)


def matrix_invariants(m: Matrix, tol: float) -> dict:
    p = p_polys(m)
    rec = {k: encode_scalar(v) for k, v in p.as_dict().items()}
    if is_six_vertex_form(m, tol):
        inv = six_vertex_invariants(m, tol)
        rec.update(Delta=_json_scalar(inv.Delta), delta=_json_scalar(inv.delta), delta_prime=_json_scalar(inv.delta_prime))
    if is_eight_vertex_form(m, tol) and not all(is_zero(m[r, c], tol) for r, c in ((0, 3), (3, 0))):
        inv = eight_vertex_invariants_from_matrix(m, tol)
        rec.update(Delta1=_json_scalar(inv.Delta1), Delta2=_json_scalar(inv.Delta2))
    rec["free_fermion"] = is_free_fermion(m, None if m.mode == RATIONAL else 1e-9)
    return rec


# ---------------------------------------------------------------------------
# commands


def cmd_build(args) -> int:
    params = parse_assignments(args.params)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", DegenerateWarning)
        t = build_family(args.family, params)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    doc = TripletDocument(t, {"family": args.family, "parameters": params})
    _emit(doc.to_json(), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    doc = _load(args.input)
    tol = args.tol if args.tol is not None else default_tol()
    res = ybe_residual(doc.triplet).max_abs()
    if doc.scalar_mode == RATIONAL:
        ok = res == 0
        shown = str(res)
    else:
        ok = res <= tol
        shown = f"{float(res):.3e}"
    print(f"residual {shown} {'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_invariants(args) -> int:
    doc = _load(args.input)
    tol = args.tol if args.tol is not None else default_tol()
    report = {name: matrix_invariants(m, tol) for name, m in zip("ABC", doc.triplet)}
    _emit(json.dumps(report, indent=2) + "\n", args.out)
    return EXIT_OK


def parse_gauge_spec(spec: str) -> DiagonalGauge:
    vals = parse_assignments([spec])
    vals = _take(vals, ("t1", "t2", "t3"))
    if any(v == 0 for v in vals.values()):
        raise ConstraintError("diagonal gauge entries must be nonzero", relation="t_i != 0")
    return DiagonalGauge(vals["t1"], vals["t2"], vals["t3"])


def cmd_transform(args) -> int:
    doc = _load(args.input)
    t = doc.triplet
    if args.gauge is not None:
        t = apply_gauge(parse_gauge_spec(args.gauge), t)
        step = {"gauge": args.gauge}
    else:
        t = apply_aut_word(_word(args.word), t)
        step = {"word": args.word}
    prov = {"family": "transform", "parameters": step}
    _emit(TripletDocument(t, prov).to_json(), args.out)
    return EXIT_OK


def _word(text: str):
    try:
        word = parse_word(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return word


CSV_HEADER = ["step", "slot", "p1", "p2", "p5", "p6", "p9", "Delta1", "Delta2", "period_flag"]


def _csv_scalar(value) -> str:
    return "" if value is None else format_scalar(value)


def cmd_orbit(args) -> int:
    doc = _load(args.input)
    word = _word(args.word)
    if not word:
        raise UsageError("orbit word must be non-empty")
    tol = args.tol if args.tol is not None else default_tol()
    result = orbit(doc.triplet, word, max_iter=args.max_iter, tol=tol)
    if args.csv:
        last = len(result.points) - 1
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(CSV_HEADER)
            for step, t in enumerate(result.points):
                flag = "1" if result.closed and step == last else "0"
                for slot, m in zip("ABC", t):
                    p = p_polys(m)
                    d1 = d2 = None
                    if is_eight_vertex_form(m, tol) and not is_zero(m[0, 3], tol):
                        inv = eight_vertex_invariants_from_matrix(m, tol)
                        d1, d2 = inv.Delta1, inv.Delta2
                    w.writerow([step, slot, *(_csv_scalar(v) for v in (p.p1, p.p2, p.p5, p.p6, p.p9, d1, d2)), flag])
    summary = {"word": list(word), "steps": len(result.points) - 1, "period": result.period}
    print(json.dumps(summary))
    return EXIT_OK


def _scalar_dict(d: dict) -> dict:
    return {k: (encode_scalar(v) if not isinstance(v, (bool, str)) else v) for k, v in d.items()}


def convert(src: str, dst: str, params: dict) -> dict:
    if src == "xyzv" and dst == "q":
        p = _take(params, ("x", "y", "z", "v"))
        try:
            d = eightvertex.derived_8v((p["x"], p["y"], p["z"], p["v"]))
        except NoExactRootError:
            p = {k: complex(v) for k, v in p.items()}
            d = eightvertex.derived_8v((p["x"], p["y"], p["z"], p["v"]))
        return {"q1": d.q1, "q2": d.q2, "q3": d.q3, "q4": d.q4, "Lambda": d.Lambda, "Delta1": d.Delta1, "Delta2": d.Delta2}
    if src == "q" and dst == "xyzv":
        p = _take(params, ("Lambda", "q1", "q2", "q3", "q4"))
        x, y, z, v = eightvertex.xyzv_from_q(p["Lambda"], p["q1"], p["q2"], p["q3"], p["q4"])
        return {"x": x, "y": y, "z": z, "v": v}
    if src == "baxter" and dst == "xyzv":
        p = _take(params, ("sigma", "chi", "gamma", "k"))
        try:
            bp = baxter.BaxterParams(**{k: _real(v) for k, v in p.items()})
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        x, y, z, v = baxter.elliptic_xyzv(bp)
        inv = eight_vertex_invariants_from_params(x, y, z, v)
        e1, e2 = baxter.elliptic_invariants(bp.gamma, bp.k)
        return {
            "x": x, "y": y, "z": z, "v": v,
            "Delta1": inv.Delta1, "Delta2": inv.Delta2,
            "elliptic_Delta1": e1, "elliptic_Delta2": e2,
            "six_vertex_stratum": bp.k == 0,
        }
    raise UsageError(f"unsupported conversion {src} -> {dst}; supported: xyzv->q, q->xyzv, baxter->xyzv")


def cmd_convert(args) -> int:
    params = {}
    if args.input:
        try:
            with open(args.input) as fh:
                raw = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read {args.input}: {exc}") from None
        params.update({k: parse_value(str(v)) for k, v in raw.items()})
    params.update(parse_assignments(args.params))
    out = convert(args.from_form, args.to_form, params)
    _emit(json.dumps(_scalar_dict(out), indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_selftest(args) -> int:
    rng = random.Random(args.seed)
    failures = 0
    for family in EXACT_FAMILIES + FLOAT_FAMILIES:
        worst = 0
        for _, t in sample_family(family, args.samples, rng):
            worst = max(worst, ybe_residual(t).max_abs())
        ok = worst == 0 if family in EXACT_FAMILIES else worst < 1e-9
        failures += not ok
        print(f"{family:18s} {args.samples:4d} samples  max residual {float(worst):.3e}  {'PASS' if ok else 'FAIL'}")
    return EXIT_OK if failures == 0 else EXIT_FAIL


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="yangbax", description="Build, verify and transform two-state Yang-Baxter triplets.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="construct a solution family")
    p.add_argument("family", choices=FAMILY_NAMES)
    p.add_argument("params", nargs="*", help="key=value parameters (exact: 3, -2/7; float: 0.3, pi/4)")
    p.add_argument("--out", "-o")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="print the YBE residual and PASS/FAIL")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--tol", type=float)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("invariants", help="p-polynomials and derived invariants per matrix")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--tol", type=float)
    p.add_argument("--out", "-o")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("transform", help="apply an inversion word or a diagonal gauge")
    p.add_argument("--in", dest="input", required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--word", help='generators applied left to right, e.g. "a,b"')
    g.add_argument("--gauge", help='diagonal gauge, e.g. "t1=2,t2=3,t3=5"')
    p.add_argument("--out", "-o")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("orbit", help="iterate a word until the triplet returns")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--max-iter", type=int, default=512)
    p.add_argument("--csv")
    p.add_argument("--tol", type=float)
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("convert", help="convert between parametrizations")
    p.add_argument("--from", dest="from_form", required=True, choices=("xyzv", "q", "baxter"))
    p.add_argument("--to", dest="to_form", required=True, choices=("xyzv", "q"))
    p.add_argument("--in", dest="input", help="JSON object of parameters")
    p.add_argument("params", nargs="*")
    p.add_argument("--out", "-o")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("selftest", help="random residual checks over every family")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=20)
    p.set_defaults(func=cmd_selftest)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConstraintError as exc:
        print(f"constraint violated: {exc}", file=sys.stderr)
        return EXIT_CONSTRAINT
    except (SingularMatrixError, NoExactRootError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONSTRAINT
    except YangBaxterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
