"""unit-arc: command-line access to every operation.

Exit codes: 0 feasible / valid, 1 infeasible (a certificate is emitted),
2 input error.  Every run ends with one ``unit-arc: exit=<code> ...`` line
on stderr.
"""

import argparse
import json
import random
import sys

from . import jsonio
from .minimal import (NotUnitError, build_T, drawing_crossings, min_circ, min_power, min_uca,
                      min_uig)
from .model import ModelError, UcaDescriptor, graph_of, verify_realization
from .oracle import (CycleCapExceeded, oracle_feasible, random_int_descriptor, random_pca_model,
                     random_pca_order, random_pig_model)
from .rational import INF, as_rational, format_rational
from .recognition import hollow_ratio, nose_ratio, rep_linear, verify_certificate
from .render import render_canonical, render_model, render_realized
from .solver import solve_bound_rep, solve_int_bound_rep, solve_u_rep
from .synthetic import build_bounded, build_synthetic, to_dot, walk_sep


def _emit(args, text):
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _model(args):
    return jsonio.read_model(args.model, allow_trivial=getattr(args, "allow_trivial", False))


def _descriptor(args, linear):
    if args.desc:
        return jsonio.read_descriptor(args.desc)
    if args.l is None:
        raise ModelError("missing", "a descriptor is required: --desc FILE or --l (and --c)")
    c = INF if linear and args.c is None else args.c
    if c is None:
        raise ModelError("missing", "circular models need --c")
    return UcaDescriptor(c, args.l, args.d, args.ds)


def cmd_validate(args):
    m = _model(args)
    g = graph_of(m)
    doc = {"valid": True, "n": m.n, "kind": "pig" if m.linear else "pca",
           "trivial": m.trivial_reason(), "edges": len(g.edges)}
    _emit(args, jsonio.dumps(doc))
    return 0, "valid"


def cmd_synth(args):
    m = _model(args)
    g = build_bounded(m) if args.bounded else build_synthetic(m)
    if args.format == "dot":
        _emit(args, to_dot(g))
    else:
        doc = {"n": g.n, "height": g.height, "heights": list(g.heights[1:]),
               "edges": jsonio.cycle_json(g.edges)}
        _emit(args, jsonio.dumps(doc))
    return 0, f"{len(g.edges)} edges"


def cmd_ratio(args):
    m = _model(args)
    g = build_synthetic(m)
    r, rc = nose_ratio(m, g)
    big_r, hc = hollow_ratio(m, g)
    uca = big_r.den == 0 or r.value < big_r.value
    doc = {"r": str(r), "R": str(big_r), "uca": uca,
           "nose_cycle": jsonio.cycle_json(rc), "hollow_cycle": jsonio.cycle_json(hc or ())}
    _emit(args, jsonio.dumps(doc))
    return (0 if uca else 1), f"r={r} R={big_r}"


def cmd_rep(args):
    m = _model(args)
    cert = rep_linear(m)
    _emit(args, jsonio.dumps(jsonio.certificate_json(cert)))
    if cert.positive:
        return 0, f"positive ({cert.c}, {cert.l})"
    return 1, f"negative a/b={cert.a}/{cert.b} x/y={cert.x}/{cert.y}"


def _solver_result(args, res):
    _emit(args, jsonio.dumps(jsonio.solver_json(res)))
    if res.feasible:
        return 0, "feasible"
    return 1, f"infeasible, cycle of {len(res.cycle)} edges, weight {format_rational(res.weight)}"


def cmd_urep(args):
    m = _model(args)
    u = _descriptor(args, m.linear)
    res = solve_u_rep(m, u)
    if res.feasible:
        assert verify_realization(res.model, m, u).ok
    return _solver_result(args, res)


def cmd_boundrep(args):
    m = _model(args)
    u = _descriptor(args, m.linear)
    return _solver_result(args, solve_bound_rep(m, u.c, u.l, u.ds, u.dl, u.dr))


def cmd_intboundrep(args):
    m = _model(args)
    u = _descriptor(args, m.linear)
    return _solver_result(args, solve_int_bound_rep(m, u.c, u.l, u.ds, u.dl, u.dr))


def cmd_min_uig(args):
    res = min_uig(_model(args), args.d, args.ds)
    _emit(args, jsonio.dumps(res.to_json()))
    return 0, f"l*={format_rational(res.l_star)}"


def cmd_min_uca(args):
    try:
        res = min_uca(_model(args), args.d, args.ds)
    except NotUnitError as exc:
        _emit(args, jsonio.dumps(jsonio.certificate_json(exc.certificate)))
        return 1, "not UCA"
    _emit(args, jsonio.dumps(res.to_json()))
    return 0, f"(c*, l*) = ({format_rational(res.c_star)}, {format_rational(res.l_star)})"


def cmd_min_circ(args):
    m = _model(args)
    if args.l is None:
        raise ModelError("missing", "min-circ needs --l")
    trace = []
    res = min_circ(m, args.l, args.d, args.ds, trace=trace)
    doc = {"l": format_rational(as_rational(args.l)),
           "c_star": None if res is None else format_rational(res.model.c),
           "model": None if res is None else res.model.to_json(),
           "trace": [{"probe": p, "value": format_rational(v), "feasible": ok}
                     for p, v, ok in trace]}
    _emit(args, jsonio.dumps(doc))
    if res is None:
        return 1, "infeasible for every c in the window"
    return 0, f"c*={format_rational(res.model.c)}"


def cmd_min_power(args):
    m = _model(args)
    try:
        ext = min_power(m)
    except NotUnitError as exc:
        _emit(args, jsonio.dumps(jsonio.certificate_json(exc.certificate)))
        return 1, "not UCA"
    _emit(args, jsonio.dumps(ext.to_json()))
    return 0, f"(k, q) = ({ext.k}, {ext.q})"


def cmd_certify(args):
    m = _model(args)
    try:
        cert = jsonio.certificate_from_json(json.loads(jsonio.load_text(args.cert)))
    except (KeyError, ValueError, TypeError) as exc:
        raise ModelError("token", f"bad certificate file: {exc}") from exc
    verdict = verify_certificate(m, cert)
    _emit(args, jsonio.dumps({"ok": verdict.ok, "report": list(verdict.report)}))
    if verdict.ok:
        return 0, "certificate verified"
    return 1, "certificate rejected"


def _fuzz_case(seed, max_n):
    rng = random.Random(seed)
    n = rng.randint(3, max_n)
    pick = rng.random()
    if pick < 0.2:
        m = random_pig_model(n, seed)
    elif pick < 0.6:
        m = random_pca_model(n, seed)
    else:
        m = random_pca_order(n, seed)
    u = random_int_descriptor(m, seed)
    res = solve_u_rep(m, u)
    ok, _ = oracle_feasible(m, u)
    problems = []
    if res.feasible != ok:
        problems.append("solver and oracle disagree")
    if res.feasible and not verify_realization(res.model, m, u).ok:
        problems.append("feasible model fails verification")
    if not res.feasible and not walk_sep(res.cycle, u) > 0:
        problems.append("infeasibility cycle is not positive")
    cert = rep_linear(m)
    if not verify_certificate(m, cert).ok:
        problems.append("recognition certificate fails")
    return {"seed": seed, "model": str(m), "linear": m.linear,
            "descriptor": u.to_json(), "problems": problems}


def cmd_fuzz(args):
    failures = []
    for k in range(args.count):
        case = _fuzz_case(args.seed + k, args.max_n)
        if case["problems"]:
            failures.append(case)
    _emit(args, jsonio.dumps({"cases": args.count, "failures": failures}))
    if failures:
        return 1, f"{len(failures)} of {args.count} cases failed"
    return 0, f"{args.count} cases agree"


def cmd_render(args):
    text = jsonio.load_text(args.model)
    if text.lstrip().startswith("{"):
        svg = render_realized(jsonio.read_realized(args.model))
    else:
        m = _model(args)
        if args.canonical:
            t = build_T(m)
            assert not drawing_crossings(t)
            svg = render_canonical(t)
        else:
            svg = render_model(m)
    _emit(args, svg)
    return 0, "rendered"


COMMANDS = {
    "validate": (cmd_validate, "check a model file"),
    "synth": (cmd_synth, "synthetic graph as JSON or DOT"),
    "ratio": (cmd_ratio, "nose and hollow ratios"),
    "rep": (cmd_rep, "linear-time recognition with a certificate"),
    "boundrep": (cmd_boundrep, "bounded representation, d left free"),
    "intboundrep": (cmd_intboundrep, "bounded integer representation with d = 1"),
    "urep": (cmd_urep, "representation for a full descriptor"),
    "min-uig": (cmd_min_uig, "(d, ds)-minimal interval model"),
    "min-uca": (cmd_min_uca, "(N, d, ds)-minimal circular model"),
    "min-circ": (cmd_min_circ, "least circumference for a fixed length"),
    "min-power": (cmd_min_power, "least power of a path or cycle containing the model"),
    "certify": (cmd_certify, "re-check a certificate against a model"),
    "fuzz": (cmd_fuzz, "random solver/oracle agreement run"),
    "render": (cmd_render, "SVG drawing of a model"),
}

NEEDS_DESC = {"boundrep", "intboundrep", "urep"}


def build_parser():
    p = argparse.ArgumentParser(prog="unit-arc", description="Unit circular-arc models.")
    sub = p.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        sp = sub.add_parser(name, help=help_text)
        if name != "fuzz":
            sp.add_argument("model", help="model file (text format or realized JSON), - for stdin")
        sp.add_argument("-o", "--output", help="write the result here instead of stdout")
        sp.add_argument("--format", choices=("json", "dot", "svg", "pca"), default="json")
        if name in NEEDS_DESC or name in ("min-uig", "min-uca", "min-circ"):
            sp.add_argument("--desc", help="descriptor JSON file")
            sp.add_argument("--c", help="circumference (p/q or inf)")
            sp.add_argument("--l", help="arc length")
            sp.add_argument("--d", default="1", help="extreme separation (default 1)")
            sp.add_argument("--ds", default="0", help="extra begin separation (default 0)")
        if name == "synth":
            sp.add_argument("--bounded", action="store_true", help="include A_0 and bounds")
        if name == "certify":
            sp.add_argument("cert", help="certificate JSON")
        if name == "render":
            sp.add_argument("--canonical", action="store_true",
                            help="draw the canonical drawing of T (interval models)")
        if name == "validate":
            sp.add_argument("--allow-trivial", action="store_true")
        if name == "fuzz":
            sp.add_argument("--count", type=int, default=100)
            sp.add_argument("--seed", type=int, default=0)
            sp.add_argument("--max-n", type=int, default=8)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = 0 if exc.code == 0 else 2
        print(f"unit-arc: exit={code} usage", file=sys.stderr)
        return code
    func = COMMANDS[args.command][0]
    try:
        if args.command == "synth" and args.format not in ("json", "dot"):
            raise ModelError("token", "synth supports --format json or dot")
        code, message = func(args)
    except ModelError as exc:
        code, message = 2, f"error kind={exc.kind} {exc}"
    except (OSError, ValueError, TypeError, KeyError) as exc:
        code, message = 2, f"error {type(exc).__name__}: {exc}"
    except CycleCapExceeded as exc:
        code, message = 2, f"error cycle-cap: {exc}"
    print(f"unit-arc: exit={code} {args.command}: {message}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
