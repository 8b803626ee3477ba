"""Command line driver.

Exit status: 0 when every check passes, 1 when a check fails, 2 for
malformed input.  Reports are JSON with sorted keys, so equal inputs give
byte-identical output; timings go to stderr with --timing only.
"""

import argparse
import json
import os
import sys
import time

from .fan import Fan, FanError, surface_catalog
from .gkm import (GKMError, GKMGraph, PiecewiseClass, invariants_window, is_member,
                  quotient_presentation, window_basis_check)
from .rootdata import Involution, RootDataError, RootDatum, load_json

CATALOG = ("P1", "P2", "P1xP1", "Fn", "P3")


class InputError(Exception):
    pass


def _read_json(path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError("%s: %s" % (path, exc.strerror)) from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError("%s:%d:%d: %s" % (path, exc.lineno, exc.colno, exc.msg)) from exc


def _load(path, parse, what):
    obj = _read_json(path)
    try:
        return parse(obj)
    except (GKMError, FanError, RootDataError, ValueError, KeyError, TypeError,
            AttributeError) as exc:
        raise InputError("%s: malformed %s: %s" % (path, what, exc)) from exc


def _graph(path):
    return _load(path, lambda o: GKMGraph.from_json(o, name=os.path.basename(path)), "GKM graph")


def _klass(path, g):
    return _load(path, lambda o: PiecewiseClass.from_json(o, g), "class")


def _bundled_or_file(arg, prefix):
    if os.path.exists(arg):
        return _read_json(arg)
    try:
        return load_json("%s_%s.json" % (prefix, arg))
    except (FileNotFoundError, OSError):
        raise InputError("%s: no such file or bundled %s" % (arg, prefix)) from None


def _fan(arg, n=None):
    if arg in CATALOG:
        return surface_catalog(arg, n)
    return _load(arg, lambda o: Fan.from_json(o, name=os.path.basename(arg)), "fan")


# ---------------------------------------------------------------- subcommands

def cmd_toric(args):
    from .toric import gkm_from_fan, rs_presentation, verify_rs
    fan = _fan(args.fan, args.n)
    rep = verify_rs(fan, B=args.window)
    rep["gkm"] = gkm_from_fan(fan).to_json()
    rep["rs"] = rs_presentation(fan).to_json()
    return rep


def cmd_rankone(args):
    from .rankone import (RankOneCase, check_extra_relation, g_equivariant_presentation, rs_small,
                          small_graph, twisted_invariant_report, w0_is_automorphism)
    case = RankOneCase(args.case, args.n)
    srs = rs_small(case)
    rep = {"case": case.name, "small_graph": small_graph(case).to_json(),
           "rs": srs.to_json(), "w0_strict_defect": w0_is_automorphism(case)}
    checks = [{"name": "extra relation holds on the small graph",
               "pass": check_extra_relation(srs), "witness": srs.extra_relation_text()}]
    if args.g_equivariant is not None:
        rep["g_equivariant"] = g_equivariant_presentation(case, args.g_equivariant).to_json()
        rep["twisted"] = twisted_invariant_report(case, args.g_equivariant)
    rep["checks"] = checks
    rep["pass"] = all(c["pass"] for c in checks)
    return rep


def _mrd(args):
    from .rootdata import bundled_instance
    from .wonderful import build_minimal_rank
    if args.instance:
        d, th, h = bundled_instance(args.instance)
        return build_minimal_rank(d, th, h)
    if not (args.datum and args.theta):
        raise InputError("symmetric build needs <datum.json> <theta.json> or --instance")
    dobj = _bundled_or_file(args.datum, "datum")
    try:
        d = RootDatum.from_json(dobj, name=os.path.splitext(os.path.basename(args.datum))[0])
    except RootDataError as exc:
        raise InputError("%s: %s" % (args.datum, exc)) from exc
    tobj = _read_json(args.theta)
    try:
        th = Involution.from_json(tobj.get("involution", tobj), d)
    except (RootDataError, AttributeError) as exc:
        raise InputError("%s: %s" % (args.theta, exc)) from exc
    h = None
    if args.h_datum:
        try:
            h = RootDatum.from_json(_bundled_or_file(args.h_datum, "datum"))
        except RootDataError as exc:
            raise InputError("%s: %s" % (args.h_datum, exc)) from exc
    return build_minimal_rank(d, th, h)


def cmd_symmetric(args):
    from .wonderful import (build_gkm_X, build_gkm_Y, g_equivariant_K,
                            verify_product_decomposition, y_fan_consistent)
    mrd = _mrd(args)
    g = build_gkm_X(mrd) if args.graph == "X" else build_gkm_Y(mrd)
    rep = {"structure": mrd.summary(), "graph": g.to_json()}
    checks = [{"name": "Y graph agrees with the Weyl chamber fan",
               "pass": y_fan_consistent(mrd), "witness": None}]
    if args.verify_product is not None:
        rep["product_decomposition"] = verify_product_decomposition(mrd, args.verify_product)
    if args.g_equivariant is not None:
        r = g_equivariant_K(mrd, args.g_equivariant)
        rep["g_equivariant"] = r
        checks.append({"name": "W_H-invariant window rank equals the R(S) model",
                       "pass": r["pass"], "witness": r["split"]})
    if args.schubert:
        from .schubert import symmetric_schubert_report
        rep["schubert"] = symmetric_schubert_report(mrd)
    rep["checks"] = checks
    # the product decomposition is an audit; its outcome is reported, not enforced
    rep["pass"] = all(c["pass"] for c in checks)
    return rep


def cmd_schubert(args):
    from .rootdata import generate_weyl
    from .schubert import schubert_basis, structure_constants, structure_table, window_basis_rank
    d = RootDatum.from_json(_bundled_or_file(args.datum, "datum"))
    W = generate_weyl(d)
    basis = schubert_basis(d, W, convention=args.convention, normalization=args.normalization)
    rep = {"datum": d.to_json(), "convention": args.convention,
           "normalization": args.normalization,
           "classes": {w: basis[w].restrictions.to_json()["values"] for w in sorted(basis)}}
    if args.constants:
        u, v = args.constants
        if u not in basis or v not in basis:
            raise InputError("unknown Weyl element label in %s" % (args.constants,))
        c = structure_constants(d, u, v, W, basis)
        rep["constants"] = {w: p.to_json() for w, p in sorted(c.items())}
    if args.table:
        tab = structure_table(d, W, basis)
        rep["table"] = {"(%s,%s,%s)" % (u, v, w): p.to_json()
                        for (u, v), cs in sorted(tab.items()) for w, p in sorted(cs.items())}
    checks = []
    if args.window is not None:
        rk, expected, sat, mem = window_basis_rank(d, args.window, W, basis)
        checks.append({"name": "window basis", "pass": rk == expected and sat and mem,
                       "witness": {"rank": rk, "expected": expected, "saturated": sat,
                                   "members": mem}})
    rep["checks"] = checks
    rep["pass"] = all(c["pass"] for c in checks)
    return rep


def cmd_rr(args):
    from .grr import k_to_chow, verify_transport
    g = _graph(args.graph)
    rep = {"chow": k_to_chow(g).to_json()}
    if args.klass:
        f = _klass(args.klass, g)
        v = is_member(g, f)
        if not v:
            return {"chow": rep["chow"], "member": v.to_json(), "pass": False}
        rep["transport"] = verify_transport(g, f, args.degree)
        rep["pass"] = rep["transport"]["pass"]
    else:
        rep["pass"] = True
    return rep


def cmd_member(args):
    g = _graph(args.graph)
    f = _klass(args.klass, g)
    v = is_member(g, f)
    return {"verdict": v.to_json(), "pass": bool(v)}


def cmd_mul(args):
    g = _graph(args.graph)
    f, h = _klass(args.f, g), _klass(args.h, g)
    p = f * h
    vf, vh, vp = is_member(g, f), is_member(g, h), is_member(g, p)
    return {"product": p.to_json(), "members": {"f": bool(vf), "h": bool(vh), "product": bool(vp)},
            "verdict": vp.to_json(), "pass": bool(vf) and bool(vh) and bool(vp)}


def _group(obj, g):
    out = []
    for a in obj if isinstance(obj, list) else obj.get("autos", []):
        perm = a["perm"]
        if isinstance(perm, list):
            perm = dict(zip(g.vertices, [str(x) for x in perm]))
        out.append((perm, a["mat"]))
    return out


def cmd_invariants(args):
    g = _graph(args.graph)
    if args.group:
        group = _load(args.group, lambda o: _group(o, g), "group")
    else:
        group = list(g.autos)
    basis = invariants_window(g, group, args.window, strict=args.strict)
    ok, sat = window_basis_check(g, basis, group, args.window)
    rep = {"window": args.window, "rank": len(basis),
           "basis": [f.to_json()["values"] for f in basis],
           "checks": [{"name": "basis classes are invariant members", "pass": ok, "witness": None},
                      {"name": "basis is saturated", "pass": sat, "witness": None}]}
    if args.quotient:
        rep["quotient"] = quotient_presentation(g, group, B=args.window,
                                                strict=args.strict).to_json()
    rep["pass"] = ok and sat
    return rep


def cmd_catalog(args):
    from .toric import gkm_from_fan
    if args.name not in CATALOG:
        raise InputError("unknown catalog entry %r (choose from %s)" % (args.name, ", ".join(CATALOG)))
    if args.rankone:
        from .rankone import RankOneCase, g_equivariant_presentation, small_graph
        case = RankOneCase(args.name, args.n)
        rep = {"case": case.name, "small_graph": small_graph(case).to_json()}
        if args.g_equivariant:
            rep["g_equivariant"] = g_equivariant_presentation(case, args.window).to_json()
        rep["pass"] = True
        return rep
    fan = surface_catalog(args.name, args.n)
    g = gkm_from_fan(fan)
    if args.dot:
        return {"dot": g.to_dot(), "pass": True}
    return {"fan": fan.to_json(), "gkm": g.to_json(), "pass": True}


# ---------------------------------------------------------------- parser

def build_parser():
    def common(default):
        c = argparse.ArgumentParser(add_help=False)
        c.add_argument("--json", metavar="PATH", default=default,
                       help="write the report to PATH instead of stdout")
        c.add_argument("--dot", action="store_true", default=default,
                       help="print the graph in DOT format where supported")
        c.add_argument("--timing", action="store_true", default=default,
                       help="print elapsed time to stderr")
        return c

    p = argparse.ArgumentParser(prog="gkmkalc", description=__doc__.split("\n")[0],
                                parents=[common(None)])
    sub = p.add_subparsers(dest="command", required=True)
    # the shared flags may also follow the subcommand
    add = sub.add_parser
    sub.add_parser = lambda *a, **k: add(*a, parents=[common(argparse.SUPPRESS)], **k)

    s = sub.add_parser("toric", help="GKM graph and Reisner-Stanley checks of a smooth complete fan")
    s.add_argument("fan", help="fan JSON file or catalog name")
    s.add_argument("--n", type=int, help="n for Fn")
    s.add_argument("--window", "-B", type=int, default=3)
    s.set_defaults(func=cmd_toric)

    s = sub.add_parser("rankone", help="rank one SL2 / PSL2 compactifications")
    s.add_argument("case", choices=["P1", "P2", "P1xP1", "Fn"])
    s.add_argument("--n", type=int)
    s.add_argument("--g-equivariant", type=int, metavar="B", nargs="?", const=2)
    s.set_defaults(func=cmd_rankone)

    s = sub.add_parser("symmetric", help="wonderful compactifications of minimal rank symmetric spaces")
    s.add_argument("action", choices=["build"])
    s.add_argument("datum", nargs="?")
    s.add_argument("theta", nargs="?")
    s.add_argument("--instance", help="bundled instance name, e.g. A1xA1-swap")
    s.add_argument("--h-datum", help="root datum of H (file or bundled name)")
    s.add_argument("--graph", choices=["X", "Y"], default="X")
    s.add_argument("--verify-product", type=int, metavar="B")
    s.add_argument("--g-equivariant", type=int, metavar="B")
    s.add_argument("--schubert", action="store_true")
    s.set_defaults(func=cmd_symmetric)

    s = sub.add_parser("schubert", help="Schubert classes and structure constants of a flag variety")
    s.add_argument("datum", help="root datum JSON file or bundled name")
    s.add_argument("--constants", nargs=2, metavar=("U", "V"))
    s.add_argument("--table", action="store_true")
    s.add_argument("--window", "-B", type=int)
    s.add_argument("--convention", choices=["default", "opposite"], default="default")
    s.add_argument("--normalization", choices=["basis", "dual"], default="basis")
    s.set_defaults(func=cmd_schubert)

    s = sub.add_parser("rr", help="transport K-theory congruences to Chow congruences")
    s.add_argument("graph")
    s.add_argument("--class", dest="klass")
    s.add_argument("--degree", "-N", type=int, default=4)
    s.set_defaults(func=cmd_rr)

    s = sub.add_parser("member", help="membership test")
    s.add_argument("graph")
    s.add_argument("klass", metavar="class")
    s.set_defaults(func=cmd_member)

    s = sub.add_parser("mul", help="product of two classes")
    s.add_argument("graph")
    s.add_argument("f")
    s.add_argument("h")
    s.set_defaults(func=cmd_mul)

    s = sub.add_parser("invariants", help="invariant member classes in a window")
    s.add_argument("graph")
    s.add_argument("group", nargs="?", help="JSON list of {perm, mat}; defaults to the graph's autos")
    s.add_argument("--window", "-B", type=int, default=2)
    s.add_argument("--strict", action=argparse.BooleanOptionalAction, default=True)
    s.add_argument("--quotient", action="store_true")
    s.set_defaults(func=cmd_invariants)

    s = sub.add_parser("catalog", help="bundled fans and rank one presentations")
    s.add_argument("name")
    s.add_argument("--n", type=int)
    s.add_argument("--rankone", action="store_true")
    s.add_argument("--g-equivariant", action="store_true")
    s.add_argument("--window", "-B", type=int, default=2)
    s.set_defaults(func=cmd_catalog)
    return p


def _emit(rep, args, out):
    key = next((k for k in ("graph", "gkm") if isinstance(rep.get(k), dict)), None)
    if args.dot and key:
        text = GKMGraph.from_json(rep[key]).to_dot()
    elif "dot" in rep:
        text = rep["dot"]
    else:
        text = json.dumps(rep, sort_keys=True, indent=2)
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(text + "\n")
    else:
        out.write(text + "\n")


def run(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    t0 = time.perf_counter()
    try:
        rep = args.func(args)
    except InputError as exc:
        sys.stderr.write("gkmkalc: %s\n" % exc)
        return 2
    except (GKMError, FanError, RootDataError, ValueError) as exc:
        sys.stderr.write("gkmkalc: %s\n" % exc)
        return 2
    rep = dict(rep)
    rep["command"] = list(argv if argv is not None else sys.argv[1:])
    _emit(rep, args, out)
    if args.timing:
        sys.stderr.write("elapsed %.3f s\n" % (time.perf_counter() - t0))
    return 0 if rep.get("pass", True) else 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
