"""
Command line front end.

    python cli.py braid --word "B3: 2 1 2" --normal-form
    python cli.py closure --word "B3: 1 2 1"
    python cli.py torus --p 5 --q 3
    python cli.py mw --parts 1,1,2
    python cli.py lines --input lines.txt --script-out script.json
    python cli.py tangent --degree 5 --pencil lprime --format svg --out section.svg
    python cli.py check-a --braid x.txt --degree 4
    python cli.py selftest

The result object goes to stdout as JSON; the human summary goes to stderr.
Exit codes: 0 success, 1 domain error (JSON on stderr), 2 usage error.
"""
import argparse
import json
import os
import random
import sys

import numpy as np

import config
from lib import line_config, line_io, mw_links, selftest, tangent_surface, theorem44
from lib.braid_core import (
    Permutation,
    canonical_form,
    delta,
    exponent_sum,
    format_braid,
    garside_normal_form,
    is_permutation_braid,
    parse_braid,
    perm_of,
    tau,
)
from lib.errors import MalformedBraid, MalformedLines, MWLinksError, RangeViolation
from lib.projective_closure import (
    describe_closure,
    diagram_stats,
    invariant_signature,
    lift,
    lift_component_map,
    rp3_doubled_linking_matrix,
    s3_doubled_linking_matrix,
)
from lib.torus_links import TorusParams, lift_matches_full_torus, torus_report


_quiet = False


def log(message):
    if _quiet:
        return
    print(f"[CLI] {message}", file=sys.stderr, flush=True)


def _read_braid(args):
    if args.word is not None:
        return parse_braid(args.word)
    if args.braid is not None:
        if not os.path.exists(args.braid):
            raise MalformedBraid("braid file not found", path=args.braid)
        with open(args.braid, "r", encoding="utf-8") as f:
            return parse_braid(f.read())
    raise RangeViolation("give --word or --braid FILE")


def braid_report(w):
    infimum, factors = garside_normal_form(w)
    report = {
        "braid": format_braid(w),
        "strands": w.strands,
        "exponent_sum": exponent_sum(w),
        "perm": list(perm_of(w).images),
        "tau": format_braid(tau(w)),
        "delta": format_braid(delta(w.strands)),
        "infimum": infimum,
        "positive": infimum >= 0,
        "is_permutation_braid": is_permutation_braid(w),
    }
    if infimum >= 0:
        cf = canonical_form(w)
        report["canonical_form"] = str(cf)
        report["canonical_word"] = format_braid(cf.word())
        report["factors"] = len(cf.factors)
    return report


def closure_report(w):
    closure = describe_closure(w)
    stats = diagram_stats(w)
    return {
        "braid": format_braid(w),
        "components": [list(c) for c in closure.components],
        "component_lengths": list(closure.component_lengths),
        "lift": format_braid(lift(w)),
        "lift_component_map": {str(k): v for k, v in lift_component_map(w).items()},
        "dlk_rp3": rp3_doubled_linking_matrix(w).rows(),
        "dlk_s3_lift": s3_doubled_linking_matrix(lift(w)).rows(),
        "diagram": {"arcs": stats.arcs, "crossings": stats.crossings, "all_positive": stats.all_positive,
                    "per_component_self_crossings": list(stats.per_component_self_crossings)},
        "signature": invariant_signature(w).to_dict(),
    }


def cmd_braid(args):
    w = _read_braid(args)
    report = braid_report(w)
    if args.normal_form and "canonical_form" in report:
        log(f"normal form {report['canonical_form']}")
    return report


def cmd_closure(args):
    report = closure_report(_read_braid(args))
    log(f"{len(report['components'])} component(s)")
    return report


def cmd_torus(args):
    t = TorusParams(args.p, args.q)
    report = torus_report(t)
    if report["p"] >= 1 and report["q"] >= 0:
        report["lift_matches_torus_link"] = lift_matches_full_torus(report["p"], report["q"])
    log(f"T_proj({report['p']},{report['q']}): cr={report['cr']} ps={report['ps']}")
    return report


def cmd_mw(args):
    if args.sweep is not None:
        return mw_links.sweep(args.sweep)
    wp = mw_links.parse_parts(args.parts)
    report = mw_links.verify_w_model(wp).to_dict()
    if wp.g >= 1:
        report["positive_linking"] = mw_links.corollary16_check(wp)
    log(f"W_{wp.g}{tuple(wp.parts)} verified, total_cr {report['total_cr']}")
    return report


def cmd_lines(args):
    if args.script is not None:
        script = _read_script(args.script)
    else:
        if args.input is not None:
            lines = line_io.read_lines_file(args.input)
        elif args.random is not None:
            lines = line_config.random_hopf_configuration(args.random, random.Random(args.seed))
        else:
            raise RangeViolation("give --input FILE, --random N or --script FILE")
        script = line_config.standardize(lines)
    certificate = line_config.verify_script(script)
    if args.script_out:
        with open(args.script_out, "w", encoding="utf-8") as f:
            json.dump(script.to_dict(), f, indent=1)
    if args.final_out:
        line_io.write_lines_file(args.final_out, script.final_lines())
    log(f"{len(script.stages)} stage(s), certified={certificate.verified}")
    return {
        "lines": len(script.initial),
        "stages": len(script.stages),
        "slopes": [None if s is None else str(s) for s in script.slopes()],
        "final_equations_hold": line_config.final_equations_hold(script),
        "final": [line_io.format_line(line) for line in script.final_lines()],
        "script": script.to_dict() if args.with_script else None,
        "certificate": certificate.to_dict(),
    }


def _read_script(path):
    if not os.path.exists(path):
        raise MalformedLines("script file not found", path=path)
    with open(path, "r", encoding="utf-8") as f:
        try:
            return line_config.IsotopyScript.from_dict(json.load(f))
        except (ValueError, KeyError, TypeError, AttributeError) as e:
            raise MalformedLines("not an isotopy script", path=path, reason=str(e))


def _parse_normal(text):
    try:
        values = [float(v) for v in text.split(",")]
    except ValueError:
        values = []
    if len(values) != 4:
        raise RangeViolation("normal must be four comma separated numbers", normal=text)
    return values


def _section_summary(c):
    entry = {
        "phi": c.phi,
        "cusps": tangent_surface.cusp_count(c),
        "min_separation": tangent_surface.min_separation(c),
        "closed": c.closed,
    }
    if c.pencil in tangent_surface.PENCILS:
        entry["expected_cusps"] = tangent_surface.expected_cusps(c.d, c.pencil)
        entry["rotational_residual"] = tangent_surface.rotational_residual(c)
    return entry


def cmd_tangent(args):
    m = args.samples
    if args.knot:
        k = args.tangents or 0
        curves = [tangent_surface.mw_knot_sample(args.degree, m)]
        curves += [tangent_surface.tangent_segment(args.degree, j * np.pi / k) for j in range(k)]
    elif args.normal:
        curves = [tangent_surface.section_by_normal(args.degree, _parse_normal(args.normal), m)]
    elif args.grid:
        curves = tangent_surface.section_grid(args.degree, args.pencil, args.grid, m)
    else:
        curves = [tangent_surface.section(args.degree, args.pencil, args.phi, m)]
    payload = tangent_surface.emit(curves if args.format == "svg" else curves[0], args.format)
    summary = {"degree": args.degree, "samples": m, "format": args.format}
    if args.knot:
        summary["tangent_lines"] = len(curves) - 1
    else:
        summary["sections"] = [_section_summary(c) for c in curves]
    if args.out:
        with open(args.out, "wb") as f:
            f.write(payload)
        summary["out"] = args.out
        return summary
    sys.stdout.buffer.write(payload)
    sys.stdout.flush()
    log(json.dumps(summary))
    return None


def cmd_check_a(args):
    cert = theorem44.check_a(_read_braid(args), args.degree)
    log(f"certified: projective closure is T_proj({args.degree},{args.degree - 2})")
    return cert.to_dict()


def cmd_check_b(args):
    cert = theorem44.check_b(_read_braid(args), args.degree)
    log(f"certified: projective closure is T_proj({args.degree},{args.degree - 2})")
    return cert.to_dict()


def cmd_remark46(args):
    return theorem44.remark46_fixture(args.degree)


def cmd_selftest(args):
    report = selftest.run_selftest(seed=args.seed, hopf_configs=args.hopf_configs)
    if not report["passed"]:
        args.exit_code = 1
    return report


def _add_braid_input(p):
    p.add_argument("--word", help="braid text, e.g. 'B3: 1 2 1'")
    p.add_argument("--braid", help="file holding one braid in text form")


def build_parser():
    parser = argparse.ArgumentParser(prog="cli.py", description="Maximally writhed links toolkit")
    parser.add_argument("--json", action="store_true", help="machine output only")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("braid", help="normal form, e, perm, tau, Delta")
    _add_braid_input(p)
    p.add_argument("--normal-form", action="store_true")
    p.set_defaults(handler=cmd_braid)

    p = sub.add_parser("closure", help="projective closure signature")
    _add_braid_input(p)
    p.set_defaults(handler=cmd_closure)

    p = sub.add_parser("torus", help="T_proj(p, q) formulas and braid")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(handler=cmd_torus)

    p = sub.add_parser("mw", help="build and verify W_g models")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--parts", help="comma separated a_0,...,a_g")
    group.add_argument("--sweep", type=int, metavar="MAX_TOTAL")
    p.set_defaults(handler=cmd_mw)

    p = sub.add_parser("lines", help="standardize and certify a Hopf configuration")
    p.add_argument("--input", help="lines file (`P x y z D dx dy dz` / `INF a b c`)")
    p.add_argument("--random", type=int, metavar="N")
    p.add_argument("--seed", type=int, default=config.RANDOM_SEED)
    p.add_argument("--script", help="verify a saved script JSON instead")
    p.add_argument("--script-out")
    p.add_argument("--final-out")
    p.add_argument("--with-script", action="store_true")
    p.set_defaults(handler=cmd_lines)

    p = sub.add_parser("tangent", help="tangent-surface sections as CSV/SVG")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--pencil", choices=sorted(tangent_surface.PENCILS), default="lprime")
    p.add_argument("--phi", type=float, default=0.0)
    p.add_argument("--samples", type=int, default=config.DEFAULT_SAMPLES)
    p.add_argument("--format", choices=["csv", "svg"], default="csv")
    p.add_argument("--out")
    p.add_argument("--grid", type=int, metavar="K", help="K sections at phi = j pi / K")
    p.add_argument("--knot", action="store_true", help="emit the knot itself")
    p.add_argument("--tangents", type=int, metavar="K", help="with --knot: K tangent lines at theta = j pi / K")
    p.add_argument("--normal", metavar="A,B,C,D", help="section by the plane with this normal instead of a pencil")
    p.set_defaults(handler=cmd_tangent)

    for name, handler in (("check-a", cmd_check_a), ("check-b", cmd_check_b)):
        p = sub.add_parser(name, help="certify a braid closure is T_proj(d, d-2)")
        _add_braid_input(p)
        p.add_argument("--degree", type=int, required=True)
        p.set_defaults(handler=handler)

    p = sub.add_parser("remark46", help="the non-permutation example with N_d crossings")
    p.add_argument("--degree", type=int, required=True)
    p.set_defaults(handler=cmd_remark46)

    p = sub.add_parser("selftest", help="run the acceptance suite")
    p.add_argument("--seed", type=int, default=config.RANDOM_SEED)
    p.add_argument("--hopf-configs", type=int, default=None)
    p.set_defaults(handler=cmd_selftest)
    return parser


def _jsonable(value):
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, Permutation):
        return list(value.images)
    return str(value)


def run(argv=None):
    global _quiet
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code
    _quiet = args.json
    args.exit_code = 0
    try:
        result = args.handler(args)
    except MWLinksError as e:
        print(json.dumps(e.to_dict(), default=_jsonable), file=sys.stderr, flush=True)
        log(f"[ERROR] {e.message}")
        return 1
    if result is not None:
        print(json.dumps(result, default=_jsonable, indent=None if args.json else 1), flush=True)
    return args.exit_code


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
