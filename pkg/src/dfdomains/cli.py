"""``dfdomains`` command line.

Exit status: 0 success, 2 unreadable input, 3 unverified domain, 4 internal
inconsistency.
"""

from __future__ import annotations

import argparse
import sys

from . import exactnum as en
from .domains import (InconsistentDomain, NoParabolicAtInfinity, UnverifiedDomain,
                      dirichlet_domain, ford_domain)
from .exactnum import mp, parse_quadrat
from .io import (ParseError, domain_json, domain_svg, dumps, load_group, load_kleinian,
                 matrix_json, num, point_json, polygon_svg)
from .kleinian import df_criterion
from .modular import (coset_enumerate, format_cycles, generated_oracle, hsu_test,
                      intersection_oracle, perm_group_order, principal_congruence_index)
from .symmetry import (double_dirichlet_check, double_reflection_group, df_check,
                       extract_reflection_group, polygon_from_signature)

EXIT_OK, EXIT_PARSE, EXIT_UNVERIFIED, EXIT_INCONSISTENT = 0, 2, 3, 4


def _report_json(rep) -> dict:
    return {
        "has_axis": rep.has_axis,
        "axis": num(rep.axis.x),
        "pairing_symmetric": rep.pairing_symmetric,
        "center_line": None if rep.center_line is None else
        {"from": point_json(rep.center_line[0]), "to": "oo"},
        "violation": None if rep.violation is None else
        {"side": rep.violation[0], "reason": rep.violation[1]},
    }


def _polygon_json(Q) -> dict:
    from .io import geodesic_json
    return {
        "sides": [geodesic_json(g) for g in Q.sides],
        "vertices": [point_json(p) for p in Q.vertices],
        "angles_over_pi": [None if q is None else str(q) for q in Q.angles_over_pi],
        "reflections": [matrix_json(r) for r in Q.reflections],
        "area_over_pi": mp.nstr(Q.area() / mp.pi, 20),
    }


def _parse_pair(text: str):
    parts = text.split(",")
    if len(parts) != 2:
        raise ParseError(f"expected 'x,y', got {text!r}")
    return tuple(parse_quadrat(p.strip()) for p in parts)


def _emit(args, payload, svg=None):
    if args.format == "svg" and svg is not None:
        out = svg
    elif args.format == "text" and isinstance(payload, dict):
        out = "\n".join(f"{k}: {v}" for k, v in sorted(payload.items())) + "\n"
    else:
        out = dumps(payload) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def cmd_ford(args):
    dom = ford_domain(load_group(args.input), args.depth)
    _emit(args, domain_json(dom), domain_svg(dom, dom.axis))


def cmd_dirichlet(args):
    x, y = _parse_pair(args.center)
    dom = dirichlet_domain(load_group(args.input), (x, y), args.depth)
    _emit(args, domain_json(dom), domain_svg(dom, dom.center.x))


def cmd_df_check(args):
    dom = ford_domain(load_group(args.input), args.depth)
    rep = df_check(dom)
    _emit(args, _report_json(rep), domain_svg(dom, dom.axis))


def cmd_double_dirichlet(args):
    centers = None
    if args.centers:
        centers = tuple(parse_quadrat(c.strip()) for c in args.centers.split(","))
    rep = double_dirichlet_check(load_group(args.input), parse_quadrat(args.axis), centers, args.depth)
    _emit(args, _report_json(rep))


def cmd_extract(args):
    dom = ford_domain(load_group(args.input), args.depth)
    Q = extract_reflection_group(dom, df_check(dom))
    _emit(args, _polygon_json(Q), polygon_svg(Q))


def cmd_double(args):
    if args.signature:
        Q = polygon_from_signature(args.signature)
    elif args.input:
        dom = ford_domain(load_group(args.input), args.depth)
        Q = extract_reflection_group(dom, df_check(dom))
    else:
        raise ParseError("give --signature or --input")
    gens, P = double_reflection_group(Q)
    payload = {"generators": [matrix_json(g) for g in gens], "domain": domain_json(P)}
    _emit(args, payload, domain_svg(P, Q.sides[-1].x))


def cmd_polygon(args):
    Q = polygon_from_signature(args.signature)
    _emit(args, _polygon_json(Q), polygon_svg(Q))


def cmd_congruence(args):
    gens = load_group(args.input)
    if args.oracle == "integral-intersection":
        oracle = intersection_oracle(ford_domain(gens, args.depth))
    else:
        oracle = generated_oracle(gens, args.depth)
    action = coset_enumerate(oracle, args.budget)
    report = hsu_test(action)
    payload = report.as_dict()
    payload["index"] = action.index
    payload["cusp_widths"] = list(action.cusp_widths())
    if args.core:
        core = perm_group_order([action.perm_L, action.perm_R])
        payload["core_index"] = core
        if report.level > 1:
            pci = principal_congruence_index(report.level)
            payload["principal_congruence_index"] = pci
            payload["core_smaller_than_principal"] = core < pci
    if args.emit_perms:
        payload["perm_L"] = format_cycles(action.perm_L)
        payload["perm_R"] = format_cycles(action.perm_R)
    _emit(args, payload)


def cmd_kleinian(args):
    res = df_criterion(load_kleinian(args.input))
    _emit(args, res.as_dict())


def cmd_reproduce(args):
    from .reproduce import run_all
    rows = run_all()
    width = max(len(name) for name, _, _ in rows)
    for name, ok, detail in rows:
        print(f"{'PASS' if ok else 'FAIL'}  {name:<{width}}  {detail}")
    return EXIT_OK if all(ok for _, ok, _ in rows) else EXIT_INCONSISTENT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dfdomains", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, needs_input=True, **kw):
        p = sub.add_parser(name, **kw)
        if needs_input:
            p.add_argument("--input", "--group", dest="input", required=True,
                           help="group JSON file (bundled fixtures are found by name)")
        p.add_argument("--depth", type=int, default=4, help="maximal word length (default 4)")
        p.add_argument("--bits", type=int, default=128, help="working precision (default 128)")
        p.add_argument("--format", choices=("json", "svg", "text"), default="json")
        p.add_argument("--output", help="write to this file instead of stdout")
        p.set_defaults(func=func)
        return p

    add("ford", cmd_ford, help="Ford domain")
    p = add("dirichlet", cmd_dirichlet, help="Dirichlet domain")
    p.add_argument("--center", required=True, help="centre as 'x,y'")
    add("df-check", cmd_df_check, help="test a Ford domain for mirror symmetry")
    p = add("double-dirichlet", cmd_double_dirichlet, help="compare Dirichlet domains along a line")
    p.add_argument("--axis", default="0", help="x-coordinate of the vertical line")
    p.add_argument("--centers", help="two heights 'y1,y2'")
    add("extract-reflection", cmd_extract, help="reflection polygon of a DF domain")
    p = add("double", cmd_double, needs_input=False, help="double a reflection polygon")
    p.add_argument("--input", "--group", dest="input")
    p.add_argument("--signature", help="genus-0 signature such as '0;2,3;1'")
    p = add("polygon-from-signature", cmd_polygon, needs_input=False,
            help="reflection polygon for a signature")
    p.add_argument("--signature", required=True)
    p = add("congruence", cmd_congruence, help="coset action and congruence test")
    p.add_argument("--oracle", choices=("generated", "integral-intersection"), default="generated")
    p.add_argument("--budget", type=int, default=1000)
    p.add_argument("--emit-perms", action="store_true")
    p.add_argument("--core", action="store_true", help="also compute the core index")
    add("kleinian-df", cmd_kleinian, help="mirror criterion in upper half-space")
    add("reproduce-paper", cmd_reproduce, needs_input=False, help="run every bundled check")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.depth < 1 or args.bits < 64:
        parser.error("--depth must be >= 1 and --bits >= 64")
    mp.prec = max(args.bits, en.PREC_BITS)
    try:
        status = args.func(args)
    except (ParseError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except UnverifiedDomain as exc:
        print(f"error: {exc}; try a larger --depth than {args.depth}", file=sys.stderr)
        return EXIT_UNVERIFIED
    except (InconsistentDomain, NoParabolicAtInfinity, ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    return status or EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
