"""coverforge CLI – python -m coverforge <verb> [options]

Usage:
    python -m coverforge gb problems/triple.cover --order lex
    python -m coverforge nf problems/triple.cover --poly "z1^3"
    python -m coverforge syz problems/triple.cover --json
    python -m coverforge resolve problems/deg6.cover
    python -m coverforge eliminate problems/twisted.ideal --vars t
    python -m coverforge relations problems/triple.cover --json
    python -m coverforge relations problems/triple.cover --tabulated-names
    python -m coverforge fiber problems/deg6.cover --e 1,0,0,1 --c 2,0,0,3
    python -m coverforge catalog --all --report
    python -m coverforge verify deg6-ogr
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from coverforge.catalog import entry_names, run_all, run_entry, tabulated_renaming
from coverforge.catalog import degree6
from coverforge.config.loader import (
    catalog_settings,
    get_log_level,
    get_max_steps,
    get_order,
    get_output_dir,
    get_threads,
    load_config,
    load_env,
)
from coverforge.core.cover import cover_relations, verify_fiber
from coverforge.core.errors import CoverForgeError, HypothesisViolation, ParseError, PreconditionError
from coverforge.core.groebner import Ideal, buchberger, eliminate, normal_form
from coverforge.core.modules import syzygy_matrix, syzygy_module
from coverforge.core.output import (
    betti_model,
    certificate_model,
    cover_relations_model,
    dump_json,
    fiber_report_model,
    format_betti,
    format_matrix_block,
    format_polynomials,
    format_relations,
    format_tabulated,
    polynomial_list_model,
    render_report,
    save_report,
    syzygy_model,
    tabulated_relations_model,
)
from coverforge.core.parser import ProblemFile, load_problem, parse_point, parse_polynomial, parse_problem
from coverforge.core.polyring import TermOrder, format_rational
from coverforge.core.resolution import free_resolution

log = logging.getLogger("coverforge")

__all__ = ["build_parser", "main", "parse_problem"]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coverforge",
        description="Exact Gröbner bases, syzygies and cover-homomorphism relations",
    )
    subparsers = parser.add_subparsers(dest="command")

    def with_file(name: str, help_text: str) -> argparse.ArgumentParser:
        sub = subparsers.add_parser(name, help=help_text)
        sub.add_argument("file", type=Path, help="problem file")
        sub.add_argument("--json", action="store_true", help="emit JSON on stdout")
        return sub

    def with_order(sub: argparse.ArgumentParser) -> None:
        sub.add_argument("--order", default=None,
                         help="term order: degrevlex, lex or block:k (default: the file's order)")

    gb = with_file("gb", "Reduced Gröbner basis")
    with_order(gb)

    nf = with_file("nf", "Normal form modulo the ideal")
    with_order(nf)
    nf.add_argument("--poly", required=True, help="polynomial to reduce")

    with_file("syz", "First syzygies of the generators")

    resolve = with_file("resolve", "Minimal graded free resolution and Betti table")
    with_order(resolve)
    resolve.add_argument("--max-steps", type=int, default=None)

    elim = with_file("eliminate", "Elimination ideal")
    with_order(elim)
    elim.add_argument("--vars", required=True, help="variables to eliminate, comma separated")

    relations = with_file("relations", "Cover relations: N, D, I_q and the cubic check")
    relations.add_argument("--tabulated-names", action="store_true",
                           help="rename into the tabulated parameters of a known family, D sign flipped")

    fiber = with_file("fiber", "Specialize the cover family at a point and check flatness")
    fiber.add_argument("--point", default=None, help="free c values, e.g. c01=1,c11=-2")
    fiber.add_argument("--e", default=None, help="linear section e0,e1,e2,e3 (degree-6 layout)")
    fiber.add_argument("--c", default=None, help="linear section c0,c1,c2,c3 (degree-6 layout)")
    fiber.add_argument("--max-steps", type=int, default=None)

    catalog = subparsers.add_parser("catalog", help="Run catalog entries")
    catalog.add_argument("names", nargs="*", help="entries to run (default: all)")
    catalog.add_argument("--all", action="store_true", help="run every entry")
    catalog.add_argument("--list", action="store_true", help="list entry names and exit")
    catalog.add_argument("--report", nargs="?", const="", default=None, type=str,
                         help="write report.txt and summary.csv (default dir from config)")
    catalog.add_argument("--json", action="store_true")

    verify = subparsers.add_parser("verify", help="Run one catalog entry and fail on any mismatch")
    verify.add_argument("name", help="entry name, e.g. deg6-ogr")
    verify.add_argument("--json", action="store_true")
    return parser


def _status(message: str) -> None:
    print(f"[coverforge] {message}", file=sys.stderr)


def _ideal(problem: ProblemFile, order: Optional[str], cfg: dict) -> Ideal:
    """--order, else the file's declared order, else engine.order."""
    ideal = problem.to_ideal()
    if order is None and not problem.explicit_order:
        order = get_order(cfg)
    if order:
        ideal = ideal.with_order(TermOrder.parse(order))
    return ideal


def _cover(problem: ProblemFile):
    if problem.kind != "cover":
        raise HypothesisViolation(f"{problem.source}: generators must be named q0, q1, ... for a cover problem")
    return problem.to_cover_problem()


# ── Verbs ─────────────────────────────────────────────────────────────────────

def cmd_gb(args: argparse.Namespace, cfg: dict) -> int:
    ideal = _ideal(load_problem(args.file), args.order, cfg)
    basis = buchberger(ideal)
    _status(f"{len(basis)} basis elements ({ideal.ring.order})")
    if args.json:
        sys.stdout.write(dump_json(polynomial_list_model(ideal.ring, list(basis))))
    else:
        print(format_polynomials(list(basis)))
    return 0


def cmd_nf(args: argparse.Namespace, cfg: dict) -> int:
    ideal = _ideal(load_problem(args.file), args.order, cfg)
    f = parse_polynomial(args.poly, ideal.ring)
    remainder = normal_form(f, ideal.groebner())
    if args.json:
        sys.stdout.write(dump_json(polynomial_list_model(ideal.ring, [remainder])))
    else:
        print(remainder)
    return 0


def cmd_syz(args: argparse.Namespace, cfg: dict) -> int:
    ideal = load_problem(args.file).to_ideal()
    gens = list(ideal.generators)
    syz = syzygy_module(gens)
    _status(f"{len(syz)} minimal syzygies")
    if args.json:
        sys.stdout.write(dump_json(syzygy_model(ideal.ring, gens, syz)))
    else:
        print(format_matrix_block("syzygies (columns)", syzygy_matrix(gens, syz)))
    return 0


def cmd_resolve(args: argparse.Namespace, cfg: dict) -> int:
    ideal = _ideal(load_problem(args.file), args.order, cfg)
    steps = args.max_steps if args.max_steps is not None else get_max_steps(cfg)
    res = free_resolution(ideal, steps)
    _status(f"betti {','.join(map(str, res.betti))}")
    if args.json:
        sys.stdout.write(dump_json(betti_model(res)))
    else:
        print(format_betti(res))
    return 0


def cmd_eliminate(args: argparse.Namespace, cfg: dict) -> int:
    ideal = _ideal(load_problem(args.file), args.order, cfg)
    names = [n for n in args.vars.replace(",", " ").split() if n]
    if not names:
        raise PreconditionError("--vars names no variables")
    result = eliminate(ideal, names)
    if args.json:
        sys.stdout.write(dump_json(polynomial_list_model(result.ring, list(result.generators))))
    else:
        print(format_polynomials(list(result.generators)))
    return 0


def cmd_relations(args: argparse.Namespace, cfg: dict) -> int:
    problem = _cover(load_problem(args.file))
    _status(f"solving {problem.name}: {problem.m} generators in {', '.join(problem.fiber_vars)}")
    rel = cover_relations(problem)
    if args.tabulated_names:
        model = tabulated_relations_model(rel, tabulated_renaming(rel))
        if args.json:
            sys.stdout.write(dump_json(model))
        else:
            print(format_tabulated(model))
    elif args.json:
        sys.stdout.write(dump_json(cover_relations_model(rel)))
    else:
        print(format_relations(rel))
    return 0


def _fiber_point(args: argparse.Namespace, rel) -> dict:
    if args.point is not None:
        if args.e is not None or args.c is not None:
            raise PreconditionError("give either --point or --e/--c, not both")
        return parse_point(args.point, rel.free_c)
    if args.e is None or args.c is None:
        raise PreconditionError("fiber needs --point, or both --e and --c")
    if set(rel.free_c) != set(degree6.RENAMING):
        raise PreconditionError("--e/--c apply to the degree-6 problem with its trace-free conditions")
    e = list(parse_point(args.e, ["e0", "e1", "e2", "e3"]).values())
    c = list(parse_point(args.c, ["c0", "c1", "c2", "c3"]).values())
    return degree6.section_point(e, c)


def cmd_fiber(args: argparse.Namespace, cfg: dict) -> int:
    problem = _cover(load_problem(args.file))
    rel = cover_relations(problem)
    point = _fiber_point(args, rel)
    steps = args.max_steps if args.max_steps is not None else get_max_steps(cfg)
    report = verify_fiber(problem, rel, point, steps)
    if args.json:
        sys.stdout.write(dump_json(fiber_report_model(report)))
    else:
        print("c: " + ", ".join(f"{k}={format_rational(v)}" for k, v in report.c_point.items()))
        print(f"points: {report.dimension}")
        print("betti: " + ",".join(map(str, report.betti)))
        print("reference betti: " + ",".join(map(str, report.reference_betti)))
        print(f"initial ideal matches: {str(report.initial_matches).lower()}")
        print(f"ok: {str(report.ok).lower()}")
    return 0 if report.ok else 3


def cmd_catalog(args: argparse.Namespace, cfg: dict) -> int:
    if args.list:
        print("\n".join(entry_names()))
        return 0
    names = None if args.all or not args.names else args.names
    threads = get_threads(cfg)
    _status(f"running {len(names) if names else len(entry_names())} catalog entries on {threads} thread(s)")
    certificates = run_all(catalog_settings(cfg), threads=threads, names=names)
    for cert in certificates:
        _status(f"{cert.name}: {'ok' if cert.ok else 'FAILED'} ({len(cert.checks)} checks)")
    models = [certificate_model(c) for c in certificates]
    if args.json:
        sys.stdout.write("[\n" + ",\n".join(dump_json(m).rstrip("\n") for m in models) + "\n]\n")
    else:
        print(render_report(models), end="")
    if args.report is not None:
        out_dir = Path(args.report) if args.report else get_output_dir(cfg)
        for path in save_report(models, out_dir):
            _status(f"wrote {path}")
    return 0 if all(c.ok for c in certificates) else 3


def cmd_verify(args: argparse.Namespace, cfg: dict) -> int:
    cert = run_entry(args.name, catalog_settings(cfg))
    model = certificate_model(cert)
    if args.json:
        sys.stdout.write(dump_json(model))
    else:
        print(render_report([model]), end="")
    cert.require()
    return 0


COMMANDS = {
    "gb": cmd_gb,
    "nf": cmd_nf,
    "syz": cmd_syz,
    "resolve": cmd_resolve,
    "eliminate": cmd_eliminate,
    "relations": cmd_relations,
    "fiber": cmd_fiber,
    "catalog": cmd_catalog,
    "verify": cmd_verify,
}


def main(argv: Optional[List[str]] = None) -> int:
    load_env()
    parser = build_parser()
    args = parser.parse_args(argv)
    if not args.command:
        parser.print_help()
        return 0
    try:
        cfg = load_config()
        logging.basicConfig(level=get_log_level(cfg), format="[coverforge] %(levelname)s %(name)s: %(message)s")
        return COMMANDS[args.command](args, cfg)
    except ParseError as exc:
        _status(f"parse error: {exc}")
        return exc.exit_code
    except CoverForgeError as exc:
        _status(f"error: {exc}")
        return exc.exit_code
    except FileNotFoundError as exc:
        _status(f"error: {exc}")
        return PreconditionError.exit_code
    except Exception as exc:  # noqa: BLE001
        log.exception("unexpected failure")
        _status(f"internal error: {exc}")
        return 4


if __name__ == "__main__":
    sys.exit(main())
