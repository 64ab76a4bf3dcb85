"""Command-line front door.

Thin shell over the library: parsing builds a CommandConfig, dispatch
calls the same functions the API exposes and prints their results. Exit
codes: 0 success or verification pass, 1 verification failure (witnesses
go to stderr as JSON), 2 usage error. Numbers are parsed and printed in
plain decimal; ratios print as exact fractions like 3^7/2^11.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import IO

from .core import (
    DEFAULT_BUDGET,
    BudgetExceededError,
    jcf,
    jcf_closed_form,
    jcf_iter,
    syracuse_sequence,
)
from .cycles import ascendancy_bruteforce, ascendancy_closed, scan_cycle_equations, scan_to_csv
from .forms import (
    build_form_graph,
    filtered_ruler,
    graph_to_dot,
    graph_to_json,
    involvement,
    odd_form_of,
    parse_form,
    ruler_stats,
)
from .routes import (
    compare_with_catalog,
    enumerate_increasing_routes,
    enumerate_increasing_triplets,
    route_witness,
    routes_to_json,
)
from .verify import (
    BatchConfig,
    UnknownStatementError,
    batch_report_to_json,
    batch_verify,
    census_to_csv,
    flight_census,
    report_to_json,
    verify_statement,
)


@dataclass
class CommandConfig:
    """Parsed invocation; numeric fields are arbitrary-precision ints."""

    subcommand: str
    number: int | None = None
    iters: int | None = None
    alphas: tuple[int, ...] = ()
    count: int = 10
    closed: bool = False
    k_max: int = 200
    anchor: str | None = None
    index: int = 0
    bound: int = 10**6
    statement: str | None = None
    lo: int = 1
    hi: int | None = None
    workers: int = 1
    cutoff: str = "drop-below-start"
    sieve: bool = False
    i_max: int = 5
    alpha_max: int = 16
    m_max: int = 16
    fmt: str = "text"
    budget: int = DEFAULT_BUDGET
    seed: int = 0
    dot: bool = False
    discrepancies: bool = False


def _parse_range(text: str) -> tuple[int, int]:
    if ":" in text:
        lo_s, hi_s = text.split(":", 1)
        return int(lo_s), int(hi_s)
    return 1, int(text)


def _parse_alphas(text: str) -> tuple[int, ...]:
    return tuple(int(part) for part in text.split(","))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="syracuse",
        description="Exact-arithmetic exploration and verification of the 3x+1 dynamics.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_fmt(p: argparse.ArgumentParser, choices=("text", "json"), default="text") -> None:
        p.add_argument("--format", dest="fmt", choices=choices, default=default)

    p = sub.add_parser("seq", help="trajectory of N, halting at 1 or at the budget")
    p.add_argument("number", type=int)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    add_fmt(p)

    p = sub.add_parser("eta", help="odd-to-odd jump value(s) and consumed valuations")
    p.add_argument("number", type=int)
    p.add_argument("--iters", type=int, default=None)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    add_fmt(p)

    p = sub.add_parser("closed-form", help="evaluate the nested-jump closed form exactly")
    p.add_argument("number", type=int)
    p.add_argument("--alphas", type=_parse_alphas, required=True, metavar="A1,A2,...")
    add_fmt(p)

    p = sub.add_parser("ascend", help="first ascendants (jump preimages) of N")
    p.add_argument("number", type=int)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--closed", action="store_true", help="use the closed-form generator")
    p.add_argument("--k-max", dest="k_max", type=int, default=200)
    add_fmt(p)

    p = sub.add_parser("involved", help="involvement classification of N")
    p.add_argument("number", type=int)
    add_fmt(p)

    p = sub.add_parser("form", help="decomposition of an involved odd N into r+6(q+4k)")
    p.add_argument("number", type=int)
    add_fmt(p)

    p = sub.add_parser("graph", help="the validated form-transition graph")
    p.add_argument("--dot", action="store_true", help="shorthand for --format dot")
    p.add_argument("--validate-to", dest="k_max", type=int, default=200)
    add_fmt(p, choices=("text", "json", "dot"))

    p = sub.add_parser("triplets", help="all increasing (a,b,c) triplets")
    add_fmt(p)

    p = sub.add_parser("routes", help="increasing routes anchored at a form")
    p.add_argument("--anchor", required=True, metavar="FORM")
    p.add_argument(
        "--discrepancies", action="store_true", help="also print the catalog comparison"
    )
    add_fmt(p, choices=("text", "json", "dot"))

    p = sub.add_parser("route-witness", help="smallest start realizing an enumerated route")
    p.add_argument("--anchor", required=True, metavar="FORM")
    p.add_argument("--index", type=int, default=0)
    p.add_argument("--bound", type=int, default=10**6)
    add_fmt(p)

    p = sub.add_parser("equations", help="cycle-equation scan over a bounded grid")
    p.add_argument("--i-max", dest="i_max", type=int, default=5)
    p.add_argument("--alpha-max", dest="alpha_max", type=int, default=16)
    p.add_argument("--m-max", dest="m_max", type=int, default=16)
    add_fmt(p, choices=("csv", "json"), default="csv")

    p = sub.add_parser("verify", help="run one registered statement check")
    p.add_argument("--statement", required=True)
    p.add_argument("--range", dest="range_", type=_parse_range, default=None, metavar="[LO:]HI")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    add_fmt(p)

    p = sub.add_parser("batch", help="batch oneness verification over a range")
    p.add_argument("--range", dest="range_", type=_parse_range, required=True, metavar="[LO:]HI")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--cutoff", choices=("drop-below-start", "full-trace"), default="drop-below-start")
    p.add_argument("--sieve", choices=("on", "off"), default="off")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    add_fmt(p)

    p = sub.add_parser("census", help="flight-time histogram with counting-bound checks")
    p.add_argument("--range", dest="range_", type=_parse_range, required=True, metavar="[LO:]HI")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    add_fmt(p, choices=("csv", "json"), default="csv")

    p = sub.add_parser("ruler", help="halving densities over the kept involved evens")
    p.add_argument("--count", type=int, default=10**5)
    add_fmt(p)

    return parser


def parse_config(argv: list[str]) -> CommandConfig:
    ns = build_parser().parse_args(argv)
    cfg = CommandConfig(subcommand=ns.subcommand)
    for name in vars(ns):
        if name == "range_":
            if ns.range_ is not None:
                cfg.lo, cfg.hi = ns.range_
        elif name == "sieve":
            cfg.sieve = ns.sieve == "on"
        elif hasattr(cfg, name) and getattr(ns, name) is not None:
            setattr(cfg, name, getattr(ns, name))
    return cfg


def _color(text: str, code: str, stream: IO[str]) -> str:
    if os.environ.get("NO_COLOR") or not getattr(stream, "isatty", lambda: False)():
        return text
    return f"\x1b[{code}m{text}\x1b[0m"


def dispatch(cfg: CommandConfig, out: IO[str] = sys.stdout, err: IO[str] = sys.stderr) -> int:
    """Execute one parsed command; returns the process exit status."""
    try:
        return _dispatch(cfg, out, err)
    except BudgetExceededError as exc:
        print(json.dumps({"witnesses": [{"n": exc.start, "budget": exc.budget}]}), file=err)
        return 1
    except UnknownStatementError as exc:
        print(str(exc), file=err)
        return 2
    except (ValueError, KeyError, IndexError) as exc:
        print(f"error: {exc}", file=err)
        return 2


def _dispatch(cfg: CommandConfig, out: IO[str], err: IO[str]) -> int:
    cmd = cfg.subcommand
    if cmd == "seq":
        trace = syracuse_sequence(cfg.number, cfg.budget)
        if cfg.fmt == "json":
            print(
                json.dumps(
                    {
                        "start": trace.start,
                        "terms": list(trace.terms),
                        "flight_time": trace.flight_time,
                        "max_value": trace.max_value,
                        "halted": trace.halted,
                    }
                ),
                file=out,
            )
        else:
            print(" ".join(str(t) for t in trace.terms), file=out)
        return 0

    if cmd == "eta":
        if cfg.iters is None:
            value, alpha = jcf(cfg.number)
            if cfg.fmt == "json":
                print(json.dumps({"value": value, "alpha": alpha}), file=out)
            else:
                print(f"{value} {alpha}", file=out)
        else:
            exp = jcf_iter(cfg.number, cfg.iters, cfg.budget)
            if cfg.fmt == "json":
                print(
                    json.dumps(
                        {
                            "start": exp.start,
                            "values": list(exp.values),
                            "alphas": list(exp.alphas),
                            "halted": exp.halted,
                        }
                    ),
                    file=out,
                )
            else:
                for v, a in zip(exp.values, exp.alphas):
                    print(f"{v} {a}", file=out)
        return 0

    if cmd == "closed-form":
        value = jcf_closed_form(cfg.number, cfg.alphas)
        if cfg.fmt == "json":
            print(
                json.dumps({"numerator": value.numerator, "denominator": value.denominator}),
                file=out,
            )
        else:
            print(str(value), file=out)
        return 0

    if cmd == "ascend":
        ascendants = (
            ascendancy_closed(cfg.number, cfg.count)
            if cfg.closed
            else ascendancy_bruteforce(cfg.number, cfg.count, k_max=cfg.k_max)
        )
        if cfg.fmt == "json":
            print(
                json.dumps([{"value": a.value, "exponent": a.exponent} for a in ascendants]),
                file=out,
            )
        else:
            for a in ascendants:
                print(f"{a.value} {a.exponent}", file=out)
        return 0

    if cmd == "involved":
        ok, residue = involvement(cfg.number)
        if cfg.fmt == "json":
            print(json.dumps({"involved": ok, "residue_mod_6": residue}), file=out)
        else:
            print("true" if ok else "false", file=out)
        return 0

    if cmd == "form":
        d = odd_form_of(cfg.number)
        if cfg.fmt == "json":
            print(json.dumps({"r": d.r, "q": d.q, "k": d.k, "value": d.value}), file=out)
        else:
            print(f"{d.form.label()} k={d.k}", file=out)
        return 0

    if cmd == "graph":
        report = build_form_graph(validate_to=cfg.k_max)
        fmt = "dot" if cfg.dot else cfg.fmt
        if fmt == "dot":
            out.write(graph_to_dot(report.edges))
        elif fmt == "json":
            print(graph_to_json(report.edges), file=out)
        else:
            for e in report.edges:
                print(e.describe(), file=out)
            for note in report.divergences:
                print(f"divergence: {note}", file=out)
        return 0

    if cmd == "triplets":
        trips = enumerate_increasing_triplets()
        if cfg.fmt == "json":
            print(json.dumps([[t.a, t.b, t.c] for t in trips]), file=out)
        else:
            for t in trips:
                print(f"({t.a},{t.b},{t.c}) 3^{t.n}/2^{t.weight}", file=out)
        return 0

    if cmd == "routes":
        anchor = parse_form(cfg.anchor)
        routes = enumerate_increasing_routes(anchor)
        if cfg.fmt == "json":
            print(routes_to_json(routes), file=out)
        elif cfg.fmt == "dot":
            from .routes import routes_to_dot

            for route in routes:
                out.write(routes_to_dot(route))
        else:
            for route in routes:
                print(" -> ".join(route.labels()) + f"  [{route.variation_str()}]", file=out)
        if cfg.discrepancies:
            cmp = compare_with_catalog()
            for path, reason in cmp.unrealizable:
                print(f"catalog-unrealizable: {' -> '.join(path)} ({reason})", file=out)
            for route in cmp.extras:
                print(f"catalog-missing: {' -> '.join(route.labels())}", file=out)
        return 0

    if cmd == "route-witness":
        anchor = parse_form(cfg.anchor)
        routes = enumerate_increasing_routes(anchor)
        route = routes[cfg.index]
        witness = route_witness(route, bound=cfg.bound)
        if cfg.fmt == "json":
            print(json.dumps({"route": list(route.labels()), "witness": witness}), file=out)
        else:
            print("none" if witness is None else str(witness), file=out)
        return 0

    if cmd == "equations":
        result = scan_cycle_equations(cfg.i_max, cfg.alpha_max, cfg.m_max)
        if cfg.fmt == "json":
            print(
                json.dumps(
                    [
                        {
                            "class": h.instance.class_r,
                            "i": h.instance.i,
                            "alphas": list(h.instance.alphas),
                            "m": h.instance.m,
                            "n": h.n,
                            "value": h.value,
                            "genuine": h.genuine,
                            "reason": h.reason,
                        }
                        for h in result.hits
                    ]
                ),
                file=out,
            )
        else:
            out.write(scan_to_csv(result))
        return 0

    if cmd == "verify":
        params: dict = {}
        if cfg.hi is not None:
            params["n_max"] = cfg.hi
        if cfg.budget is not None and cfg.budget != DEFAULT_BUDGET:
            params["budget"] = cfg.budget
        if cfg.seed:
            params["seed"] = cfg.seed
        report = verify_statement(cfg.statement, **params)
        if cfg.fmt == "json":
            print(report_to_json(report), file=out)
        else:
            word = "PASS" if report.passed else "FAIL"
            word = _color(word, "32" if report.passed else "31", out)
            print(f"{word} statement {report.statement_id} ({report.elapsed:.2f}s)", file=out)
        if not report.passed:
            print(json.dumps({"witnesses": list(report.witnesses)}, default=str), file=err)
            return 1
        return 0

    if cmd == "batch":
        config = BatchConfig(
            lo=cfg.lo,
            hi=cfg.hi,
            workers=cfg.workers,
            cutoff=cfg.cutoff,
            sieve=cfg.sieve,
            budget=cfg.budget,
        )
        report = batch_verify(config)
        if cfg.fmt == "json":
            print(batch_report_to_json(report), file=out)
        else:
            print(
                f"verified {report.verified_count} in [{report.lo}, {report.hi}] "
                f"({report.cutoff}); max flight {report.max_flight_time} at "
                f"{report.max_flight_argmax}; max excursion {report.max_excursion} at "
                f"{report.max_excursion_argmax}; {report.throughput:,.0f}/s",
                file=out,
            )
        return 0

    if cmd == "census":
        report = flight_census(cfg.lo, cfg.hi, budget=cfg.budget)
        if cfg.fmt == "json":
            print(
                json.dumps(
                    {
                        "lo": report.lo,
                        "hi": report.hi,
                        "histogram": [list(pair) for pair in report.histogram],
                        "max_flight": report.max_flight,
                        "max_flight_argmax": report.max_flight_argmax,
                        "card_violations": list(report.card_violations),
                        "distinct_violations": list(report.distinct_violations),
                    }
                ),
                file=out,
            )
        else:
            out.write(census_to_csv(report))
        if report.card_violations or report.distinct_violations:
            print(
                json.dumps(
                    {
                        "witnesses": list(report.card_violations)
                        + list(report.distinct_violations)
                    }
                ),
                file=err,
            )
            return 1
        return 0

    if cmd == "ruler":
        if cfg.count < 1000:
            terms = list(filtered_ruler(cfg.count))
            if cfg.fmt == "json":
                print(json.dumps(terms), file=out)
            else:
                print(" ".join(str(t) for t in terms), file=out)
            return 0
        report = ruler_stats(cfg.count)
        if cfg.fmt == "json":
            print(
                json.dumps(
                    {
                        "count": report.count,
                        "ones": report.ones,
                        "twos": report.twos,
                        "fraction_ord1": str(report.fraction_ord1),
                        "fraction_ord2": str(report.fraction_ord2),
                    }
                ),
                file=out,
            )
        else:
            print(
                f"count={report.count} ord2=1: {report.ones} ({report.fraction_ord1}) "
                f"ord2=2: {report.twos} ({report.fraction_ord2})",
                file=out,
            )
        return 0

    raise ValueError(f"unknown subcommand {cmd!r}")


def main(argv: list[str] | None = None) -> int:
    args = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_config(args)
    except SystemExit as exc:
        return int(exc.code or 0)
    return dispatch(cfg)


if __name__ == "__main__":
    sys.exit(main())
