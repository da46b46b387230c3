"""Command-line front end.

Inputs are edge-list files or inline generator specs such as
``gen:cycle:9`` or ``gen:double_star:2,2``. The first stdout line(s) carry
the result; ``--verbose`` adds ``key=value`` report lines and ``--json``
replaces everything with one JSON record.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Sequence

from . import __version__
from .engine import GameConfig, Player, gmb, gmb_prime, solve
from .formulas import (
    cycle_values,
    erdos_selfridge_check,
    find_dominating_matching,
    gamma2_witness,
    tree_values,
    union_bounds,
)
from .graph import Graph, GraphError, ResourceLimitError, domination_stats, parse_edge_list, parse_generator
from .residual import reduce_and_solve
from .strategies import (
    FirstAvailableStrategy,
    OptimalStrategy,
    RandomStrategy,
    StallerCycleStrategy,
    StallerTreeStrategy,
    Strategy,
    pairing_dominator_strategy,
    simulate,
)
from .verify import SUITES, run_suite

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY = 2
EXIT_RESOURCE = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def load_graph(spec: str) -> Graph:
    if spec.startswith("gen:"):
        return parse_generator(spec)
    path = Path(spec)
    if not path.exists():
        raise UsageError(f"no such file: {spec}")
    return parse_edge_list(path.read_text())


def _vertex_set(g: Graph, text: str | None) -> int:
    if not text:
        return 0
    mask = 0
    for name in text.split(","):
        mask |= 1 << g.vertex(name.strip())
    return mask


def _describe(g: Graph, original: Graph) -> str:
    if g.n == 0:
        return "empty"
    if g.n == 1:
        return "K1"
    if g.n == original.n:
        return "self"
    return f"order{g.n}"


def cmd_solve(args: argparse.Namespace) -> tuple[list[str], dict]:
    g = load_graph(args.input)
    passes = set(args.allow_pass or [])
    cfg = GameConfig(
        g,
        Player.parse(args.first),
        _vertex_set(g, args.pre_dominated),
        staller_may_pass="s" in passes,
        dominator_may_pass="d" in passes,
    )
    value = solve(cfg, override_cap=args.override_cap)
    return [str(value)], {"value": str(value), "first": args.first, "n": g.n, "m": g.m}


def cmd_formula(args: argparse.Namespace) -> tuple[list[str], dict]:
    g = load_graph(args.input)
    which = args.which
    if which == "tree":
        d, s = tree_values(g)
        return [f"gmb={d} gmb'={s}"], {"gmb": str(d), "gmb_prime": str(s)}
    if which == "cycle":
        if not (g.n >= 3 and g.is_connected() and all(g.degree(v) == 2 for v in range(g.n))):
            raise GraphError("input is not a cycle")
        d, s = cycle_values(g.n)
        return [f"gmb={d} gmb'={s}"], {"gmb": str(d), "gmb_prime": str(s)}
    if which == "union":
        if not args.other:
            raise UsageError("--which union needs a second input")
        h = load_graph(args.other)
        b = union_bounds(gmb(g), gmb_prime(g), gmb(h), gmb_prime(h))
        fields = {"d_low": b.d_low, "d_high": b.d_high, "s_low": b.s_low, "s_high": b.s_high}
        return [" ".join(f"{k}={v}" for k, v in fields.items())], {k: str(v) for k, v in fields.items()}
    if which == "es":
        crit = erdos_selfridge_check(g)
        stats = domination_stats(g)
        line = f"criterion={str(crit).lower()} gamma={stats.gamma}"
        return [line], {"criterion": crit, "gamma": stats.gamma, "num_gamma_sets": stats.num_gamma_sets}
    if which == "gamma2":
        w = gamma2_witness(g)
        shown = "none" if w is None else (g.label(w) or str(w))
        return [f"witness={shown}"], {"witness": w}
    if which == "matching":
        x = find_dominating_matching(g)
        shown = "none" if x is None else ",".join(f"{u}-{v}" for u, v in x.pairs)
        return [f"matching={shown}"], {"matching": None if x is None else [list(p) for p in x.pairs]}
    raise UsageError(f"unknown formula {which!r}")


def cmd_residual(args: argparse.Namespace) -> tuple[list[str], dict]:
    g = load_graph(args.input)
    red = reduce_and_solve(g)
    dec = red.decomposition
    desc = _describe(dec.residual, g)
    line = (
        f"residual={desc}, pairs={len(dec.removed_pairs)}, "
        f"sgame={red.sgame_exact}, dgame=[{red.dgame_low},{red.dgame_high}]"
    )
    removed = ",".join(f"{u}-{v}" for u, v in dec.removed_pairs) or "none"
    lines = [line, f"residual_order={dec.residual.n} removed={removed}"]
    data = {
        "residual": desc,
        "residual_order": dec.residual.n,
        "removed_pairs": [list(p) for p in dec.removed_pairs],
        "sgame": str(red.sgame_exact),
        "dgame_low": str(red.dgame_low),
        "dgame_high": str(red.dgame_high),
    }
    return lines, data


def cmd_verify(args: argparse.Namespace) -> tuple[list[str], dict]:
    names = SUITES if args.suite == "all" else (args.suite,)
    lines = []
    checks = []
    for name in names:
        for chk in run_suite(name, args.max_n, args.seed):
            checks.append(chk)
            lines.append(f"suite={name} " + chk.summary())
            for failure in chk.failures[: args.show]:
                lines.append("# counterexample: " + failure.replace("\n", "\n# "))
    ok = all(c.ok for c in checks)
    lines.append(f"result={'pass' if ok else 'fail'}")
    data = {
        "result": "pass" if ok else "fail",
        "checks": [
            {"name": c.name, "instances": c.instances, "failures": c.failures} for c in checks
        ],
    }
    return lines, data


def _make_strategy(name: str, role: Player, g: Graph, args: argparse.Namespace) -> Strategy:
    if name == "optimal":
        return OptimalStrategy()
    if name == "random":
        return RandomStrategy(args.seed)
    if name == "first":
        return FirstAvailableStrategy()
    if name == "pairing" and role is Player.DOMINATOR:
        x = find_dominating_matching(g)
        if x is None:
            raise UsageError("graph has no dominating matching for the pairing strategy")
        return pairing_dominator_strategy(x)
    if name == "tree" and role is Player.STALLER:
        return StallerTreeStrategy(g, g.vertex(args.target) if args.target else 0)
    if name == "cycle" and role is Player.STALLER:
        return StallerCycleStrategy(g.n, Player.parse(args.first))
    raise UsageError(f"strategy {name!r} is not available for {role.name.lower()}")


def cmd_simulate(args: argparse.Namespace) -> tuple[list[str], dict]:
    g = load_graph(args.input)
    cfg = GameConfig(g, Player.parse(args.first))
    dom = _make_strategy(args.dom, Player.DOMINATOR, g, args)
    sta = _make_strategy(args.sta, Player.STALLER, g, args)
    rec = simulate(cfg, dom, sta)
    data = {
        "moves": [[p.value, v] for p, v in rec.moves],
        "winner": rec.winner.value,
        "dominator_moves": rec.dominator_moves,
        "forfeit": rec.forfeit.value if rec.forfeit else None,
        "fallbacks": rec.fallbacks,
    }
    return rec.to_text().splitlines(), data


def cmd_gen(args: argparse.Namespace) -> tuple[list[str], dict]:
    g = load_graph(args.input)
    return g.to_edge_list().splitlines(), {"n": g.n, "m": g.m, "edges": [list(e) for e in g.edges()]}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON record")
    common.add_argument("-v", "--verbose", action="store_true", help="add key=value report lines")

    parser = _Parser(prog="mbdom", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", parents=[common], help="exact game value")
    p.add_argument("input")
    p.add_argument("--first", choices=("d", "s"), default="d")
    p.add_argument("--pre-dominated", help="comma-separated vertices (indices or labels)")
    p.add_argument("--allow-pass", choices=("d", "s"), action="append")
    p.add_argument("--override-cap", action="store_true", help="solve above the vertex cap")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("formula", parents=[common], help="closed forms and criteria")
    p.add_argument("input")
    p.add_argument("other", nargs="?", help="second graph for --which union")
    p.add_argument(
        "--which", required=True, choices=("tree", "cycle", "union", "es", "gamma2", "matching")
    )
    p.set_defaults(func=cmd_formula)

    p = sub.add_parser("residual", parents=[common], help="residual graph and derived values")
    p.add_argument("input")
    p.set_defaults(func=cmd_residual)

    p = sub.add_parser("verify", parents=[common], help="run property suites")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--max-n", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--show", type=int, default=3, help="counterexamples printed per check")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("simulate", parents=[common], help="play two strategies against each other")
    p.add_argument("input")
    p.add_argument("--dom", default="optimal", choices=("optimal", "pairing", "random", "first"))
    p.add_argument("--sta", default="optimal", choices=("optimal", "tree", "cycle", "random", "first"))
    p.add_argument("--first", choices=("d", "s"), default="d")
    p.add_argument("--target", help="final Staller vertex for --sta tree")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("gen", parents=[common], help="print a generated graph as an edge list")
    p.add_argument("input")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        lines, data = args.func(args)
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (GraphError, UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    elapsed_ms = round((time.perf_counter() - start) * 1000, 3)
    failed = args.command == "verify" and data["result"] != "pass"
    if args.json:
        record = {"command": args.command, "input": getattr(args, "input", None), **data}
        record["elapsed_ms"] = elapsed_ms
        print(json.dumps(record, sort_keys=True, default=str))
    else:
        print("\n".join(lines))
        if args.verbose:
            print(f"command={args.command}")
            if getattr(args, "input", None):
                print(f"input={args.input}")
            print(f"elapsed_ms={elapsed_ms}")
    return EXIT_VERIFY if failed else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
