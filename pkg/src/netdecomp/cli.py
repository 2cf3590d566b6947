"""Command-line interface.

Exit status: 0 for an affirmative answer (or plain success), 1 for a
negative verdict, 2 for any error.  ``--json`` switches every verb to
machine-readable output on stdout.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .automata import AutomatonError
from .dot import net_to_dot, nfa_to_dot
from .engine import MINIMIZE_MODES, check_reach, eval_nfa
from .expr import ExprError, eval_net, to_text, width
from .families import (
    COMPONENTS,
    FAMILIES,
    FamilySpec,
    component,
    decomp_family,
    gen_family,
)
from .iso import iso_check
from .net import NetError, dumps, format_connection, to_dict
from .problems import ProblemError, load_problem, problem_to_dict, resolve_net
from .semantics import reach_monolithic
from .structure import (
    DIRECTIONS,
    OrientedPartition,
    dimension,
    format_network,
    lower_bound,
    min_pure_split,
    network,
    smallest_basis,
)

__all__ = ["build_parser", "main"]


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _write(path, content: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(content)
    else:
        Path(path).write_text(content)


def _params(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise NetError(
            f"parameters must be comma-separated integers, got {text!r}"
        ) from None


def _names(text) -> list:
    return [p.strip() for p in (text or "").split(",") if p.strip()]


def _spec(args) -> FamilySpec:
    params = _params(args.params)
    if not 1 <= len(params) <= 2:
        raise NetError("give one or two parameters, e.g. --params 4 or --params 2,3")
    spec = FamilySpec(args.family, *params)
    gen_family(spec)  # validates
    return spec


def _component_refs(env) -> dict:
    refs = {}
    for var, net in env.items():
        for name in COMPONENTS:
            if component(name) == net:
                refs[var] = f"component:{name}"
                break
    return refs


# ----------------------------------------------------------------- verbs


def cmd_gen(args) -> int:
    if args.component:
        net = component(args.component)
        _write(args.out, dumps(net, indent=2) + "\n")
        return 0
    if not args.family:
        raise NetError("gen needs --family or --component")
    spec = _spec(args)
    if args.problem:
        d = decomp_family(spec)
        problem = d.problem(_names(args.initial), _names(args.final))
        payload = problem_to_dict(problem, _component_refs(d.env))
        _write(args.out, json.dumps(payload, indent=2) + "\n")
        return 0
    _write(args.out, dumps(gen_family(spec), indent=2) + "\n")
    return 0


def cmd_eval(args) -> int:
    problem = load_problem(args.problem)
    net = eval_net(problem.expr, problem.env)
    _write(args.out, dumps(net, indent=2) + "\n")
    return 0


def cmd_reach(args) -> int:
    problem = load_problem(args.problem)
    if args.monolithic:
        net = eval_net(problem.expr, problem.env)
        verdict = reach_monolithic(
            net, problem.to_global("initial"), problem.to_global("final")
        )
        stats = None
    else:
        verdict, stats = check_reach(
            problem, memo=not args.no_memo, minimize_mode=args.minimize_mode
        )
    word = "REACHABLE" if verdict else "UNREACHABLE"
    payload = {"reachable": verdict}
    text = word
    if args.stats and stats is not None:
        payload["stats"] = stats.to_dict()
        text += "\n" + "\n".join(f"{k}: {v}" for k, v in stats.to_dict().items())
    _emit(args, payload, text)
    return 0 if verdict else 1


def cmd_width(args) -> int:
    problem = load_problem(args.problem)
    k = width(problem.expr, problem.env)
    _emit(args, {"width": k, "expr": to_text(problem.expr)}, str(k))
    return 0


def _net_and_partition(args):
    net = resolve_net(args.net)
    part = OrientedPartition.parse(args.partition)
    return net, part


def _directions(args) -> tuple:
    return DIRECTIONS if args.direction == "both" else (args.direction,)


def cmd_network(args) -> int:
    net, part = _net_and_partition(args)
    payload = {}
    lines = []
    for d in _directions(args):
        nw = network(net, part, d)
        payload[d] = sorted(format_connection(c) for c in nw)
        lines.append(f"{d}: {format_network(nw)}")
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_dim(args) -> int:
    net, part = _net_and_partition(args)
    payload = {}
    lines = []
    for d in _directions(args):
        nw = network(net, part, d)
        basis = smallest_basis(nw)
        payload[d] = {
            "dimension": len(basis),
            "basis": [format_connection(b) for b in basis],
        }
        lines.append(f"{d}: {len(basis)}")
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_bound(args) -> int:
    net, part = _net_and_partition(args)
    k = lower_bound(net, part)
    dims = {d: dimension(network(net, part, d)) for d in DIRECTIONS}
    _emit(args, {"lower_bound": k, "dimensions": dims}, str(k))
    return 0


def cmd_split(args) -> int:
    net, part = _net_and_partition(args)
    result = min_pure_split(
        net, part, args.max_n, respect_contention=not args.ignore_contention
    )
    if result is None:
        _emit(args, {"n": None}, f"NONE (no pure split with n <= {args.max_n})")
        return 1
    if args.out_left:
        Path(args.out_left).write_text(dumps(result.nl, indent=2) + "\n")
    if args.out_right:
        Path(args.out_right).write_text(dumps(result.nr, indent=2) + "\n")
    payload = {
        "n": result.n,
        "left": to_dict(result.nl),
        "right": to_dict(result.nr),
        "transition_map": result.iso.transition_map,
    }
    _emit(args, payload, str(result.n))
    return 0


def cmd_iso(args) -> int:
    a = resolve_net(args.a)
    b = resolve_net(args.b)
    iso = iso_check(a, b, respect_contention=not args.ignore_contention)
    if iso is None:
        _emit(args, {"isomorphic": False}, "NOT ISOMORPHIC")
        return 1
    payload = {
        "isomorphic": True,
        "place_map": iso.place_map,
        "transition_map": iso.transition_map,
    }
    _emit(args, payload, "ISOMORPHIC")
    return 0


def cmd_dot(args) -> int:
    if bool(args.net) == bool(args.problem):
        raise NetError("dot needs exactly one of --net or --problem")
    if args.net:
        text = net_to_dot(resolve_net(args.net), show_contention=args.contention)
    else:
        problem = load_problem(args.problem)
        nfa, _ = eval_nfa(problem)
        text = nfa_to_dot(nfa)
    if args.json:
        print(json.dumps({"dot": text}))
    else:
        _write(args.out, text)
    return 0


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    p = argparse.ArgumentParser(
        prog="netdecomp",
        description="Compositional reachability and decomposition analysis for nets with boundaries.",
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="verb", required=True)

    g = sub.add_parser(
        "gen", parents=[common], help="write a family net, component or problem"
    )
    g.add_argument("--family", choices=FAMILIES)
    g.add_argument("--params", default="1", help="n or n,k")
    g.add_argument("--component", choices=COMPONENTS)
    g.add_argument(
        "--problem",
        action="store_true",
        help="emit the library decomposition as a problem file",
    )
    g.add_argument(
        "--initial", help="comma-separated places of the generated net (with --problem)"
    )
    g.add_argument(
        "--final", help="comma-separated places of the generated net (with --problem)"
    )
    g.add_argument("--out", help="output file (default stdout)")
    g.set_defaults(func=cmd_gen)

    e = sub.add_parser(
        "eval", parents=[common], help="evaluate a problem's expression to a net"
    )
    e.add_argument("--problem", required=True)
    e.add_argument("--out")
    e.set_defaults(func=cmd_eval)

    r = sub.add_parser(
        "reach", parents=[common], help="decide reachability compositionally"
    )
    r.add_argument("--problem", required=True)
    r.add_argument("--stats", action="store_true")
    r.add_argument(
        "--no-memo", action="store_true", help="disable sharing of identical subterms"
    )
    r.add_argument("--minimize-mode", choices=MINIMIZE_MODES, default="every")
    r.add_argument(
        "--monolithic", action="store_true", help="explore the evaluated net directly"
    )
    r.set_defaults(func=cmd_reach)

    w = sub.add_parser(
        "width", parents=[common], help="decomposition width of a problem's expression"
    )
    w.add_argument("--problem", required=True)
    w.set_defaults(func=cmd_width)

    for verb, func, text in (
        ("network", cmd_network, "networks of an oriented partition"),
        ("dim", cmd_dim, "dimension of the networks"),
        ("bound", cmd_bound, "lower bound on the shared boundary of a pure split"),
        ("split", cmd_split, "smallest pure split realising a partition"),
    ):
        s = sub.add_parser(verb, parents=[common], help=text)
        s.add_argument(
            "--net",
            required=True,
            help="net file or family:/component:/bundled: reference",
        )
        s.add_argument("--partition", required=True, help='e.g. "0,1|2,3"')
        if verb in ("network", "dim"):
            s.add_argument(
                "--direction", choices=DIRECTIONS + ("both",), default="both"
            )
        if verb == "split":
            s.add_argument("--max-n", type=int, default=4)
            s.add_argument("--ignore-contention", action="store_true")
            s.add_argument("--out-left")
            s.add_argument("--out-right")
        s.set_defaults(func=func)

    i = sub.add_parser("iso", parents=[common], help="isomorphism check of two nets")
    i.add_argument("--a", required=True)
    i.add_argument("--b", required=True)
    i.add_argument("--ignore-contention", action="store_true")
    i.set_defaults(func=cmd_iso)

    d = sub.add_parser(
        "dot",
        parents=[common],
        help="Graphviz export of a net or a problem's automaton",
    )
    d.add_argument("--net")
    d.add_argument("--problem")
    d.add_argument("--contention", action="store_true", help="draw contention pairs")
    d.add_argument("--out")
    d.set_defaults(func=cmd_dot)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ProblemError, ExprError, NetError, AutomatonError) as exc:
        if getattr(args, "json", False):
            print(json.dumps({"error": str(exc)}))
        print(f"netdecomp {args.verb}: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"netdecomp {args.verb}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
