"""Compositional reachability: evaluate a wiring expression to an automaton
bottom-up, one leaf net at a time, sharing work between identical subterms."""

from __future__ import annotations

import sys
from collections.abc import Mapping
from dataclasses import asdict, dataclass, field

from . import automata
from .automata import BoundaryNfa
from .expr import Expr, ExprError, Seq, Var, boundaries, leaves, path_prefix, to_text
from .net import NetError, dumps
from .semantics import build_nfa

__all__ = [
    "MINIMIZE_MODES",
    "EvalStats",
    "ReachabilityProblem",
    "check_reach",
    "eval_nfa",
]

MINIMIZE_MODES = ("every", "composite")


@dataclass(frozen=True)
class ReachabilityProblem:
    """``initial``/``final`` map leaf paths to markings of that leaf's net;
    leaves that are not mentioned start (or end) empty."""

    expr: Expr
    env: Mapping
    initial: Mapping = field(default_factory=dict)
    final: Mapping = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(
            self, "initial", {p: frozenset(m) for p, m in self.initial.items()}
        )
        object.__setattr__(
            self, "final", {p: frozenset(m) for p, m in self.final.items()}
        )
        self.validate()

    def validate(self) -> None:
        leaf_nets = {}
        for path, name in leaves(self.expr):
            if name not in self.env:
                raise ExprError(f"unbound variable {name!r}")
            leaf_nets[path] = self.env[name]
        for which, markings in (("initial", self.initial), ("final", self.final)):
            for path, marking in markings.items():
                if path not in leaf_nets:
                    raise ExprError(f"{which} marking names unknown leaf path {path!r}")
                missing = marking - set(leaf_nets[path].places)
                if missing:
                    raise NetError(
                        f"{which} marking of leaf {path!r} references unknown places {sorted(missing)}"
                    )

    def leaf_marking(self, which: str, path: str) -> frozenset:
        return getattr(self, which).get(path, frozenset())

    @classmethod
    def from_global(
        cls, expr: Expr, env: Mapping, initial, final
    ) -> ReachabilityProblem:
        """Split markings of the evaluated net (path-prefixed place names) per leaf."""
        owner = {}
        for path, name in leaves(expr):
            if name not in env:
                raise ExprError(f"unbound variable {name!r}")
            prefix = path_prefix(path)
            for p in env[name].places:
                owner[prefix + p] = (path, p)

        def split(marking):
            out: dict = {}
            for g in marking:
                try:
                    path, p = owner[g]
                except KeyError:
                    raise NetError(f"marking references unknown place {g!r}") from None
                out.setdefault(path, set()).add(p)
            return out

        return cls(expr, env, split(initial), split(final))

    def to_global(self, which: str) -> frozenset:
        out = set()
        for path, marking in getattr(self, which).items():
            prefix = path_prefix(path)
            out |= {prefix + p for p in marking}
        return frozenset(out)


@dataclass
class EvalStats:
    nodes: int = 0
    distinct_subterms: int = 0
    nfa_builds: int = 0
    cache_hits: int = 0
    max_intermediate_states: int = 0
    max_raw_states: int = 0
    max_intermediate_boundary: int = 0

    def to_dict(self) -> dict:
        return asdict(self)


def eval_nfa(
    problem: ReachabilityProblem,
    memo: bool = True,
    minimize_mode: str = "every",
    backend: str | None = None,
) -> tuple:
    """Automaton of the whole problem plus evaluation statistics.

    ``minimize_mode="every"`` canonicalises (ε-close, determinize, minimize)
    after every node; ``"composite"`` feeds leaves in raw and canonicalises
    only composite nodes.
    """
    if minimize_mode not in MINIMIZE_MODES:
        raise ValueError(f"minimize_mode must be one of {MINIMIZE_MODES}")
    env = problem.env
    boundaries(problem.expr, env)
    stats = EvalStats()
    serial = {}
    interned: dict = {}
    cache: dict = {}

    def intern(key) -> int:
        return interned.setdefault(key, len(interned))

    def record(raw: BoundaryNfa, out: BoundaryNfa) -> None:
        stats.max_raw_states = max(stats.max_raw_states, raw.n_states)
        stats.max_intermediate_states = max(stats.max_intermediate_states, out.n_states)
        stats.max_intermediate_boundary = max(
            stats.max_intermediate_boundary, out.left, out.right
        )

    def leaf(path: str, name: str) -> tuple:
        net = env[name]
        if name not in serial:
            serial[name] = dumps(net)
        init = problem.leaf_marking("initial", path)
        fin = problem.leaf_marking("final", path)
        key = intern(("leaf", serial[name], tuple(sorted(init)), tuple(sorted(fin))))
        stats.nodes += 1
        if memo and key in cache:
            stats.cache_hits += 1
            return key, cache[key]
        raw = build_nfa(net, init, [fin], backend)
        out = automata.canonical(raw) if minimize_mode == "every" else raw
        stats.nfa_builds += 1
        record(raw, out)
        if memo:
            cache[key] = out
        return key, out

    def go(x: Expr, path: str) -> tuple:
        if isinstance(x, Var):
            return leaf(path, x.name)
        kl, a = go(x.left, path + "L")
        kr, b = go(x.right, path + "R")
        op = "seq" if isinstance(x, Seq) else "tensor"
        key = intern((op, kl, kr))
        stats.nodes += 1
        if memo and key in cache:
            stats.cache_hits += 1
            return key, cache[key]
        raw = (
            automata.seq_product(a, b) if op == "seq" else automata.tensor_product(a, b)
        )
        out = automata.canonical(raw)
        stats.nfa_builds += 1
        record(raw, out)
        if memo:
            cache[key] = out
        return key, out

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 10000))
    try:
        _, result = go(problem.expr, "")
    finally:
        sys.setrecursionlimit(limit)
    stats.distinct_subterms = len(interned)
    return result, stats


def check_reach(problem: ReachabilityProblem, **options) -> tuple:
    """``(verdict, stats)`` for a problem whose root net is closed."""
    left, right = boundaries(problem.expr, problem.env)
    if left or right:
        raise ExprError(
            f"reachability needs a closed expression, {to_text(problem.expr)} is {left}->{right}"
        )
    nfa, stats = eval_nfa(problem, **options)
    return automata.is_trivially_accepting(nfa), stats
