"""Net families, their component nets and their library wiring decompositions.

Families (all closed nets, minimal contention):

* ``tdelta(n, k)``: complete n-ary tree of depth k; one transition per
  internal node moves its token to all children at once.
* ``tlambda(n, k)``: same tree; one transition per parent/child pair.
* ``clique(n)``: places ``0..n-1``, a transition ``i>j`` for every i != j.
* ``subset(n)``: source ``S`` and places ``0..n-1``; one transition from
  ``S`` to each subset of the others (including the empty one).
* ``grid(n)``: an n x n grid with rightward and downward transitions.

Each decomposition comes with ``place_map``, taking a generated place to its
name in the evaluated expression, so markings can be moved between the two.
"""

from __future__ import annotations

import re
from collections.abc import Mapping
from dataclasses import dataclass
from typing import NamedTuple

from .engine import ReachabilityProblem
from .expr import Expr, Seq, Tensor, Var, leaves, path_prefix, power_expr, to_text
from .net import Net, NetError, Transition

__all__ = [
    "COMPONENTS",
    "FAMILIES",
    "Decomposition",
    "FamilySpec",
    "component",
    "decomp_family",
    "gen_family",
    "grid_column",
    "impure_split",
    "parse_family_spec",
    "splitex_net",
    "splitex_split",
]


def _t(name, pre=(), post=(), source=(), target=()) -> Transition:
    return Transition(
        name, frozenset(pre), frozenset(post), frozenset(source), frozenset(target)
    )


def _net(left, right, places, transitions) -> Net:
    return Net.build(left, right, places, transitions)


def _components() -> dict:
    return {
        "R": _net(0, 1, ["p"], [_t("t", pre=["p"], target=[0])]),
        "I": _net(1, 1, [], [_t("t", source=[0], target=[0])]),
        "bot": _net(1, 0, [], [_t("t", source=[0])]),
        "up": _net(0, 1, [], []),
        "down": _net(1, 0, [], []),
        "Ldelta": _net(1, 1, ["p"], [_t("t", source=[0], post=["p"], target=[0])]),
        "Ndelta": _net(
            1,
            2,
            ["p"],
            [
                _t("recv", source=[0], post=["p"], target=[0]),
                _t("fire", pre=["p"], target=[1]),
            ],
        ),
        "Llambda": _net(
            1,
            1,
            ["p"],
            [_t("recv", source=[0], post=["p"]), _t("fwd", source=[0], target=[0])],
        ),
        "Nlambda": _net(
            1,
            2,
            ["p"],
            [
                _t("recv", source=[0], post=["p"]),
                _t("fwd", source=[0], target=[0]),
                _t("fire", pre=["p"], target=[1]),
            ],
        ),
        # wire 0 carries tokens rightwards, wire 1 leftwards
        "S": _net(
            2,
            2,
            ["p"],
            [
                _t("sendR", pre=["p"], target=[0]),
                _t("recvR", source=[0], post=["p"]),
                _t("fwdR", source=[0], target=[0]),
                _t("sendL", pre=["p"], source=[1]),
                _t("recvL", target=[1], post=["p"]),
                _t("fwdL", source=[1], target=[1]),
            ],
        ),
        "P": _net(
            1,
            1,
            ["p"],
            [
                _t("wire", source=[0], target=[0]),
                _t("stop", source=[0], post=["p"]),
                _t("take", source=[0], post=["p"], target=[0]),
            ],
        ),
        # link used by the subset decomposition: pass the signal on, taking p or not
        "Psub": _net(
            1,
            1,
            ["p"],
            [
                _t("skip", source=[0], target=[0]),
                _t("take", source=[0], post=["p"], target=[0]),
            ],
        ),
    }


_LIBRARY = _components()
COMPONENTS = tuple(_LIBRARY)
FAMILIES = ("tdelta", "tlambda", "clique", "subset", "grid")


def component(name: str) -> Net:
    try:
        return _LIBRARY[name]
    except KeyError:
        raise NetError(
            f"unknown component {name!r}; known: {', '.join(COMPONENTS)}"
        ) from None


def grid_column(kind: str, n: int) -> Net:
    """One column of ``grid(n)``: ``first`` 0->n, ``mid`` n->n, ``last`` n->0,
    or ``only`` 0->0 for ``n = 1``."""
    places = [f"g{r}" for r in range(n)]
    ts = [_t(f"down{r}", pre=[f"g{r}"], post=[f"g{r + 1}"]) for r in range(n - 1)]
    if kind in ("mid", "last"):
        ts += [_t(f"in{r}", source=[r], post=[f"g{r}"]) for r in range(n)]
    if kind in ("first", "mid"):
        ts += [_t(f"out{r}", pre=[f"g{r}"], target=[r]) for r in range(n)]
    left = n if kind in ("mid", "last") else 0
    right = n if kind in ("first", "mid") else 0
    if kind not in ("first", "mid", "last", "only"):
        raise NetError(f"unknown grid column kind {kind!r}")
    return _net(left, right, places, ts)


# ------------------------------------------------------------------ specs


class FamilySpec(NamedTuple):
    family: str
    n: int
    k: int | None = None

    def __str__(self) -> str:
        args = f"{self.n}" if self.k is None else f"{self.n},{self.k}"
        return f"{self.family}({args})"


def _check(spec: FamilySpec) -> FamilySpec:
    if spec.family not in FAMILIES:
        raise NetError(f"unknown family {spec.family!r}; known: {', '.join(FAMILIES)}")
    trees = spec.family in ("tdelta", "tlambda")
    if trees and spec.k is None:
        raise NetError(f"{spec.family} needs two parameters (n, k)")
    if not trees and spec.k is not None:
        raise NetError(f"{spec.family} takes one parameter")
    if spec.n < 1 or (trees and spec.k < 1):
        raise NetError(f"parameters of {spec} must be at least 1")
    return spec


_SPEC = re.compile(r"^\s*(\w+)\s*\(\s*(\d+)\s*(?:,\s*(\d+)\s*)?\)\s*$")


def parse_family_spec(text: str) -> FamilySpec:
    """``"tdelta(2,3)"`` or ``"clique(4)"``."""
    m = _SPEC.match(text)
    if not m:
        raise NetError(f"cannot parse family spec {text!r}")
    k = int(m.group(3)) if m.group(3) is not None else None
    return _check(FamilySpec(m.group(1), int(m.group(2)), k))


def _as_spec(spec, *params) -> FamilySpec:
    if isinstance(spec, FamilySpec):
        return _check(spec)
    if isinstance(spec, str) and not params:
        return parse_family_spec(spec) if "(" in spec else _check(FamilySpec(spec, 1))
    return _check(FamilySpec(spec, *params))


# -------------------------------------------------------------- generators


def _tree_nodes(n: int, k: int) -> list:
    levels = [["v"]]
    for _ in range(k):
        levels.append([f"{v}.{i}" for v in levels[-1] for i in range(n)])
    return levels


def gen_family(spec, *params) -> Net:
    spec = _as_spec(spec, *params)
    n = spec.n
    if spec.family in ("tdelta", "tlambda"):
        levels = _tree_nodes(n, spec.k)
        places = [v for level in levels for v in level]
        ts = []
        for level in levels[:-1]:
            for v in level:
                kids = [f"{v}.{i}" for i in range(n)]
                if spec.family == "tdelta":
                    ts.append(_t(f"{v}>*", pre=[v], post=kids))
                else:
                    ts += [_t(f"{v}>{c}", pre=[v], post=[c]) for c in kids]
        return _net(0, 0, places, ts)
    if spec.family == "clique":
        places = [str(i) for i in range(n)]
        ts = [
            _t(f"{i}>{j}", pre=[str(i)], post=[str(j)])
            for i in range(n)
            for j in range(n)
            if i != j
        ]
        return _net(0, 0, places, ts)
    if spec.family == "subset":
        places = ["S"] + [str(i) for i in range(n)]
        ts = []
        for mask in range(1 << n):
            chosen = [str(i) for i in range(n) if mask >> i & 1]
            ts.append(_t("S>{" + ",".join(chosen) + "}", pre=["S"], post=chosen))
        return _net(0, 0, places, ts)
    places = [f"g{r}_{c}" for r in range(n) for c in range(n)]
    ts = []
    for r in range(n):
        for c in range(n):
            if c + 1 < n:
                ts.append(
                    _t(
                        f"g{r}_{c}>g{r}_{c + 1}",
                        pre=[f"g{r}_{c}"],
                        post=[f"g{r}_{c + 1}"],
                    )
                )
            if r + 1 < n:
                ts.append(
                    _t(
                        f"g{r}_{c}>g{r + 1}_{c}",
                        pre=[f"g{r}_{c}"],
                        post=[f"g{r + 1}_{c}"],
                    )
                )
    return _net(0, 0, places, ts)


# ---------------------------------------------------------- decompositions


@dataclass(frozen=True)
class Decomposition:
    spec: FamilySpec | None
    expr: Expr
    env: Mapping
    place_map: Mapping  # generated place -> place of the evaluated expression

    @property
    def text(self) -> str:
        return to_text(self.expr)

    def problem(self, initial, final) -> ReachabilityProblem:
        """Reachability problem for markings given in generated place names."""
        try:
            init = [self.place_map[p] for p in initial]
            fin = [self.place_map[p] for p in final]
        except KeyError as exc:
            raise NetError(
                f"marking references unknown place {exc.args[0]!r}"
            ) from None
        return ReachabilityProblem.from_global(self.expr, self.env, init, fin)


def _place_map(expr: Expr, tags: list) -> dict:
    paths = [p for p, _ in leaves(expr)]
    out = {}
    for path, tag in zip(paths, tags, strict=True):
        prefix = path_prefix(path)
        for local, gen in tag.items():
            out[gen] = prefix + local
    return out


def _tree(spec: FamilySpec):
    n, k = spec.n, spec.k
    delta = spec.family == "tdelta"
    link, node = ("Ldelta", "Ndelta") if delta else ("Llambda", "Nlambda")
    cap = "bot" if delta else "down"

    def body(depth):  # the part below a node, as a 1->0 net
        if depth == 1:
            return Seq(power_expr(Var(link), n), Var(cap))
        unit = Seq(Var(node), Tensor(Var("I"), body(depth - 1)))
        return Seq(power_expr(unit, n), Var(cap))

    def tags(depth, v):
        out = []
        for i in range(n):
            child = f"{v}.{i}"
            if depth == 1:
                out.append({"p": child})
            else:
                out += [{"p": child}, {}] + tags(depth - 1, child)
        return out + [{}]

    expr = Seq(Var("R"), body(k))
    env = {name: _LIBRARY[name] for name in ("R", "I", link, node, cap)}
    return expr, env, [{"p": "v"}] + tags(k, "v")


def _clique(n):
    up2 = Tensor(Var("up"), Var("up"))
    down2 = Tensor(Var("down"), Var("down"))
    expr = Seq(Seq(up2, power_expr(Var("S"), n)), down2)
    env = {name: _LIBRARY[name] for name in ("up", "S", "down")}
    return expr, env, [{}, {}] + [{"p": str(i)} for i in range(n)] + [{}, {}]


def _subset(n):
    expr = Seq(Seq(Var("R"), power_expr(Var("P"), n)), Var("bot"))
    env = {"R": _LIBRARY["R"], "P": _LIBRARY["Psub"], "bot": _LIBRARY["bot"]}
    return expr, env, [{"p": "S"}] + [{"p": str(i)} for i in range(n)] + [{}]


def _grid(n):
    def tag(c):
        return {f"g{r}": f"g{r}_{c}" for r in range(n)}

    if n == 1:
        return Var("G"), {"G": grid_column("only", 1)}, [tag(0)]
    env = {"Gfirst": grid_column("first", n), "Glast": grid_column("last", n)}
    if n == 2:
        return Seq(Var("Gfirst"), Var("Glast")), env, [tag(0), tag(1)]
    env["Gmid"] = grid_column("mid", n)
    expr = Seq(Seq(Var("Gfirst"), power_expr(Var("Gmid"), n - 2)), Var("Glast"))
    return expr, env, [tag(c) for c in range(n)]


def decomp_family(spec, *params) -> Decomposition:
    spec = _as_spec(spec, *params)
    if spec.family in ("tdelta", "tlambda"):
        expr, env, tags = _tree(spec)
    elif spec.family == "clique":
        expr, env, tags = _clique(spec.n)
    elif spec.family == "subset":
        expr, env, tags = _subset(spec.n)
    else:
        expr, env, tags = _grid(spec.n)
    return Decomposition(spec, expr, env, _place_map(expr, tags))


# ------------------------------------------------------ small split examples


def splitex_split() -> tuple:
    """A pure ``;``-split of a four-place net whose left/right networks need
    a two-port shared boundary."""
    n1 = _net(
        0,
        2,
        ["0", "1"],
        [
            _t("a", pre=["0"], target=[0]),
            _t("b", pre=["0", "1"], target=[0]),
            _t("c", pre=["1"], target=[1]),
        ],
    )
    n2 = _net(
        2,
        0,
        ["2", "3"],
        [
            _t("d", source=[0], post=["2"]),
            _t("e", source=[1], post=["2", "3"]),
            _t("f", source=[1], post=["3"]),
        ],
    )
    return n1, n2


def splitex_net() -> Net:
    """The closed net of :func:`splitex_split`, with plain place names."""
    return _net(
        0,
        0,
        ["0", "1", "2", "3"],
        [
            _t("0>2", pre=["0"], post=["2"]),
            _t("01>2", pre=["0", "1"], post=["2"]),
            _t("1>23", pre=["1"], post=["2", "3"]),
            _t("1>3", pre=["1"], post=["3"]),
        ],
    )


def impure_split() -> tuple:
    """A non-pure split: one left transition drives both shared ports."""
    nl = _net(0, 2, ["0"], [_t("x", pre=["0"], target=[0, 1])])
    nr = _net(
        2,
        0,
        ["1", "2"],
        [_t("y", source=[0], post=["1"]), _t("z", source=[1], post=["2"])],
    )
    return nl, nr
