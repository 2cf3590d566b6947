"""Wiring expressions: ``t ::= x | t ; t | t * t`` over variables bound to nets.

Concrete syntax: identifiers, ``;``, ``*`` (or ``⊗``), parentheses and the
exponent sugar ``t^k`` for a left-associated chain of ``k`` copies of ``t``.
``^`` binds tightest, then ``*``, then ``;``; both infix operators associate
to the left.

A leaf occurrence is addressed by its path from the root, a string over
``"L"``/``"R"``.  Evaluation prefixes each place with ``"L/"``/``"R/"`` at
every composition, so the leaf at path ``"LR"`` owns the places ``"L/R/..."``.
"""

from __future__ import annotations

import re
from collections.abc import Iterator, Mapping
from dataclasses import dataclass

from . import algebra
from .net import Net, NetError

__all__ = [
    "Expr",
    "ExprError",
    "ParseError",
    "Seq",
    "Tensor",
    "Var",
    "boundaries",
    "eval_net",
    "leaves",
    "node_count",
    "parse_expr",
    "path_prefix",
    "power_expr",
    "reassociate",
    "subterms",
    "to_text",
    "variables",
    "width",
]


class ExprError(ValueError):
    pass


class ParseError(ExprError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(
            f"{message} at position {pos}: {text[:pos]}<<HERE>>{text[pos:]}"
        )
        self.pos = pos
        self.text = text


@dataclass(frozen=True)
class Var:
    name: str


class _Node:
    """Binary node with a cached structural hash (trees share subterms heavily)."""

    __slots__ = ()

    def __hash__(self):
        try:
            return self._hash
        except AttributeError:
            h = hash((type(self).__name__, self.left, self.right))
            object.__setattr__(self, "_hash", h)
            return h


@dataclass(frozen=True, eq=True)
class Seq(_Node):
    left: Expr
    right: Expr
    __hash__ = _Node.__hash__


@dataclass(frozen=True, eq=True)
class Tensor(_Node):
    left: Expr
    right: Expr
    __hash__ = _Node.__hash__


Expr = Var | Seq | Tensor

# ------------------------------------------------------------------ parser

_TOKEN = re.compile(
    r"\s*(?:(?P<id>[A-Za-z_][A-Za-z0-9_]*)|(?P<num>\d+)|(?P<op>[;*⊗()^]))"
)


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        start = m.start(m.lastgroup)
        kind = m.lastgroup
        value = m.group(kind)
        if kind == "op" and value == "⊗":
            value = "*"
        tokens.append((kind, value, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


def power_expr(e: Expr, k: int) -> Expr:
    """Left-associated ``e ; e ; ... ; e``."""
    if k < 1:
        raise ExprError("exponent must be at least 1")
    out = e
    for _ in range(k - 1):
        out = Seq(out, e)
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, message, tok=None):
        tok = tok or self.peek()
        raise ParseError(message, self.text, tok[2])

    def expect(self, value):
        tok = self.take()
        if tok[1] != value:
            self.fail(f"expected {value!r}", tok)

    def parse(self) -> Expr:
        e = self.seq()
        if self.peek()[0] != "end":
            self.fail("unexpected token")
        return e

    def seq(self) -> Expr:
        e = self.tensor()
        while self.peek()[1] == ";":
            self.take()
            e = Seq(e, self.tensor())
        return e

    def tensor(self) -> Expr:
        e = self.power()
        while self.peek()[1] == "*":
            self.take()
            e = Tensor(e, self.power())
        return e

    def power(self) -> Expr:
        e = self.atom()
        while self.peek()[1] == "^":
            self.take()
            tok = self.take()
            if tok[0] != "num":
                self.fail("expected exponent", tok)
            k = int(tok[1])
            if k == 0:
                self.fail("exponent must be at least 1", tok)
            e = power_expr(e, k)
        return e

    def atom(self) -> Expr:
        tok = self.take()
        if tok[0] == "id":
            return Var(tok[1])
        if tok[1] == "(":
            e = self.seq()
            self.expect(")")
            return e
        self.fail("expected a variable or '('", tok)


def parse_expr(text: str) -> Expr:
    return _Parser(text).parse()


# ---------------------------------------------------------------- printing


def _as_power(e: Expr):
    """``(u, k)`` with ``e == power_expr(u, k)`` and ``k >= 2``, else ``None``."""
    if not isinstance(e, Seq):
        return None
    u = e.right
    x, k = e, 1
    while isinstance(x, Seq) and x.right == u:
        x, k = x.left, k + 1
    return (u, k) if x == u else None


def to_text(e: Expr) -> str:
    """Concrete syntax that parses back to exactly ``e``, using ``^`` where
    a subterm is a left-associated power."""

    def fmt(e, need):  # need: 0 any, 1 tensor or tighter, 2 atom
        if isinstance(e, Var):
            return e.name
        power = _as_power(e)
        if power is not None:
            return f"{fmt(power[0], 2)}^{power[1]}"
        if isinstance(e, Seq):
            text = f"{fmt(e.left, 0)} ; {fmt(e.right, 1)}"
            return text if need == 0 else f"({text})"
        text = f"{fmt(e.left, 1)} * {fmt(e.right, 2)}"
        return text if need <= 1 else f"({text})"

    return fmt(e, 0)


# --------------------------------------------------------------- traversal


def path_prefix(path: str) -> str:
    return "".join(c + "/" for c in path)


def subterms(e: Expr, path: str = "") -> Iterator[tuple]:
    """Pre-order ``(path, subterm)`` pairs."""
    stack = [(path, e)]
    while stack:
        p, x = stack.pop()
        yield p, x
        if not isinstance(x, Var):
            stack.append((p + "R", x.right))
            stack.append((p + "L", x.left))


def leaves(e: Expr) -> list:
    """Leaf occurrences left to right as ``(path, variable name)``."""
    return [(p, x.name) for p, x in subterms(e) if isinstance(x, Var)]


def variables(e: Expr) -> set:
    return {name for _, name in leaves(e)}


def node_count(e: Expr) -> int:
    return sum(1 for _ in subterms(e))


# -------------------------------------------------------------- semantics


def _lookup(env: Mapping, name: str) -> Net:
    try:
        return env[name]
    except KeyError:
        raise ExprError(f"unbound variable {name!r}") from None


def boundaries(e: Expr, env: Mapping) -> tuple:
    """``(left, right)`` of ``e``'s net, computed without building it."""
    memo = {}

    def go(x):
        if isinstance(x, Var):
            net = _lookup(env, x.name)
            return net.left, net.right
        key = id(x)
        if key in memo:
            return memo[key]
        a, b = go(x.left), go(x.right)
        if isinstance(x, Seq):
            if a[1] != b[0]:
                raise ExprError(
                    f"boundary mismatch {a[0]}->{a[1]} ; {b[0]}->{b[1]} in {to_text(x)}"
                )
            out = (a[0], b[1])
        else:
            out = (a[0] + b[0], a[1] + b[1])
        memo[key] = out
        return out

    return go(e)


def width(e: Expr, env: Mapping) -> int:
    """Decomposition width of ``e``: leaves contribute max(left, |places|, right),
    every subterm contributes max(left, right)."""
    best = 0
    memo = {}

    def go(x):
        nonlocal best
        if isinstance(x, Var):
            net = _lookup(env, x.name)
            best = max(best, net.left, len(net.places), net.right)
            return net.left, net.right
        key = id(x)
        if key in memo:
            return memo[key]
        a, b = go(x.left), go(x.right)
        if isinstance(x, Seq):
            if a[1] != b[0]:
                raise ExprError(
                    f"boundary mismatch {a[0]}->{a[1]} ; {b[0]}->{b[1]} in {to_text(x)}"
                )
            out = (a[0], b[1])
        else:
            out = (a[0] + b[0], a[1] + b[1])
        best = max(best, *out)
        memo[key] = out
        return out

    go(e)
    return best


def eval_net(e: Expr, env: Mapping) -> Net:
    boundaries(e, env)  # fail early with the offending subterm
    memo = {}

    def go(x):
        if isinstance(x, Var):
            return _lookup(env, x.name)
        if x in memo:
            return memo[x]
        a, b = go(x.left), go(x.right)
        try:
            out = (
                algebra.seq_compose(a, b)
                if isinstance(x, Seq)
                else algebra.tensor(a, b)
            )
        except NetError as exc:
            raise ExprError(f"{exc} in {to_text(x)}") from exc
        memo[x] = out
        return out

    return go(e)


# ---------------------------------------------------------- reassociation


def reassociate(e: Expr, policy: str = "left") -> Expr:
    """Rebracket every maximal ``;``- and ``*``-chain as ``left``, ``right`` or
    ``balanced``; the operand sequence is unchanged."""
    if policy not in ("left", "right", "balanced"):
        raise ExprError(f"unknown policy {policy!r}")

    def flatten(x, op, out):
        if isinstance(x, op):
            flatten(x.left, op, out)
            flatten(x.right, op, out)
        else:
            out.append(x)
        return out

    def build(items, op):
        if policy == "left":
            out = items[0]
            for x in items[1:]:
                out = op(out, x)
            return out
        if policy == "right":
            out = items[-1]
            for x in reversed(items[:-1]):
                out = op(x, out)
            return out
        if len(items) == 1:
            return items[0]
        mid = len(items) // 2
        return op(build(items[:mid], op), build(items[mid:], op))

    memo = {}

    def go(x):
        if isinstance(x, Var):
            return x
        if x in memo:
            return memo[x]
        op = type(x)
        out = build([go(y) for y in flatten(x, op, [])], op)
        memo[x] = out
        return out

    return go(e)
