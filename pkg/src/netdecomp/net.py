"""Nets with boundaries: data model, contention, ports and serialisation.

A net ``N: k -> l`` is a 1-bounded Petri net whose transitions may also attach
to ``k`` ordered ports on the left boundary and ``l`` on the right.  Contention
is stored explicitly as the set of unordered non-reflexive pairs; reflexivity
and symmetry are implicit in that representation.
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from pathlib import Path
from typing import NamedTuple

__all__ = [
    "Net",
    "NetError",
    "Port",
    "Transition",
    "conn",
    "conn_restricted",
    "dump",
    "dumps",
    "format_connection",
    "format_port",
    "format_portset",
    "from_dict",
    "left",
    "lint",
    "load",
    "loads",
    "minimal_contention",
    "place_in",
    "place_out",
    "ports_of_net",
    "ports_of_transition",
    "right",
    "to_dict",
    "validate",
]


class NetError(ValueError):
    """Raised for malformed nets or operations applied to the wrong net."""


@dataclass(frozen=True)
class Transition:
    name: str
    pre: frozenset = frozenset()
    post: frozenset = frozenset()
    source: frozenset = frozenset()
    target: frozenset = frozenset()

    def __post_init__(self):
        for attr in ("pre", "post", "source", "target"):
            value = getattr(self, attr)
            if not isinstance(value, frozenset):
                object.__setattr__(self, attr, frozenset(value))

    @property
    def is_empty(self) -> bool:
        return not (self.pre or self.post or self.source or self.target)


def _pair(a: str, b: str) -> frozenset:
    return frozenset((a, b))


@dataclass(frozen=True)
class Net:
    """A net with boundaries ``left -> right``.

    ``contention`` holds the non-reflexive pairs of the contention relation.
    Use :meth:`Net.build` to get the minimal relation filled in.
    """

    left: int
    right: int
    places: tuple
    transitions: tuple
    contention: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "places", tuple(self.places))
        object.__setattr__(self, "transitions", tuple(self.transitions))
        pairs = set()
        for pair in self.contention:
            pair = tuple(pair)
            if len(pair) == 2 and pair[0] != pair[1]:
                pairs.add(_pair(*pair))
        object.__setattr__(self, "contention", frozenset(pairs))

    @classmethod
    def build(cls, left, right, places, transitions, contention=None) -> Net:
        transitions = tuple(transitions)
        if contention is None:
            contention = minimal_contention(transitions)
        return cls(left, right, tuple(places), transitions, frozenset(contention))

    def __repr__(self) -> str:
        return (
            f"Net({self.left}->{self.right}, places={len(self.places)}, "
            f"transitions={len(self.transitions)})"
        )

    @cached_property
    def transition_index(self) -> dict:
        return {t.name: i for i, t in enumerate(self.transitions)}

    @cached_property
    def place_index(self) -> dict:
        return {p: i for i, p in enumerate(self.places)}

    def transition(self, name: str) -> Transition:
        try:
            return self.transitions[self.transition_index[name]]
        except KeyError:
            raise NetError(f"unknown transition {name!r}") from None

    def in_contention(self, t: str, u: str) -> bool:
        return t == u or _pair(t, u) in self.contention

    @cached_property
    def conflicts(self) -> dict:
        """Map each transition name to the names it contends with (excluding itself)."""
        out = {t.name: set() for t in self.transitions}
        for pair in self.contention:
            a, b = tuple(pair)
            out[a].add(b)
            out[b].add(a)
        return {k: frozenset(v) for k, v in out.items()}

    @cached_property
    def masks(self) -> NetMasks:
        return NetMasks.of(self)

    def marking_mask(self, marking: Iterable[str]) -> int:
        mask = 0
        index = self.place_index
        for p in marking:
            try:
                mask |= 1 << index[p]
            except KeyError:
                raise NetError(f"marking references unknown place {p!r}") from None
        return mask

    def marking_of(self, mask: int) -> frozenset:
        return frozenset(p for i, p in enumerate(self.places) if mask >> i & 1)


class NetMasks(NamedTuple):
    """Bitmask encoding of a net used by the firing kernels."""

    pre: tuple
    post: tuple
    source: tuple
    target: tuple
    conflict: tuple

    @classmethod
    def of(cls, net: Net) -> NetMasks:
        pidx = net.place_index
        tidx = net.transition_index
        pre, post, src, tgt, conf = [], [], [], [], []
        for t in net.transitions:
            pre.append(sum(1 << pidx[p] for p in t.pre))
            post.append(sum(1 << pidx[p] for p in t.post))
            src.append(sum(1 << i for i in t.source))
            tgt.append(sum(1 << j for j in t.target))
            conf.append(sum(1 << tidx[u] for u in net.conflicts[t.name]))
        return cls(tuple(pre), tuple(post), tuple(src), tuple(tgt), tuple(conf))


def minimal_contention(transitions: Iterable[Transition]) -> frozenset:
    """Least contention relation: pairs sharing a pre/post place or a boundary port."""
    buckets: dict = {}
    for t in transitions:
        keys = (
            [("pre", p) for p in t.pre]
            + [("post", p) for p in t.post]
            + [("source", i) for i in t.source]
            + [("target", j) for j in t.target]
        )
        for key in keys:
            buckets.setdefault(key, []).append(t.name)
    pairs = set()
    for names in buckets.values():
        for a, b in combinations(names, 2):
            if a != b:
                pairs.add(_pair(a, b))
    return frozenset(pairs)


_CONDITIONS = (
    ("i", "pre", "share a pre-place"),
    ("ii", "post", "share a post-place"),
    ("iii", "source", "share a left boundary port"),
    ("iv", "target", "share a right boundary port"),
)


def validate(net: Net) -> list:
    """Return a list of human-readable violations; empty means well formed."""
    problems = []
    seen = set()
    for p in net.places:
        if not isinstance(p, str) or not p:
            problems.append(f"place name {p!r} must be a non-empty string")
        if p in seen:
            problems.append(f"duplicate place {p!r}")
        seen.add(p)
    names = set()
    for t in net.transitions:
        if not isinstance(t.name, str) or not t.name:
            problems.append(f"transition name {t.name!r} must be a non-empty string")
        if t.name in names:
            problems.append(f"duplicate transition {t.name!r}")
        names.add(t.name)
        for p in sorted(t.pre | t.post):
            if p not in seen:
                problems.append(f"transition {t.name!r} references unknown place {p!r}")
        for i in sorted(t.source):
            if not 0 <= i < net.left:
                problems.append(
                    f"transition {t.name!r} source index {i} out of range for left boundary {net.left}"
                )
        for j in sorted(t.target):
            if not 0 <= j < net.right:
                problems.append(
                    f"transition {t.name!r} target index {j} out of range for right boundary {net.right}"
                )
        if t.is_empty:
            problems.append(
                f"transition {t.name!r} has empty pre, post, source and target"
            )
    for pair in net.contention:
        for name in pair:
            if name not in names:
                problems.append(f"contention refers to unknown transition {name!r}")
    ts = net.transitions
    for a, b in combinations(ts, 2):
        if net.in_contention(a.name, b.name):
            continue
        for label, attr, text in _CONDITIONS:
            if getattr(a, attr) & getattr(b, attr):
                problems.append(
                    f"contention condition ({label}): {a.name!r} and {b.name!r} {text} "
                    "but are not in contention"
                )
                break
    return problems


def lint(net: Net) -> list:
    """Warnings that do not make a net invalid."""
    out = []
    for t in net.transitions:
        both = t.pre & t.post
        if both:
            out.append(
                f"transition {t.name!r} has {sorted(both)} in both pre and post; it can never fire"
            )
    return out


# ---------------------------------------------------------------- ports


class Port(NamedTuple):
    kind: str  # "in", "out", "left" or "right"
    ref: object  # place name for in/out, index for left/right

    def __str__(self) -> str:
        return format_port(self)


_KIND_ORDER = {"left": 0, "out": 1, "in": 2, "right": 3}


def port_key(port: Port):
    ref = port.ref
    return (
        _KIND_ORDER[port.kind],
        ref if isinstance(ref, int) else -1,
        ref if isinstance(ref, str) else "",
    )


def place_in(p: str) -> Port:
    return Port("in", p)


def place_out(p: str) -> Port:
    return Port("out", p)


def left(i: int) -> Port:
    return Port("left", i)


def right(j: int) -> Port:
    return Port("right", j)


def ports_of_places(places: Iterable[str]) -> frozenset:
    out = set()
    for p in places:
        out.add(place_in(p))
        out.add(place_out(p))
    return frozenset(out)


def ports_of_net(net: Net) -> frozenset:
    return (
        ports_of_places(net.places)
        | {left(i) for i in range(net.left)}
        | {right(j) for j in range(net.right)}
    )


def ports_of_transition(net: Net, t) -> frozenset:
    if isinstance(t, str):
        t = net.transition(t)
    elif t.name not in net.transition_index or net.transition(t.name) != t:
        raise NetError(f"transition {t.name!r} does not belong to this net")
    return frozenset(
        [place_out(p) for p in t.pre]
        + [place_in(p) for p in t.post]
        + [left(i) for i in t.source]
        + [right(j) for j in t.target]
    )


def _check_port(net: Net, port: Port) -> None:
    if port not in ports_of_net(net):
        raise NetError(f"unknown port {format_port(port)}")


def conn(net: Net, port: Port) -> frozenset:
    """Portsets of the transitions attached to ``port``, with ``port`` removed.

    A transition whose whole portset is ``{port}`` is not counted (proper
    containment), so the empty portset never occurs.
    """
    _check_port(net, port)
    out = set()
    for t in net.transitions:
        ps = ports_of_transition(net, t)
        if port in ps and len(ps) > 1:
            out.add(ps - {port})
    return frozenset(out)


def conn_restricted(net: Net, port: Port, restrict: Iterable[Port]) -> frozenset:
    restrict = frozenset(restrict)
    out = set()
    for k in conn(net, port):
        cut = k & restrict
        if cut:
            out.add(cut)
    return frozenset(out)


def format_port(port: Port) -> str:
    if port.kind in ("in", "out"):
        return f"{port.ref}-{port.kind}"
    return f"{port.kind}({port.ref})"


def format_portset(ps) -> str:
    return "<" + ", ".join(format_port(p) for p in sorted(ps, key=port_key)) + ">"


def format_connection(c) -> str:
    items = sorted(format_portset(ps) for ps in c)
    return "[" + ", ".join(items) + "]"


# -------------------------------------------------------- serialisation


def _sorted_places(net: Net, places) -> list:
    index = net.place_index
    return sorted(places, key=lambda p: index.get(p, len(index)))


def to_dict(net: Net) -> dict:
    tindex = net.transition_index
    pairs = sorted(
        (sorted(pair, key=tindex.__getitem__) for pair in net.contention),
        key=lambda ab: (tindex[ab[0]], tindex[ab[1]]),
    )
    return {
        "left": net.left,
        "right": net.right,
        "places": list(net.places),
        "transitions": [
            {
                "name": t.name,
                "pre": _sorted_places(net, t.pre),
                "post": _sorted_places(net, t.post),
                "source": sorted(t.source),
                "target": sorted(t.target),
            }
            for t in net.transitions
        ],
        "contention": pairs,
    }


def from_dict(data: Mapping) -> Net:
    try:
        transitions = [
            Transition(
                str(t["name"]),
                frozenset(t.get("pre", ())),
                frozenset(t.get("post", ())),
                frozenset(int(i) for i in t.get("source", ())),
                frozenset(int(j) for j in t.get("target", ())),
            )
            for t in data.get("transitions", ())
        ]
        contention = data.get("contention")
        if contention is not None:
            contention = frozenset(frozenset(map(str, pair)) for pair in contention)
        return Net.build(
            int(data.get("left", 0)),
            int(data.get("right", 0)),
            [str(p) for p in data.get("places", ())],
            transitions,
            contention,
        )
    except (KeyError, TypeError, AttributeError) as exc:
        raise NetError(f"malformed net description: {exc}") from exc


def dumps(net: Net, indent=None) -> str:
    return json.dumps(to_dict(net), indent=indent)


def loads(text: str) -> Net:
    return from_dict(json.loads(text))


def load(path) -> Net:
    return loads(Path(path).read_text())


def dump(net: Net, path) -> None:
    Path(path).write_text(dumps(net, indent=2) + "\n")
