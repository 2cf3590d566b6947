"""Structural lower bounds for ``;``-splits.

An oriented partition splits the places of a net into a left and a right
part.  The network from one part to the other collects, for every port on
this side, what it is connected to on the far side.  A pure split
``Nl ; Nr`` (every transition touches at most one shared port) induces a
basis of both networks from the shared-port connections, so the dimension
of a network bounds the shared boundary of any pure split from below.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple

from .algebra import seq_compose
from .iso import NetIso, iso_check, rename_places
from .net import (
    Net,
    NetError,
    Port,
    Transition,
    conn,
    conn_restricted,
    format_connection,
    left,
    port_key,
    ports_of_places,
    right,
)

__all__ = [
    "DIRECTIONS",
    "OrientedPartition",
    "PropositionReport",
    "SplitResult",
    "all_partitions",
    "boundary_connections",
    "check_proposition",
    "cross_transitions",
    "dimension",
    "extended_ports",
    "format_network",
    "is_basis",
    "is_pure",
    "lower_bound",
    "min_pure_split",
    "network",
    "smallest_basis",
]

DIRECTIONS = ("l->r", "r->l")


class OrientedPartition(NamedTuple):
    left_places: frozenset
    right_places: frozenset

    @classmethod
    def of(
        cls, left_places: Iterable[str], right_places: Iterable[str]
    ) -> OrientedPartition:
        return cls(frozenset(left_places), frozenset(right_places))

    @classmethod
    def parse(cls, text: str) -> OrientedPartition:
        """``"0,1|2,3"``."""
        if text.count("|") != 1:
            raise NetError(f"partition {text!r} must have the form a,b|c,d")
        lhs, rhs = text.split("|")

        def names(part):
            return [p.strip() for p in part.split(",") if p.strip()]

        return cls.of(names(lhs), names(rhs))

    def flipped(self) -> OrientedPartition:
        return OrientedPartition(self.right_places, self.left_places)


def _check_partition(
    net: Net, part: OrientedPartition, allow_empty: bool = False
) -> None:
    lp, rp = part.left_places, part.right_places
    if lp & rp:
        raise NetError(f"partition sides overlap on {sorted(lp & rp)}")
    if lp | rp != set(net.places):
        missing = set(net.places) - (lp | rp)
        extra = (lp | rp) - set(net.places)
        raise NetError(
            f"partition must cover the places exactly (missing {sorted(missing)}, unknown {sorted(extra)})"
        )
    if not allow_empty and (not lp or not rp):
        raise NetError("both sides of an oriented partition must be nonempty")


def extended_ports(
    net: Net, part: OrientedPartition, side: str, _allow_empty=False
) -> frozenset:
    """Place ports of one side plus that side's boundary ports."""
    _check_partition(net, part, _allow_empty)
    if side == "left":
        return ports_of_places(part.left_places) | {left(i) for i in range(net.left)}
    if side == "right":
        return ports_of_places(part.right_places) | {right(j) for j in range(net.right)}
    raise NetError(f"side must be 'left' or 'right', not {side!r}")


def network(
    net: Net, part: OrientedPartition, direction: str = "l->r", _allow_empty=False
) -> frozenset:
    """Nonempty restricted connections of this side's ports to the other side."""
    if direction not in DIRECTIONS:
        raise NetError(f"direction must be one of {DIRECTIONS}")
    here, there = ("left", "right") if direction == "l->r" else ("right", "left")
    src = extended_ports(net, part, here, _allow_empty)
    dst = extended_ports(net, part, there, _allow_empty)
    out = set()
    for p in sorted(src, key=port_key):
        c = conn_restricted(net, p, dst)
        if c:
            out.add(c)
    return frozenset(out)


def _ps_key(ps) -> tuple:
    return tuple(sorted(port_key(p) for p in ps))


def _conn_key(c) -> tuple:
    return tuple(sorted(_ps_key(ps) for ps in c))


def format_network(nw) -> str:
    return "{" + ", ".join(sorted(format_connection(c) for c in nw)) + "}"


def is_basis(vector, nw) -> bool:
    """Every connection of ``nw`` is the union of some entries of ``vector``."""
    vector = [frozenset(b) for b in vector]
    for c in nw:
        c = frozenset(c)
        covered = set()
        for b in vector:
            if b <= c:
                covered |= b
        if covered != c:
            return False
    return True


def smallest_basis(nw) -> list:
    """A basis of minimum size; entries are subsets of connections of ``nw``."""
    conns = sorted((frozenset(c) for c in nw if c), key=_conn_key)

    def search(chosen, budget):
        for c in conns:
            covered = set()
            for b in chosen:
                if b <= c:
                    covered |= b
            missing = c - covered
            if missing:
                break
        else:
            return list(chosen)
        if budget == 0:
            return None
        # some entry inside c must contain this portset
        x = min(missing, key=_ps_key)
        rest = sorted(c - {x}, key=_ps_key)
        for size in range(len(rest) + 1):
            for extra in combinations(rest, size):
                entry = frozenset((x,) + extra)
                if entry in chosen:
                    continue
                found = search(chosen + [entry], budget - 1)
                if found is not None:
                    return found
        return None

    for n in range(len(conns) + 1):
        found = search([], n)
        if found is not None:
            return found
    raise AssertionError("the listing of a network is always a basis")


def dimension(nw) -> int:
    return len(smallest_basis(nw))


def is_pure(nl: Net, nr: Net) -> bool:
    if nl.right != nr.left:
        raise NetError(
            f"boundary mismatch: {nl.left}->{nl.right} ; {nr.left}->{nr.right}"
        )
    return all(len(t.target) <= 1 for t in nl.transitions) and all(
        len(t.source) <= 1 for t in nr.transitions
    )


def boundary_connections(net: Net, side: str, j: int) -> frozenset:
    """Connection of shared port ``j``: ``right(j)`` when ``net`` is the left
    factor (``side="left"``), ``left(j)`` when it is the right factor."""
    if side == "left":
        if not 0 <= j < net.right:
            raise NetError(f"port {j} out of range for right boundary {net.right}")
        return conn(net, right(j))
    if side == "right":
        if not 0 <= j < net.left:
            raise NetError(f"port {j} out of range for left boundary {net.left}")
        return conn(net, left(j))
    raise NetError(f"side must be 'left' or 'right', not {side!r}")


def _retag(ps, prefix: str) -> frozenset:
    return frozenset(
        Port(p.kind, prefix + p.ref) if p.kind in ("in", "out") else p for p in ps
    )


@dataclass(frozen=True)
class PropositionReport:
    left_basis_ok: bool  # shared-port connections of Nl generate the network r->l
    right_basis_ok: bool  # shared-port connections of Nr generate the network l->r
    violations: tuple

    @property
    def ok(self) -> bool:
        return self.left_basis_ok and self.right_basis_ok

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "left_basis_ok": self.left_basis_ok,
            "right_basis_ok": self.right_basis_ok,
            "violations": list(self.violations),
        }


def check_proposition(nl: Net, nr: Net) -> PropositionReport:
    """Check that the shared-port connections of a pure split ``nl ; nr`` form
    bases of the two networks of the composite's place partition."""
    if not is_pure(nl, nr):
        raise NetError("split is not pure")
    composite = seq_compose(nl, nr)
    part = OrientedPartition.of(
        ("L/" + p for p in nl.places), ("R/" + p for p in nr.places)
    )
    n = nl.right
    vec_l = [
        frozenset(_retag(ps, "L/") for ps in boundary_connections(nl, "left", i))
        for i in range(n)
    ]
    vec_r = [
        frozenset(_retag(ps, "R/") for ps in boundary_connections(nr, "right", i))
        for i in range(n)
    ]
    to_right = network(composite, part, "l->r", _allow_empty=True)
    to_left = network(composite, part, "r->l", _allow_empty=True)
    violations = []
    right_ok = is_basis(vec_r, to_right)
    left_ok = is_basis(vec_l, to_left)
    if not right_ok:
        violations.append(
            f"right-factor connections do not generate {format_network(to_right)}"
        )
    if not left_ok:
        violations.append(
            f"left-factor connections do not generate {format_network(to_left)}"
        )
    return PropositionReport(left_ok, right_ok, tuple(violations))


def lower_bound(net: Net, part: OrientedPartition) -> int:
    """Least shared boundary any pure ``;``-split realising ``part`` can have."""
    return max(dimension(network(net, part, d)) for d in DIRECTIONS)


# ----------------------------------------------------------- pure splits


class SplitResult(NamedTuple):
    n: int
    nl: Net
    nr: Net
    iso: NetIso


def cross_transitions(net: Net, part: OrientedPartition) -> list:
    """Transitions touching places on both sides."""
    out = []
    for t in net.transitions:
        places = t.pre | t.post
        if places & part.left_places and places & part.right_places:
            out.append(t)
    return out


def _set_partitions(items: list, n: int, compatible):
    """Partitions of ``items`` into exactly ``n`` blocks in restricted-growth
    order, keeping only blocks whose members are pairwise ``compatible``."""
    blocks: list = []

    def rec(i):
        if len(blocks) + (len(items) - i) < n:
            return
        if i == len(items):
            if len(blocks) == n:
                yield [list(b) for b in blocks]
            return
        x = items[i]
        for b in blocks:
            if all(compatible(x, y) for y in b):
                b.append(x)
                yield from rec(i + 1)
                b.pop()
        if len(blocks) < n:
            blocks.append([x])
            yield from rec(i + 1)
            blocks.pop()

    yield from rec(0)


def _side(t: Transition, places: frozenset):
    return (frozenset(t.pre & places), frozenset(t.post & places))


def _build_split(net, part, blocks):
    lp, rp = part.left_places, part.right_places
    n = len(blocks)
    left_ts = []
    right_ts = []
    for t in net.transitions:
        places = t.pre | t.post
        if places <= lp and not places & rp:
            left_ts.append(t)
        elif places <= rp:
            right_ts.append(t)
    for j, block in enumerate(blocks):
        lefts = sorted(
            {_side(t, lp) for t in block}, key=lambda s: (sorted(s[0]), sorted(s[1]))
        )
        rights = sorted(
            {_side(t, rp) for t in block}, key=lambda s: (sorted(s[0]), sorted(s[1]))
        )
        pairs = {(_side(t, lp), _side(t, rp)) for t in block}
        if len(pairs) != len(block) or len(pairs) != len(lefts) * len(rights):
            return None  # the shared port would synchronise every left part with every right part
        for a, (pre, post) in enumerate(lefts):
            left_ts.append(
                Transition(f"out{j}.{a}", pre, post, frozenset(), frozenset([j]))
            )
        for b, (pre, post) in enumerate(rights):
            right_ts.append(
                Transition(f"in{j}.{b}", pre, post, frozenset([j]), frozenset())
            )
    lplaces = [p for p in net.places if p in lp]
    rplaces = [p for p in net.places if p in rp]
    return Net.build(0, n, lplaces, left_ts), Net.build(n, 0, rplaces, right_ts)


def min_pure_split(
    net: Net, part: OrientedPartition, n_max: int, respect_contention: bool = True
) -> SplitResult | None:
    """Least ``n <= n_max`` with a pure split ``Nl: 0->n ; Nr: n->0`` realising
    ``part`` whose composite is isomorphic to ``net`` with every place fixed.

    Exhaustive: each cross transition is assigned a shared port; the
    transitions on one port must pairwise contend and form a full product of
    their left and right halves.  The first witness in canonical order wins.
    """
    if net.left or net.right:
        raise NetError("min_pure_split needs a closed net")
    _check_partition(net, part, allow_empty=True)
    cross = cross_transitions(net, part)
    lp, rp = part.left_places, part.right_places
    rename = {"L/" + p: p for p in lp}
    rename.update({"R/" + p: p for p in rp})

    def compatible(t, u):
        return not respect_contention or net.in_contention(t.name, u.name)

    for n in range(n_max + 1):
        if n == 0 and cross:
            continue
        for blocks in _set_partitions(cross, n, compatible):
            split = _build_split(net, part, blocks)
            if split is None:
                continue
            nl, nr = split
            composite = rename_places(seq_compose(nl, nr), rename)
            iso = iso_check(composite, net, respect_contention, fix_places=True)
            if iso is not None:
                return SplitResult(n, nl, nr, iso)
    return None


def all_partitions(net: Net):
    """Every oriented partition with both sides nonempty."""
    places = list(net.places)
    for mask in range(1, (1 << len(places)) - 1):
        yield OrientedPartition.of(
            (p for i, p in enumerate(places) if mask >> i & 1),
            (p for i, p in enumerate(places) if not mask >> i & 1),
        )
