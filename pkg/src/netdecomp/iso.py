"""Isomorphism of nets with boundaries.

Nets are encoded as typed directed graphs (place, transition and one fixed
node per boundary port) and matched with networkx's VF2 after colour
refinement, which both prunes the search and fixes a deterministic witness.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Mapping
from typing import NamedTuple

import networkx as nx
from networkx.algorithms.isomorphism import DiGraphMatcher

from .net import Net, Transition

__all__ = ["NetIso", "apply_iso", "iso_check", "net_graph", "rename_places"]


class NetIso(NamedTuple):
    place_map: dict
    transition_map: dict


def net_graph(
    net: Net, respect_contention: bool = True, fix_places: bool = False
) -> nx.DiGraph:
    g = nx.DiGraph()
    for p in net.places:
        g.add_node(("p", p), base=("place", p) if fix_places else ("place",))
    for t in net.transitions:
        g.add_node(("t", t.name), base=("transition",))
    for i in range(net.left):
        g.add_node(("l", i), base=("left", i))
    for j in range(net.right):
        g.add_node(("r", j), base=("right", j))
    for t in net.transitions:
        tn = ("t", t.name)
        for p in sorted(t.pre):
            g.add_edge(("p", p), tn, kind="pre")
        for p in sorted(t.post):
            g.add_edge(tn, ("p", p), kind="post")
        for i in sorted(t.source):
            g.add_edge(("l", i), tn, kind="source")
        for j in sorted(t.target):
            g.add_edge(tn, ("r", j), kind="target")
    if respect_contention:
        for a, b in sorted(tuple(sorted(pair)) for pair in net.contention):
            g.add_edge(("t", a), ("t", b), kind="contention")
            g.add_edge(("t", b), ("t", a), kind="contention")
    return g


def _refine(g: nx.DiGraph) -> dict:
    """1-dimensional Weisfeiler-Leman colours; stable colours are graph invariants."""
    colour = {v: repr(d["base"]) for v, d in g.nodes(data=True)}
    n_colours = len(set(colour.values()))
    while True:
        sig = {}
        for v in g.nodes:
            outs = sorted(
                (d["kind"], colour[w]) for _, w, d in g.out_edges(v, data=True)
            )
            ins = sorted((d["kind"], colour[u]) for u, _, d in g.in_edges(v, data=True))
            sig[v] = repr((colour[v], outs, ins))
        palette = {s: f"c{i}" for i, s in enumerate(sorted(set(sig.values())))}
        colour = {v: palette[sig[v]] for v in g.nodes}
        if len(palette) == n_colours:
            return colour
        n_colours = len(palette)


def _colour_pair(ga: nx.DiGraph, gb: nx.DiGraph):
    """Refine both graphs jointly so colour names are comparable across them."""
    union = nx.disjoint_union(ga, gb)
    colours = _refine(union)
    na = ga.number_of_nodes()
    la = list(ga.nodes)
    lb = list(gb.nodes)
    return (
        {la[i]: colours[i] for i in range(na)},
        {lb[i]: colours[na + i] for i in range(len(lb))},
    )


def iso_check(
    a: Net, b: Net, respect_contention: bool = True, fix_places: bool = False
) -> NetIso | None:
    """Witness isomorphism ``a -> b`` (boundaries fixed pointwise) or ``None``.

    ``fix_places`` additionally requires every place to map to the place of
    the same name.
    """
    if (a.left, a.right, len(a.places), len(a.transitions)) != (
        b.left,
        b.right,
        len(b.places),
        len(b.transitions),
    ):
        return None
    if respect_contention and len(a.contention) != len(b.contention):
        return None

    def shape(net):
        return Counter(
            (len(t.pre), len(t.post), tuple(sorted(t.source)), tuple(sorted(t.target)))
            for t in net.transitions
        )

    if shape(a) != shape(b):
        return None
    if fix_places and set(a.places) != set(b.places):
        return None
    ga = net_graph(a, respect_contention, fix_places)
    gb = net_graph(b, respect_contention, fix_places)
    ca, cb = _colour_pair(ga, gb)
    if Counter(ca.values()) != Counter(cb.values()):
        return None
    nx.set_node_attributes(ga, ca, "colour")
    nx.set_node_attributes(gb, cb, "colour")
    matcher = DiGraphMatcher(
        ga,
        gb,
        node_match=lambda x, y: x["colour"] == y["colour"],
        edge_match=lambda x, y: x["kind"] == y["kind"],
    )
    for mapping in matcher.isomorphisms_iter():
        places = {}
        transitions = {}
        for (kind, name), (_, other) in mapping.items():
            if kind == "p":
                places[name] = other
            elif kind == "t":
                transitions[name] = other
        return NetIso(places, transitions)
    return None


def rename_places(net: Net, mapping: Mapping) -> Net:
    return apply_iso(
        net, NetIso(dict(mapping), {t.name: t.name for t in net.transitions})
    )


def apply_iso(net: Net, iso: NetIso) -> Net:
    """Rename ``net`` along ``iso``."""
    pm, tm = iso.place_map, iso.transition_map
    transitions = [
        Transition(
            tm[t.name],
            frozenset(pm[p] for p in t.pre),
            frozenset(pm[p] for p in t.post),
            t.source,
            t.target,
        )
        for t in net.transitions
    ]
    contention = frozenset(frozenset(tm[x] for x in pair) for pair in net.contention)
    return Net(
        net.left,
        net.right,
        tuple(pm[p] for p in net.places),
        tuple(transitions),
        contention,
    )
