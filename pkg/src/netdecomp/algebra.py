"""Composition of nets with boundaries: ``;`` (along a common boundary) and ``⊗``.

Places of a composite are the disjoint union of the components' places,
realised by prefixing ``L/`` and ``R/``.  Nested compositions therefore name
every place by the path of its leaf in the expression tree.
"""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass

from .net import Net, NetError, Transition

__all__ = [
    "SyncResult",
    "Synchronisation",
    "mi_sets",
    "minimal_synchronisations",
    "power",
    "seq_compose",
    "seq_name",
    "tensor",
]


def mi_sets(net: Net, bound: int | None = None) -> Iterator[frozenset]:
    """Yield every mutually independent transition set (including ∅) once.

    ``bound`` caps the cardinality of the emitted sets.
    """
    names = [t.name for t in net.transitions]
    conflicts = net.conflicts

    def rec(start, chosen, blocked):
        yield frozenset(chosen)
        if bound is not None and len(chosen) >= bound:
            return
        for i in range(start, len(names)):
            t = names[i]
            if t in blocked:
                continue
            chosen.append(t)
            yield from rec(i + 1, chosen, blocked | conflicts[t] | {t})
            chosen.pop()

    yield from rec(0, [], frozenset())


@dataclass(frozen=True)
class Synchronisation:
    left_set: frozenset
    right_set: frozenset


@dataclass(frozen=True)
class SyncResult:
    syncs: tuple
    cap_hit: bool


def _footprint(ts, attr) -> frozenset:
    out = set()
    for t in ts:
        out |= getattr(t, attr)
    return frozenset(out)


def minimal_synchronisations(m: Net, n: Net, max_size: int | None = None) -> SyncResult:
    """Enumerate the minimal synchronisations of ``m ; n``.

    Within a mutually independent set the shared-boundary footprints are
    disjoint, so a synchronisation is minimal exactly when its bipartite
    "shares a port" graph is connected.  Each one is grown from its
    lowest-indexed transition by repeatedly covering the smallest unmatched
    shared port; every added transition touches that port, so growth stays
    connected and each synchronisation is produced exactly once.
    """
    if m.right != n.left:
        raise NetError(f"boundary mismatch: {m.left}->{m.right} ; {n.left}->{n.right}")
    tm, tn = m.transitions, n.transitions
    a = len(tm)
    allts = list(tm) + list(tn)
    shared = [t.target for t in tm] + [t.source for t in tn]
    conflicts = []
    for i, t in enumerate(allts):
        if i < a:
            conflicts.append({m.transition_index[u] for u in m.conflicts[t.name]})
        else:
            conflicts.append({a + n.transition_index[u] for u in n.conflicts[t.name]})
    by_target: dict = {}
    by_source: dict = {}
    for i in range(a):
        for j in shared[i]:
            by_target.setdefault(j, []).append(i)
    for i in range(a, len(allts)):
        for j in shared[i]:
            by_source.setdefault(j, []).append(i)
    found = []
    cap_hit = False

    def grow(seed, members, left_ports, right_ports, blocked):
        nonlocal cap_hit
        need_right = left_ports - right_ports  # ports M uses that N does not yet
        need_left = right_ports - left_ports
        if not need_right and not need_left:
            found.append(tuple(sorted(members)))
            return
        if max_size is not None and len(members) >= max_size:
            cap_hit = True
            return
        if need_right and (not need_left or min(need_right) <= min(need_left)):
            port = min(need_right)
            candidates = by_source.get(port, ())
        else:
            port = min(need_left)
            candidates = by_target.get(port, ())
        for c in candidates:
            if c <= seed or c in members or c in blocked:
                continue
            if c < a:
                if shared[c] & left_ports:
                    continue
                grow(
                    seed,
                    members | {c},
                    left_ports | shared[c],
                    right_ports,
                    blocked | conflicts[c],
                )
            else:
                if shared[c] & right_ports:
                    continue
                grow(
                    seed,
                    members | {c},
                    left_ports,
                    right_ports | shared[c],
                    blocked | conflicts[c],
                )

    for seed in range(len(allts)):
        if seed < a:
            grow(
                seed,
                frozenset([seed]),
                shared[seed],
                frozenset(),
                frozenset(conflicts[seed]),
            )
        else:
            grow(
                seed,
                frozenset([seed]),
                frozenset(),
                shared[seed],
                frozenset(conflicts[seed]),
            )

    syncs = []
    for members in sorted(found):
        left_set = frozenset(tm[i].name for i in members if i < a)
        right_set = frozenset(tn[i - a].name for i in members if i >= a)
        syncs.append(Synchronisation(left_set, right_set))
    return SyncResult(tuple(syncs), cap_hit)


def seq_name(left_set, right_set) -> str:
    return "<" + " ".join(sorted(left_set)) + " | " + " ".join(sorted(right_set)) + ">"


def seq_compose(m: Net, n: Net, max_size: int | None = None) -> Net:
    """``m ; n``: transitions are the minimal synchronisations."""
    result = minimal_synchronisations(m, n, max_size)
    if result.cap_hit:
        raise NetError(
            "synchronisation size cap reached; raise max_size to enumerate all minimal synchronisations"
        )
    mt = {t.name: t for t in m.transitions}
    nt = {t.name: t for t in n.transitions}
    lp = {p: "L/" + p for p in m.places}
    rp = {p: "R/" + p for p in n.places}
    transitions = []
    for s in result.syncs:
        us = [mt[u] for u in s.left_set]
        vs = [nt[v] for v in s.right_set]
        transitions.append(
            Transition(
                seq_name(s.left_set, s.right_set),
                frozenset(lp[p] for p in _footprint(us, "pre"))
                | frozenset(rp[p] for p in _footprint(vs, "pre")),
                frozenset(lp[p] for p in _footprint(us, "post"))
                | frozenset(rp[p] for p in _footprint(vs, "post")),
                _footprint(us, "source"),
                _footprint(vs, "target"),
            )
        )
    if len({t.name for t in transitions}) != len(transitions):
        raise NetError("composite transition names collide")
    # (U,V) ⋈ (U',V') iff U ⋈ U' or V ⋈ V'
    mi, ni = m.transition_index, n.transition_index
    reach_m, reach_n, own_m, own_n = [], [], [], []
    for s in result.syncs:
        um = sum(1 << mi[u] for u in s.left_set)
        vm = sum(1 << ni[v] for v in s.right_set)
        own_m.append(um)
        own_n.append(vm)
        rm = um
        for u in s.left_set:
            for w in m.conflicts[u]:
                rm |= 1 << mi[w]
        rn = vm
        for v in s.right_set:
            for w in n.conflicts[v]:
                rn |= 1 << ni[w]
        reach_m.append(rm)
        reach_n.append(rn)
    pairs = set()
    for i in range(len(transitions)):
        for j in range(i + 1, len(transitions)):
            if reach_m[i] & own_m[j] or reach_n[i] & own_n[j]:
                pairs.add(frozenset((transitions[i].name, transitions[j].name)))
    return Net(
        m.left,
        n.right,
        tuple(lp[p] for p in m.places) + tuple(rp[p] for p in n.places),
        tuple(transitions),
        frozenset(pairs),
    )


def tensor(m: Net, n: Net) -> Net:
    """``m ⊗ n``: side by side, ``n``'s boundary indices shifted past ``m``'s."""
    transitions = [
        Transition(
            "L/" + t.name,
            frozenset("L/" + p for p in t.pre),
            frozenset("L/" + p for p in t.post),
            t.source,
            t.target,
        )
        for t in m.transitions
    ] + [
        Transition(
            "R/" + t.name,
            frozenset("R/" + p for p in t.pre),
            frozenset("R/" + p for p in t.post),
            frozenset(i + m.left for i in t.source),
            frozenset(j + m.right for j in t.target),
        )
        for t in n.transitions
    ]
    pairs = {frozenset("L/" + x for x in pair) for pair in m.contention}
    pairs |= {frozenset("R/" + x for x in pair) for pair in n.contention}
    return Net(
        m.left + n.left,
        m.right + n.right,
        tuple("L/" + p for p in m.places) + tuple("R/" + p for p in n.places),
        tuple(transitions),
        frozenset(pairs),
    )


def power(net: Net, k: int) -> Net:
    """Left-associated ``net ; net ; ... ; net`` (``k`` copies)."""
    if k < 1:
        raise NetError("exponent must be at least 1")
    if net.left != net.right:
        raise NetError(f"power needs an endo-net, got {net.left}->{net.right}")
    out = net
    for _ in range(k - 1):
        out = seq_compose(out, net)
    return out
