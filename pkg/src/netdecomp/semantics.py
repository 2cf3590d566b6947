"""Step-firing semantics: enabled steps, reachable-state automata, closed reachability."""

from __future__ import annotations

from collections.abc import Iterable
from typing import NamedTuple

from . import kernels
from .automata import BoundaryNfa
from .net import Net, NetError

__all__ = [
    "LtsEdge",
    "build_nfa",
    "enabled_steps",
    "reach_monolithic",
    "reachable_markings",
]


class LtsEdge(NamedTuple):
    frm: frozenset
    label: tuple  # (alpha, beta) as bitmasks, bit i = port i
    to: frozenset
    step: frozenset


def enabled_steps(net: Net, marking: Iterable[str], backend=None) -> list:
    """Every edge leaving ``marking``, the idle step first."""
    marking = frozenset(marking)
    x = net.marking_mask(marking)
    names = [t.name for t in net.transitions]
    out = []
    for u, a, b, y in kernels.steps(net.masks, x, backend):
        step = frozenset(names[i] for i in range(len(names)) if u >> i & 1)
        out.append(LtsEdge(marking, (a, b), net.marking_of(y), step))
    return out


def _masks_of(net: Net, markings) -> set:
    return {net.marking_mask(m) for m in markings}


def build_nfa(net: Net, initial: Iterable[str], finals, backend=None) -> BoundaryNfa:
    """Automaton over the markings reachable from ``initial``.

    ``finals`` is a collection of markings; those that are not reachable are
    simply absent from the final states.
    """
    start = net.marking_mask(initial)
    final_masks = _masks_of(net, finals)
    order, edges = kernels.explore(net.masks, start, backend)
    return BoundaryNfa(
        left=net.left,
        right=net.right,
        n_states=len(order),
        initial=0,
        finals=frozenset(i for i, x in enumerate(order) if x in final_masks),
        edges=tuple((i, (a, b), j) for i, a, b, j in edges),
        state_names=tuple(net.marking_of(x) for x in order),
    )


def reachable_markings(net: Net, initial: Iterable[str], backend=None) -> list:
    order, _ = kernels.explore(net.masks, net.marking_mask(initial), backend)
    return [net.marking_of(x) for x in order]


def reach_monolithic(
    net: Net, initial: Iterable[str], final: Iterable[str], backend=None
) -> bool:
    """Breadth-first reachability on a closed net, without any decomposition."""
    if net.left or net.right:
        raise NetError(f"reachability needs a closed net, got {net.left}->{net.right}")
    start = net.marking_mask(initial)
    goal = net.marking_mask(final)
    if start == goal:
        return True
    order, _ = kernels.explore(net.masks, start, backend)
    return goal in set(order)
