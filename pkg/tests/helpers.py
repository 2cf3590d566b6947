"""Shared strategies and generators for the test-suite."""

import random
from itertools import combinations

from hypothesis import strategies as st

from netdecomp.net import Net, Transition


@st.composite
def nets(
    draw, max_places=4, max_transitions=4, left=None, right=None, extra_contention=True
):
    """Small random nets with boundaries; contention is the minimal relation
    plus, optionally, a few arbitrary extra pairs."""
    left = draw(st.integers(0, 2)) if left is None else left
    right = draw(st.integers(0, 2)) if right is None else right
    places = [f"p{i}" for i in range(draw(st.integers(0, max_places)))]
    some_places = (
        st.frozensets(st.sampled_from(places), max_size=2)
        if places
        else st.just(frozenset())
    )
    ts = []
    for i in range(draw(st.integers(0, max_transitions))):
        t = Transition(
            f"t{i}",
            draw(some_places),
            draw(some_places),
            draw(st.frozensets(st.integers(0, left - 1), max_size=2))
            if left
            else frozenset(),
            draw(st.frozensets(st.integers(0, right - 1), max_size=2))
            if right
            else frozenset(),
        )
        if not t.is_empty:
            ts.append(t)
    net = Net.build(left, right, places, ts)
    if extra_contention and len(ts) >= 2:
        pairs = list(combinations([t.name for t in ts], 2))
        extra = draw(st.lists(st.sampled_from(pairs), max_size=2))
        net = Net(
            left,
            right,
            net.places,
            net.transitions,
            net.contention | {frozenset(p) for p in extra},
        )
    return net


@st.composite
def composable_pairs(draw, max_places=3, max_transitions=3, max_shared=2):
    k = draw(st.integers(0, max_shared))
    m = draw(nets(max_places, max_transitions, left=draw(st.integers(0, 1)), right=k))
    n = draw(nets(max_places, max_transitions, left=k, right=draw(st.integers(0, 1))))
    return m, n


def random_closed_net(rng: random.Random, n_places: int, n_transitions: int) -> Net:
    places = [str(i) for i in range(n_places)]
    ts = []
    for i in range(n_transitions):
        pre = frozenset(rng.sample(places, rng.randint(1, min(2, n_places))))
        post = frozenset(rng.sample(places, rng.randint(0, min(2, n_places)))) - pre
        ts.append(Transition(f"t{i}", pre, post))
    return Net.build(0, 0, places, ts)
