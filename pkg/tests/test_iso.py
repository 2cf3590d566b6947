import random

from helpers import nets
from hypothesis import given
from hypothesis import strategies as st

from netdecomp.families import component, gen_family
from netdecomp.iso import apply_iso, iso_check, rename_places
from netdecomp.net import Net, Transition, dumps, loads, validate


def shuffled(net, rng):
    """Rename and reorder places and transitions."""
    places = list(net.places)
    rng.shuffle(places)
    pm = {p: f"q{i}" for i, p in enumerate(places)}
    ts = list(net.transitions)
    rng.shuffle(ts)
    tm = {t.name: f"u{i}" for i, t in enumerate(ts)}
    new_ts = [
        Transition(
            tm[t.name],
            {pm[p] for p in t.pre},
            {pm[p] for p in t.post},
            t.source,
            t.target,
        )
        for t in ts
    ]
    pairs = {frozenset(tm[x] for x in pair) for pair in net.contention}
    return Net(net.left, net.right, [pm[p] for p in places], new_ts, frozenset(pairs))


def same_net(a, b):
    return (
        (a.left, a.right) == (b.left, b.right)
        and set(a.places) == set(b.places)
        and set(a.transitions) == set(b.transitions)
        and a.contention == b.contention
    )


def test_permuted_places():
    c = gen_family("clique", 4)
    perm = Net(0, 0, tuple(reversed(c.places)), c.transitions, c.contention)
    iso = iso_check(c, perm)
    assert iso is not None


def test_boundary_mismatch():
    assert iso_check(component("R"), component("bot")) is None


def test_contention_matters():
    a = Net.build(
        0, 0, ["p", "q"], [Transition("t", pre={"p"}), Transition("u", pre={"q"})]
    )
    b = Net(0, 0, a.places, a.transitions, frozenset({frozenset({"t", "u"})}))
    assert iso_check(a, b) is None
    assert iso_check(a, b, respect_contention=False) is not None


def test_boundary_ports_are_fixed():
    a = Net.build(
        0, 2, [], [Transition("t", target={0}), Transition("u", target={0, 1})]
    )
    b = Net.build(
        0, 2, [], [Transition("t", target={1}), Transition("u", target={0, 1})]
    )
    assert iso_check(a, b) is None


def test_fixed_places():
    c = gen_family("clique", 3)
    swapped = rename_places(c, {"0": "1", "1": "0", "2": "2"})
    assert iso_check(swapped, c) is not None
    iso = iso_check(swapped, c, fix_places=True)
    assert iso is not None and iso.place_map == {"0": "0", "1": "1", "2": "2"}
    other = rename_places(c, {"0": "a", "1": "1", "2": "2"})
    assert iso_check(other, c, fix_places=True) is None


@given(nets(max_places=4, max_transitions=5), st.integers(0, 10**6))
def test_relabelled_nets_are_isomorphic(net, seed):
    other = shuffled(net, random.Random(seed))
    iso = iso_check(net, other)
    assert iso is not None
    assert iso_check(other, net) is not None
    image = apply_iso(net, iso)
    assert validate(image) == validate(net)
    assert loads(dumps(image)) == image
    assert same_net(image, other)


@given(nets(max_places=3, max_transitions=3), nets(max_places=3, max_transitions=3))
def test_symmetry(a, b):
    assert (iso_check(a, b) is None) == (iso_check(b, a) is None)


def test_deterministic_witness():
    c = gen_family("clique", 5)
    perm = shuffled(c, random.Random(3))
    assert iso_check(c, perm) == iso_check(c, perm)
