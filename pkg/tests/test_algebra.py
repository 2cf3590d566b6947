from itertools import combinations, product

import pytest
from helpers import composable_pairs, nets
from hypothesis import given, settings

from netdecomp.algebra import (
    mi_sets,
    minimal_synchronisations,
    power,
    seq_compose,
    tensor,
)
from netdecomp.families import COMPONENTS, component, gen_family
from netdecomp.iso import iso_check
from netdecomp.net import Net, NetError, Transition, validate


def brute_mi_sets(net):
    names = [t.name for t in net.transitions]
    out = set()
    for r in range(len(names) + 1):
        for chosen in combinations(names, r):
            if all(not net.in_contention(a, b) for a, b in combinations(chosen, 2)):
                out.add(frozenset(chosen))
    return out


def footprint(net, names, attr):
    out = set()
    for name in names:
        out |= getattr(net.transition(name), attr)
    return frozenset(out)


def brute_minimal_syncs(m, n):
    """All matched pairs of MI sets, then keep those with no smaller matched pair inside."""
    matched = [
        (u, v)
        for u, v in product(brute_mi_sets(m), brute_mi_sets(n))
        if (u or v) and footprint(m, u, "target") == footprint(n, v, "source")
    ]
    return {
        (u, v)
        for u, v in matched
        if not any((a, b) != (u, v) and a <= u and b <= v for a, b in matched)
    }


def test_mi_sets_in_contention():
    net = Net.build(
        0, 0, ["p"], [Transition("t", pre={"p"}), Transition("u", pre={"p"})]
    )
    assert set(mi_sets(net)) == {frozenset(), frozenset({"t"}), frozenset({"u"})}


def test_mi_sets_independent():
    net = Net.build(
        0, 0, ["p", "q"], [Transition("t", pre={"p"}), Transition("u", pre={"q"})]
    )
    assert set(mi_sets(net)) == {
        frozenset(),
        frozenset({"t"}),
        frozenset({"u"}),
        frozenset({"t", "u"}),
    }


def test_mi_sets_clique_four():
    c4 = gen_family("clique", 4)
    found = list(mi_sets(c4))
    assert len(found) == len(set(found)) == 108
    assert set(found) == brute_mi_sets(c4)
    assert max(len(u) for u in found) == 4


def test_mi_sets_bound():
    c4 = gen_family("clique", 4)
    assert all(len(u) <= 1 for u in mi_sets(c4, bound=1))
    assert len(list(mi_sets(c4, bound=1))) == 13


@given(nets(max_transitions=5))
def test_mi_sets_match_brute_force(net):
    found = list(mi_sets(net))
    assert len(found) == len(set(found))
    assert set(found) == brute_mi_sets(net)


def syncs_of(m, n):
    return {(s.left_set, s.right_set) for s in minimal_synchronisations(m, n).syncs}


def test_wire_with_wire():
    i = component("I")
    assert syncs_of(i, i) == {(frozenset({"t"}), frozenset({"t"}))}


def test_root_with_bottom():
    assert syncs_of(component("R"), component("bot")) == {
        (frozenset({"t"}), frozenset({"t"}))
    }
    net = seq_compose(component("R"), component("bot"))
    (t,) = net.transitions
    assert t.pre == {"L/p"} and t.post == frozenset()
    assert t.source == t.target == frozenset()


def test_relay_pairing_in_s_s():
    s = component("S")
    syncs = syncs_of(s, s)
    assert (frozenset({"sendR"}), frozenset({"recvR"})) in syncs
    assert syncs == brute_minimal_syncs(s, s)


@pytest.mark.parametrize("a", COMPONENTS)
@pytest.mark.parametrize("b", COMPONENTS)
def test_library_syncs_match_brute_force(a, b):
    m, n = component(a), component(b)
    if m.right != n.left:
        with pytest.raises(NetError):
            minimal_synchronisations(m, n)
        return
    assert syncs_of(m, n) == brute_minimal_syncs(m, n)


@settings(max_examples=80)
@given(composable_pairs())
def test_random_syncs_match_brute_force(pair):
    m, n = pair
    result = minimal_synchronisations(m, n)
    assert not result.cap_hit
    assert len(result.syncs) == len(set(result.syncs))
    assert syncs_of(m, n) == brute_minimal_syncs(m, n)


def test_size_cap_is_reported():
    fork = Net.build(0, 2, ["p"], [Transition("t", pre={"p"}, target={0, 1})])
    join = Net.build(
        2,
        0,
        ["a", "b"],
        [
            Transition("u", source={0}, post={"a"}),
            Transition("v", source={1}, post={"b"}),
        ],
    )
    assert minimal_synchronisations(fork, join).syncs[0].right_set == {"u", "v"}
    assert not minimal_synchronisations(fork, join, max_size=3).cap_hit
    assert minimal_synchronisations(fork, join, max_size=2).cap_hit
    with pytest.raises(NetError):
        seq_compose(fork, join, max_size=2)


@settings(max_examples=80)
@given(composable_pairs())
def test_composite_contention_is_valid(pair):
    m, n = pair
    # a handshake touching nothing else is a legitimate composite transition,
    # so only the contention conditions are checked here
    for net in (seq_compose(m, n), tensor(m, n)):
        assert [msg for msg in validate(net) if "contention" in msg] == []


def test_wire_law():
    i = component("I")
    assert iso_check(seq_compose(i, i), i) is not None
    assert iso_check(power(i, 5), i) is not None


def test_subset_identity():
    net = seq_compose(
        seq_compose(component("R"), power(component("Psub"), 3)), component("bot")
    )
    assert (len(net.places), len(net.transitions)) == (4, 8)
    assert iso_check(net, gen_family("subset", 3)) is not None


def _clique_composite(n):
    up, down = component("up"), component("down")
    return seq_compose(
        seq_compose(tensor(up, up), power(component("S"), n)), tensor(down, down)
    )


def test_clique_identity_up_to_contention():
    net = _clique_composite(4)
    assert (len(net.places), len(net.transitions)) == (4, 12)
    assert iso_check(net, gen_family("clique", 4), respect_contention=False) is not None


def test_clique_three_identity_is_exact():
    assert iso_check(_clique_composite(3), gen_family("clique", 3)) is not None


def test_clique_four_relay_shares_wire():
    # a rightward relay and a crossing one share a wire segment, so the
    # composite has strictly more contention pairs than C_4 (an iso invariant)
    net = _clique_composite(4)
    c4 = gen_family("clique", 4)
    assert len(net.contention) == len(c4.contention) + 4
    assert iso_check(net, c4) is None


def test_tensor_examples():
    up = component("up")
    uu = tensor(up, up)
    assert (uu.left, uu.right, uu.places, uu.transitions) == (0, 2, (), ())
    i = component("I")
    ii = tensor(i, i)
    assert (ii.left, ii.right) == (2, 2)
    a, b = ii.transitions
    assert (a.source, a.target, b.source, b.target) == ({0}, {0}, {1}, {1})
    assert not ii.in_contention(a.name, b.name)


@pytest.mark.parametrize("a", COMPONENTS)
@pytest.mark.parametrize("b", COMPONENTS)
def test_tensor_place_count(a, b):
    m, n = component(a), component(b)
    assert len(tensor(m, n).places) == len(m.places) + len(n.places)


def test_power():
    assert len(power(component("S"), 2).places) == 2
    p3 = power(component("P"), 3)
    assert (p3.left, p3.right, len(p3.places)) == (1, 1, 3)
    with pytest.raises(NetError):
        power(component("R"), 2)
    with pytest.raises(NetError):
        power(component("I"), 0)


def _triples(pred):
    names = COMPONENTS
    for a, b, c in product(names, repeat=3):
        x, y, z = component(a), component(b), component(c)
        if pred(x, y, z):
            yield a, b, c


SEQ_TRIPLES = list(_triples(lambda x, y, z: x.right == y.left and y.right == z.left))
TENSOR_TRIPLES = [t for i, t in enumerate(_triples(lambda *_: True)) if i % 7 == 0]


@pytest.mark.parametrize("a, b, c", SEQ_TRIPLES)
def test_seq_associative_up_to_iso(a, b, c):
    x, y, z = component(a), component(b), component(c)
    lhs = seq_compose(seq_compose(x, y), z)
    rhs = seq_compose(x, seq_compose(y, z))
    assert iso_check(lhs, rhs) is not None


@pytest.mark.parametrize("a, b, c", TENSOR_TRIPLES)
def test_tensor_associative_up_to_iso(a, b, c):
    x, y, z = component(a), component(b), component(c)
    assert iso_check(tensor(tensor(x, y), z), tensor(x, tensor(y, z))) is not None


def test_seq_boundary_mismatch():
    with pytest.raises(NetError):
        seq_compose(component("R"), component("R"))


def test_composite_names():
    net = seq_compose(component("R"), component("bot"))
    assert net.places == ("L/p",)
    assert net.transitions[0].name == "<t | t>"
