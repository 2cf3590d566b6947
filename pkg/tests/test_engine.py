import random

import pytest

from netdecomp.automata import canonical
from netdecomp.engine import MINIMIZE_MODES, ReachabilityProblem, check_reach, eval_nfa
from netdecomp.expr import (
    ExprError,
    Var,
    eval_net,
    leaves,
    node_count,
    parse_expr,
    subterms,
)
from netdecomp.families import component, decomp_family, gen_family
from netdecomp.net import Net, NetError
from netdecomp.semantics import build_nfa, reach_monolithic

LEAVES = ["v.0.0", "v.0.1", "v.1.0", "v.1.1"]


def tree_problem(k, final):
    return decomp_family("tdelta", 2, k).problem(["v"], final)


def test_tree_reaches_leaves():
    verdict, stats = check_reach(tree_problem(2, LEAVES))
    assert verdict is True
    assert (stats.nodes, stats.distinct_subterms, stats.nfa_builds) == (23, 12, 12)
    assert stats.cache_hits == stats.nodes - stats.nfa_builds
    assert stats.max_intermediate_boundary == 2


def test_tree_root_and_leaf_unreachable():
    verdict, _ = check_reach(tree_problem(2, ["v", "v.0.0"]))
    assert verdict is False


def test_root_automaton_is_trivial():
    nfa, _ = eval_nfa(tree_problem(2, LEAVES))
    assert (nfa.left, nfa.right, nfa.n_states, nfa.finals, nfa.edges) == (
        0,
        0,
        1,
        {0},
        (),
    )


def test_empty_net_problem():
    env = {"E": Net.build(0, 0, [], [])}
    verdict, stats = check_reach(ReachabilityProblem(Var("E"), env))
    assert verdict is True and stats.nfa_builds == 1


def test_single_leaf_is_the_pipeline():
    net = gen_family("clique", 3)
    problem = ReachabilityProblem(Var("C"), {"C": net}, {"": {"0"}}, {"": {"2"}})
    nfa, _ = eval_nfa(problem)
    assert nfa == canonical(build_nfa(net, {"0"}, [{"2"}]))


def test_subset_problem():
    d = decomp_family("subset", 3)
    assert check_reach(d.problem(["S"], ["0", "2"]))[0] is True
    assert check_reach(d.problem(["S"], ["S", "0"]))[0] is False
    p = d.problem(["S"], ["0", "2"])
    assert p.initial == {"LL": {"p"}}
    assert set(p.final) == {"LRLL", "LRR"}


def _distinct_keys(problem):
    """Independent count: a node's key is its subterm plus the markings of its leaves."""
    keys = set()
    for path, x in subterms(problem.expr):
        marks = tuple(
            (
                name,
                problem.leaf_marking("initial", path + sub),
                problem.leaf_marking("final", path + sub),
            )
            for sub, name in leaves(x)
        )
        keys.add((x, marks))
    return len(keys)


def test_deep_tree_memo_counts():
    problem = tree_problem(8, [])
    _nfa, stats = eval_nfa(problem)
    assert stats.nodes == node_count(problem.expr) == 2039
    assert stats.nfa_builds == stats.distinct_subterms == _distinct_keys(problem) == 36
    assert stats.nfa_builds < stats.nodes


@pytest.mark.parametrize("mode", MINIMIZE_MODES)
def test_memo_is_transparent(mode):
    problem = tree_problem(3, ["v.0.0.0", "v.1.1.1"])
    a, sa = eval_nfa(problem, memo=True, minimize_mode=mode)
    b, sb = eval_nfa(problem, memo=False, minimize_mode=mode)
    assert a == b
    assert sb.nfa_builds == sb.nodes and sb.cache_hits == 0
    assert sa.nfa_builds <= sa.distinct_subterms


def test_modes_agree_on_root():
    problem = tree_problem(2, LEAVES)
    roots = {eval_nfa(problem, minimize_mode=m)[0] for m in MINIMIZE_MODES}
    assert len(roots) == 1


def test_unknown_mode():
    with pytest.raises(ValueError):
        eval_nfa(tree_problem(1, []), minimize_mode="never")


def test_problem_validation():
    env = {"R": component("R"), "bot": component("bot")}
    e = parse_expr("R ; bot")
    with pytest.raises(ExprError):
        ReachabilityProblem(e, env, {"X": {"p"}}, {})
    with pytest.raises(NetError):
        ReachabilityProblem(e, env, {"L": {"q"}}, {})
    with pytest.raises(ExprError):
        ReachabilityProblem(parse_expr("R ; nope"), env)
    with pytest.raises(ExprError):
        check_reach(ReachabilityProblem(Var("R"), env))


def test_global_markings_round_trip():
    d = decomp_family("tlambda", 2, 2)
    net = eval_net(d.expr, d.env)
    places = list(net.places)
    problem = ReachabilityProblem.from_global(d.expr, d.env, places[:2], places[-3:])
    assert problem.to_global("initial") == set(places[:2])
    assert problem.to_global("final") == set(places[-3:])
    with pytest.raises(NetError):
        ReachabilityProblem.from_global(d.expr, d.env, ["L/zzz"], [])


@pytest.mark.parametrize(
    "family, params",
    [
        ("tdelta", (2, 2)),
        ("tlambda", (2, 2)),
        ("clique", (4,)),
        ("subset", (3,)),
        ("grid", (3,)),
    ],
)
def test_agrees_with_monolithic(family, params):
    rng = random.Random(7)
    d = decomp_family(family, *params)
    net = gen_family(family, *params)
    for _ in range(10):
        x = [p for p in net.places if rng.random() < 0.4]
        y = [p for p in net.places if rng.random() < 0.4]
        assert check_reach(d.problem(x, y))[0] is reach_monolithic(net, x, y)
