import json

import pytest

from netdecomp.engine import check_reach
from netdecomp.families import component, decomp_family, gen_family
from netdecomp.net import dumps, to_dict
from netdecomp.problems import (
    ProblemError,
    bundled_names,
    load_problem,
    problem_from_dict,
    problem_to_dict,
    resolve_net,
)


def test_bundled_files():
    assert bundled_names() == ["splitex", "subset5", "tdelta22"]
    assert check_reach(load_problem("bundled:tdelta22"))[0] is True
    assert resolve_net("bundled:splitex").places == ("0", "1", "2", "3")
    with pytest.raises(ProblemError):
        load_problem("bundled:nothing")


def test_references(tmp_path):
    assert resolve_net("family:clique(3)") == gen_family("clique", 3)
    assert resolve_net("component:S") == component("S")
    assert resolve_net(to_dict(component("P"))) == component("P")
    (tmp_path / "r.json").write_text(dumps(component("R")))
    assert resolve_net("r.json", tmp_path) == component("R")
    with pytest.raises(ProblemError):
        resolve_net(42)
    with pytest.raises(ProblemError):
        resolve_net("missing.json", tmp_path)


def test_round_trip_through_json(tmp_path):
    d = decomp_family("tlambda", 2, 2)
    problem = d.problem(["v"], ["v.0.1", "v.1"])
    path = tmp_path / "p.json"
    path.write_text(json.dumps(problem_to_dict(problem)))
    again = load_problem(str(path))
    assert again.expr == problem.expr
    assert again.initial == {k: v for k, v in problem.initial.items() if v}
    assert check_reach(again)[0] == check_reach(problem)[0]


def test_global_markings():
    data = {
        "expr": "R ; bot",
        "bindings": {"R": "component:R", "bot": "component:bot"},
        "initial": ["L/p"],
        "final": [],
    }
    problem = problem_from_dict(data)
    assert problem.initial == {"L": {"p"}}
    assert check_reach(problem)[0] is True
    data["final"] = {"L": ["p"]}
    with pytest.raises(ProblemError):
        problem_from_dict(data)


def test_bad_files(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ProblemError, match="invalid JSON"):
        load_problem(str(bad))
    bad.write_text("[1, 2]")
    with pytest.raises(ProblemError):
        load_problem(str(bad))
    bad.write_text(json.dumps({"bindings": {}}))
    with pytest.raises(ProblemError):
        load_problem(str(bad))
    bad.write_text(json.dumps({"expr": "R ;", "bindings": {}}))
    with pytest.raises(ProblemError):
        load_problem(str(bad))
