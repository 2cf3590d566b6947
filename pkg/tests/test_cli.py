import json
import subprocess
import sys

import pytest

from netdecomp.cli import main
from netdecomp.net import load


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_reach_bundled(capsys):
    code, out, _ = run(capsys, "reach", "--problem", "bundled:tdelta22")
    assert code == 0 and out.strip() == "REACHABLE"


def test_reach_json_stats(capsys):
    code, out, _ = run(
        capsys, "reach", "--problem", "bundled:tdelta22", "--stats", "--json"
    )
    data = json.loads(out)
    assert code == 0 and data["reachable"] is True
    assert data["stats"]["nfa_builds"] == 12
    assert set(data["stats"]) >= {
        "max_intermediate_states",
        "max_intermediate_boundary",
    }


@pytest.mark.parametrize(
    "flags", [[], ["--no-memo"], ["--minimize-mode", "composite"], ["--monolithic"]]
)
def test_reach_variants_agree(capsys, tmp_path, flags):
    problem = tmp_path / "p.json"
    assert (
        main(
            [
                "gen",
                "--family",
                "tdelta",
                "--params",
                "2,2",
                "--problem",
                "--initial",
                "v",
                "--final",
                "v,v.0.0",
                "--out",
                str(problem),
            ]
        )
        == 0
    )
    code, out, _ = run(capsys, "reach", "--problem", str(problem), *flags)
    assert code == 1 and out.strip() == "UNREACHABLE"


def test_width(capsys):
    code, out, _ = run(capsys, "width", "--problem", "bundled:subset5")
    assert code == 0 and out.strip() == "1"
    code, out, _ = run(capsys, "width", "--problem", "bundled:subset5", "--json")
    assert json.loads(out) == {"width": 1, "expr": "R ; P^5 ; bot"}


def test_bound(capsys):
    code, out, _ = run(
        capsys, "bound", "--net", "bundled:splitex", "--partition", "0,1|2,3"
    )
    assert code == 0 and out.strip() == "2"


def test_network_and_dim(capsys):
    _, out, _ = run(
        capsys,
        "network",
        "--net",
        "family:clique(4)",
        "--partition",
        "0,1|2,3",
        "--json",
    )
    data = json.loads(out)
    assert data["l->r"] == ["[<2-in>, <3-in>]", "[<2-out>, <3-out>]"]
    _code, out, _ = run(
        capsys,
        "dim",
        "--net",
        "bundled:splitex",
        "--partition",
        "0,1|2,3",
        "--direction",
        "l->r",
    )
    assert out.strip() == "l->r: 2"


def test_split(capsys, tmp_path):
    left, right = tmp_path / "l.json", tmp_path / "r.json"
    code, out, _ = run(
        capsys,
        "split",
        "--net",
        "bundled:splitex",
        "--partition",
        "0,1|2,3",
        "--out-left",
        str(left),
        "--out-right",
        str(right),
    )
    assert code == 0 and out.strip() == "2"
    assert load(left).right == 2 and load(right).left == 2
    code, out, _ = run(
        capsys,
        "split",
        "--net",
        "bundled:splitex",
        "--partition",
        "0,1|2,3",
        "--max-n",
        "1",
        "--json",
    )
    assert code == 1 and json.loads(out) == {"n": None}


def test_iso(capsys):
    code, out, _ = run(
        capsys, "iso", "--a", "family:clique(3)", "--b", "family:clique(3)", "--json"
    )
    assert code == 0 and json.loads(out)["isomorphic"] is True
    code, out, _ = run(capsys, "iso", "--a", "component:R", "--b", "component:bot")
    assert code == 1 and out.strip() == "NOT ISOMORPHIC"


def test_gen_and_eval(capsys, tmp_path):
    code, out, _ = run(capsys, "gen", "--family", "clique", "--params", "3")
    assert code == 0 and len(json.loads(out)["transitions"]) == 6
    code, out, _ = run(capsys, "gen", "--component", "S")
    assert json.loads(out)["left"] == 2
    code, out, _ = run(capsys, "eval", "--problem", "bundled:subset5")
    assert code == 0 and len(json.loads(out)["transitions"]) == 32


def test_dot(capsys):
    code, out, _ = run(capsys, "dot", "--net", "component:P", "--contention")
    assert code == 0 and out.startswith('digraph "net"') and "dashed" in out
    code, out, _ = run(capsys, "dot", "--problem", "bundled:tdelta22")
    assert code == 0 and "doublecircle" in out
    code, out, _ = run(capsys, "dot", "--net", "component:P", "--json")
    assert json.loads(out)["dot"].startswith("digraph")


@pytest.mark.parametrize(
    "argv",
    [
        ["reach", "--problem", "nowhere.json"],
        ["bound", "--net", "family:clique(4)", "--partition", "0,1"],
        ["gen", "--family", "clique", "--params", "x"],
        ["gen"],
        ["dot"],
        ["width", "--problem", "bundled:splitex"],
    ],
)
def test_errors_exit_two(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "error" in err


def test_error_json(capsys):
    code, out, _ = run(capsys, "reach", "--problem", "nowhere.json", "--json")
    assert code == 2 and "error" in json.loads(out)


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "netdecomp", "width", "--problem", "bundled:tdelta22"],
        capture_output=True,
        check=False,
        text=True,
    )
    assert out.returncode == 0 and out.stdout.strip() == "2"
