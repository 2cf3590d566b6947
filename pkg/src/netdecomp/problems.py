"""JSON problem files and net references.

A net reference is one of

* a path to a net JSON file (relative paths resolve against ``base``),
* an inline net object,
* ``"family:NAME(args)"``, e.g. ``"family:clique(4)"``,
* ``"component:NAME"``, e.g. ``"component:Ldelta"``,
* ``"bundled:NAME"`` for a file shipped in the package's data directory.

A problem file is ``{"expr": ..., "bindings": {var: ref}, "initial": M,
"final": M}`` where ``M`` is either an object from leaf paths to place lists
or a list of places of the evaluated expression (``"L/R/p"`` style).
"""

from __future__ import annotations

import json
from collections.abc import Mapping
from importlib import resources
from pathlib import Path

from .engine import ReachabilityProblem
from .expr import ExprError, parse_expr, to_text
from .families import component, gen_family, parse_family_spec
from .net import Net, NetError, from_dict, to_dict

__all__ = [
    "ProblemError",
    "bundled_names",
    "bundled_path",
    "load_problem",
    "problem_from_dict",
    "problem_to_dict",
    "resolve_net",
]


class ProblemError(ValueError):
    pass


def bundled_names() -> list:
    root = resources.files("netdecomp") / "data"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def bundled_path(name: str):
    path = resources.files("netdecomp") / "data" / f"{name}.json"
    if not path.is_file():
        raise ProblemError(
            f"no bundled file {name!r}; available: {', '.join(bundled_names())}"
        )
    return path


def _read_json(path) -> object:
    try:
        return json.loads(Path(str(path)).read_text())
    except OSError as exc:
        raise ProblemError(f"{path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise ProblemError(
            f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc


def resolve_net(ref, base: Path | None = None) -> Net:
    if isinstance(ref, Net):
        return ref
    if isinstance(ref, Mapping):
        return from_dict(ref)
    if not isinstance(ref, str):
        raise ProblemError(f"cannot interpret net reference {ref!r}")
    if ref.startswith("family:"):
        return gen_family(parse_family_spec(ref[len("family:") :]))
    if ref.startswith("component:"):
        return component(ref[len("component:") :])
    if ref.startswith("bundled:"):
        data = _read_json(bundled_path(ref[len("bundled:") :]))
        return from_dict(data)
    path = Path(ref)
    if base is not None and not path.is_absolute():
        path = base / path
    try:
        return from_dict(_read_json(path))
    except NetError as exc:
        raise ProblemError(f"{path}: {exc}") from exc


def _markings(raw) -> tuple:
    """``(per_leaf, global)``; exactly one is not ``None``."""
    if raw is None:
        return {}, None
    if isinstance(raw, list):
        return None, [str(p) for p in raw]
    if isinstance(raw, Mapping):
        return {str(k): [str(p) for p in v] for k, v in raw.items()}, None
    raise ProblemError(f"marking must be a list or an object, got {type(raw).__name__}")


def problem_from_dict(data: Mapping, base: Path | None = None) -> ReachabilityProblem:
    if "expr" not in data:
        raise ProblemError("problem has no 'expr'")
    expr = parse_expr(str(data["expr"]))
    env = {}
    for var, ref in dict(data.get("bindings", {})).items():
        try:
            env[var] = resolve_net(ref, base)
        except NetError as exc:
            raise ProblemError(f"binding {var!r}: {exc}") from exc
    init_leaf, init_global = _markings(data.get("initial"))
    fin_leaf, fin_global = _markings(data.get("final"))
    if init_global is not None or fin_global is not None:
        if init_leaf or fin_leaf:
            raise ProblemError(
                "give both markings per leaf or both as global place lists"
            )
        return ReachabilityProblem.from_global(
            expr, env, init_global or [], fin_global or []
        )
    return ReachabilityProblem(expr, env, init_leaf, fin_leaf)


def load_problem(ref: str) -> ReachabilityProblem:
    if ref.startswith("bundled:"):
        path = bundled_path(ref[len("bundled:") :])
        return problem_from_dict(_read_json(path))
    path = Path(ref)
    data = _read_json(path)
    if not isinstance(data, Mapping):
        raise ProblemError(f"{path}: a problem file must hold a JSON object")
    try:
        return problem_from_dict(data, path.parent)
    except (ExprError, NetError) as exc:
        raise ProblemError(f"{path}: {exc}") from exc


def problem_to_dict(
    problem: ReachabilityProblem, bindings: Mapping | None = None
) -> dict:
    """Serialise with per-leaf markings; ``bindings`` may supply references
    (e.g. ``"component:R"``) instead of inlined nets."""
    bindings = dict(bindings or {})
    return {
        "expr": to_text(problem.expr),
        "bindings": {
            var: bindings.get(var, to_dict(net))
            for var, net in sorted(problem.env.items())
        },
        "initial": {p: sorted(m) for p, m in sorted(problem.initial.items()) if m},
        "final": {p: sorted(m) for p, m in sorted(problem.final.items()) if m},
    }
