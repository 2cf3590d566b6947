"""Compositional reachability checking and decomposition analysis for
1-bounded Petri nets with boundaries."""

__version__ = "0.1.0"

from .algebra import mi_sets, minimal_synchronisations, power, seq_compose, tensor
from .automata import (
    BoundaryNfa,
    accepts,
    canonical,
    determinize,
    epsilon_close,
    is_trivially_accepting,
    is_trivially_rejecting,
    minimize,
    seq_product,
    tensor_product,
)
from .engine import EvalStats, ReachabilityProblem, check_reach, eval_nfa
from .expr import Seq, Tensor, Var, eval_net, parse_expr, reassociate, to_text, width
from .families import component, decomp_family, gen_family
from .iso import iso_check
from .kernels import BACKEND
from .net import Net, NetError, Transition, validate
from .semantics import build_nfa, enabled_steps, reach_monolithic
from .structure import (
    OrientedPartition,
    check_proposition,
    dimension,
    is_basis,
    is_pure,
    lower_bound,
    min_pure_split,
    network,
)

__all__ = [
    "BACKEND",
    "BoundaryNfa",
    "EvalStats",
    "Net",
    "NetError",
    "OrientedPartition",
    "ReachabilityProblem",
    "Seq",
    "Tensor",
    "Transition",
    "Var",
    "accepts",
    "build_nfa",
    "canonical",
    "check_proposition",
    "check_reach",
    "component",
    "decomp_family",
    "determinize",
    "dimension",
    "enabled_steps",
    "epsilon_close",
    "eval_net",
    "eval_nfa",
    "gen_family",
    "is_basis",
    "is_pure",
    "is_trivially_accepting",
    "is_trivially_rejecting",
    "iso_check",
    "lower_bound",
    "mi_sets",
    "min_pure_split",
    "minimal_synchronisations",
    "minimize",
    "network",
    "parse_expr",
    "power",
    "reach_monolithic",
    "reassociate",
    "seq_compose",
    "seq_product",
    "tensor",
    "tensor_product",
    "to_text",
    "validate",
    "width",
]
