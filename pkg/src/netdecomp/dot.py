"""Graphviz DOT export for nets and boundary automata."""

from __future__ import annotations

from .automata import BoundaryNfa, bit_string
from .net import Net

__all__ = ["compress_labels", "net_to_dot", "nfa_to_dot"]


def _q(s) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def net_to_dot(net: Net, name: str = "net", show_contention: bool = False) -> str:
    """Places are circles, transitions small boxes, boundary ports sit in
    ranked columns on either side."""
    lines = [f"digraph {_q(name)} {{", "  rankdir=LR;", "  node [fontsize=10];"]
    if net.left:
        lines.append(
            "  { rank=source; "
            + " ".join(_q(f"left({i})") for i in range(net.left))
            + " }"
        )
    if net.right:
        lines.append(
            "  { rank=sink; "
            + " ".join(_q(f"right({j})") for j in range(net.right))
            + " }"
        )
    for i in range(net.left):
        lines.append(f"  {_q(f'left({i})')} [shape=plaintext, label={_q(i)}];")
    for j in range(net.right):
        lines.append(f"  {_q(f'right({j})')} [shape=plaintext, label={_q(j)}];")
    for p in net.places:
        lines.append(f"  {_q('p:' + p)} [shape=circle, label={_q(p)}];")
    for t in net.transitions:
        tn = _q("t:" + t.name)
        lines.append(f"  {tn} [shape=box, height=0.2, label={_q(t.name)}];")
        for p in sorted(t.pre):
            lines.append(f"  {_q('p:' + p)} -> {tn};")
        for p in sorted(t.post):
            lines.append(f"  {tn} -> {_q('p:' + p)};")
        for i in sorted(t.source):
            lines.append(f"  {_q(f'left({i})')} -> {tn} [dir=none, style=dotted];")
        for j in sorted(t.target):
            lines.append(f"  {tn} -> {_q(f'right({j})')} [dir=none, style=dotted];")
    if show_contention:
        for a, b in sorted(tuple(sorted(pair)) for pair in net.contention):
            lines.append(
                f"  {_q('t:' + a)} -> {_q('t:' + b)} [dir=none, style=dashed, color=red, constraint=false];"
            )
    lines.append("}")
    return "\n".join(lines) + "\n"


def compress_labels(labels, left: int, right: int) -> list:
    """Cover a set of labels with ``*``-patterns (display only)."""
    width = left + right
    terms = {bit_string(a, left) + bit_string(b, right) for a, b in labels}
    primes = set()
    current = set(terms)
    while current:
        merged = set()
        used = set()
        items = sorted(current)
        for i, x in enumerate(items):
            for y in items[i + 1 :]:
                diff = [k for k in range(width) if x[k] != y[k]]
                if len(diff) == 1 and "*" not in (x[diff[0]], y[diff[0]]):
                    merged.add(x[: diff[0]] + "*" + x[diff[0] + 1 :])
                    used |= {x, y}
        primes |= current - used
        current = merged

    def covers(pattern, term):
        return all(c == "*" or c == d for c, d in zip(pattern, term))

    chosen = []
    remaining = set(terms)
    for pattern in sorted(primes, key=lambda s: (-s.count("*"), s)):
        hit = {t for t in remaining if covers(pattern, t)}
        if hit:
            chosen.append(pattern)
            remaining -= hit
        if not remaining:
            break
    return [f"{p[:left] or 'ε'}/{p[left:] or 'ε'}" for p in sorted(chosen)]


def nfa_to_dot(nfa: BoundaryNfa, name: str = "automaton", compress: bool = True) -> str:
    """Edges labelled ``alpha/beta``; the dead state is left out."""
    lines = [
        f"digraph {_q(name)} {{",
        "  rankdir=LR;",
        "  node [shape=circle, fontsize=10];",
    ]
    lines.append('  __start [shape=point, label=""];')
    for s in range(nfa.n_states):
        if s == nfa.dead:
            continue
        shape = "doublecircle" if s in nfa.finals else "circle"
        lines.append(f"  {s} [shape={shape}];")
    lines.append(f"  __start -> {nfa.initial};")
    grouped: dict = {}
    for s, lab, t in nfa.edges:
        if nfa.dead in (s, t):
            continue
        grouped.setdefault((s, t), []).append(lab)
    for (s, t), labs in sorted(grouped.items()):
        if compress:
            text = "\\n".join(compress_labels(labs, nfa.left, nfa.right))
        else:
            text = "\\n".join(
                f"{bit_string(a, nfa.left) or 'ε'}/{bit_string(b, nfa.right) or 'ε'}"
                for a, b in sorted(labs)
            )
        lines.append(f'  {s} -> {t} [label="{text}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
