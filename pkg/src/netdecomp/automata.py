"""Automata over boundary labels.

A label is a pair ``(alpha, beta)`` of bitmasks over the left and right
boundary ports.  The all-zero label is the silent symbol ε.  Every state
carries an implicit ε self-loop (the idle step), and languages are taken up
to ε, so a word is a sequence of non-zero labels.

Deterministic automata are kept partial: a missing transition goes to the
dead state.  When a DFA is not complete over the full alphabet of
``2**(left + right) - 1`` symbols, an explicit ``dead`` state (numbered last,
with no edges) stands for that sink.
"""

from __future__ import annotations

import random
from collections.abc import Iterable
from dataclasses import dataclass, field

__all__ = [
    "EPS",
    "AutomatonError",
    "BoundaryNfa",
    "accepts",
    "bit_string",
    "canonical",
    "determinize",
    "epsilon_close",
    "format_label",
    "is_deterministic",
    "is_trivially_accepting",
    "is_trivially_rejecting",
    "language_equal",
    "minimize",
    "random_nfa",
    "sample_words",
    "seq_product",
    "tensor_product",
]

EPS = (0, 0)


class AutomatonError(ValueError):
    pass


@dataclass(frozen=True)
class BoundaryNfa:
    left: int
    right: int
    n_states: int
    initial: int
    finals: frozenset
    edges: tuple  # sorted (src, (alpha, beta), dst)
    dead: int | None = None
    state_names: tuple = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "finals", frozenset(self.finals))
        object.__setattr__(self, "edges", tuple(sorted(set(self.edges))))
        if not 0 <= self.initial < self.n_states:
            raise AutomatonError("initial state out of range")
        if any(not 0 <= f < self.n_states for f in self.finals):
            raise AutomatonError("final state out of range")
        amax, bmax = 1 << self.left, 1 << self.right
        for s, (a, b), t in self.edges:
            if not (0 <= s < self.n_states and 0 <= t < self.n_states):
                raise AutomatonError(f"edge ({s}, {t}) out of range")
            if not (0 <= a < amax and 0 <= b < bmax):
                raise AutomatonError(
                    f"label {(a, b)} too wide for {self.left}/{self.right}"
                )

    @property
    def alphabet_size(self) -> int:
        """Number of non-ε symbols."""
        return (1 << (self.left + self.right)) - 1

    def out_edges(self) -> list:
        out = [[] for _ in range(self.n_states)]
        for s, lab, t in self.edges:
            out[s].append((lab, t))
        return out

    @property
    def live_states(self) -> int:
        return self.n_states - (self.dead is not None)

    def __repr__(self) -> str:
        dead = "" if self.dead is None else f", dead={self.dead}"
        return (
            f"BoundaryNfa({self.left}/{self.right}, states={self.n_states}, "
            f"edges={len(self.edges)}, finals={sorted(self.finals)}{dead})"
        )


def _eps_closures(nfa: BoundaryNfa) -> list:
    succ = [[] for _ in range(nfa.n_states)]
    for s, lab, t in nfa.edges:
        if lab == EPS and s != t:
            succ[s].append(t)
    closures = []
    for s in range(nfa.n_states):
        seen = {s}
        stack = [s]
        while stack:
            for t in succ[stack.pop()]:
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        closures.append(frozenset(seen))
    return closures


def accepts(nfa: BoundaryNfa, word: Iterable) -> bool:
    """Membership of ``word`` (ε letters are ignored) by on-the-fly simulation."""
    closures = _eps_closures(nfa)
    out = nfa.out_edges()
    current = set(closures[nfa.initial])
    for lab in word:
        lab = tuple(lab)
        if lab == EPS:
            continue
        nxt = set()
        for s in current:
            for l2, t in out[s]:
                if l2 == lab:
                    nxt |= closures[t]
        current = nxt
        if not current:
            return False
    return bool(current & nfa.finals)


def _renumber(left, right, initial, finals, out, names=()) -> BoundaryNfa:
    """BFS from ``initial`` over edges sorted by (label, target); drops unreachable states."""
    new = {initial: 0}
    order = [initial]
    i = 0
    while i < len(order):
        for _, t in sorted(out[order[i]]):
            if t not in new:
                new[t] = len(order)
                order.append(t)
        i += 1
    edges = [(new[s], lab, new[t]) for s in order for lab, t in out[s]]
    return BoundaryNfa(
        left,
        right,
        len(order),
        0,
        frozenset(new[s] for s in order if s in finals),
        tuple(edges),
        None,
        tuple(names[s] for s in order) if names else (),
    )


def epsilon_close(nfa: BoundaryNfa) -> BoundaryNfa:
    """Equivalent automaton without ε edges, trimmed to reachable states."""
    closures = _eps_closures(nfa)
    out = nfa.out_edges()
    new_out = []
    finals = set()
    for s in range(nfa.n_states):
        edges = set()
        for q in closures[s]:
            for lab, t in out[q]:
                if lab != EPS:
                    edges.add((lab, t))
        new_out.append(edges)
        if closures[s] & nfa.finals:
            finals.add(s)
    return _renumber(nfa.left, nfa.right, nfa.initial, finals, new_out, nfa.state_names)


def is_deterministic(nfa: BoundaryNfa) -> bool:
    seen = set()
    for s, lab, _ in nfa.edges:
        if lab == EPS or (s, lab) in seen:
            return False
        seen.add((s, lab))
    return True


def _with_dead(left, right, n, initial, finals, out, names=()) -> BoundaryNfa:
    """Assemble a partial DFA, adding an explicit dead state if it is incomplete."""
    full = (1 << (left + right)) - 1
    complete = all(len(out[s]) == full for s in range(n))
    edges = [(s, lab, t) for s in range(n) for lab, t in out[s].items()]
    if complete:
        return BoundaryNfa(left, right, n, initial, finals, tuple(edges), None, names)
    return BoundaryNfa(
        left,
        right,
        n + 1,
        initial,
        finals,
        tuple(edges),
        n,
        tuple(names) + (None,) if names else (),
    )


def determinize(nfa: BoundaryNfa) -> BoundaryNfa:
    """Subset construction; the alphabet is materialised lazily from the edges."""
    if any(lab == EPS for _, lab, _ in nfa.edges):
        raise AutomatonError(
            "determinize needs an ε-free automaton; run epsilon_close first"
        )
    out = nfa.out_edges()
    start = frozenset([nfa.initial])
    index = {start: 0}
    subsets = [start]
    dfa_out = []
    i = 0
    while i < len(subsets):
        moves: dict = {}
        for s in subsets[i]:
            for lab, t in out[s]:
                moves.setdefault(lab, set()).add(t)
        row = {}
        for lab in sorted(moves):
            target = frozenset(moves[lab])
            j = index.get(target)
            if j is None:
                j = index[target] = len(subsets)
                subsets.append(target)
            row[lab] = j
        dfa_out.append(row)
        i += 1
    finals = frozenset(i for i, sub in enumerate(subsets) if sub & nfa.finals)
    names = tuple(subsets)
    return _with_dead(nfa.left, nfa.right, len(subsets), 0, finals, dfa_out, names)


def minimize(dfa: BoundaryNfa) -> BoundaryNfa:
    """Minimal DFA, canonically numbered: BFS from the initial state over sorted
    symbols, with the dead state (if needed) last.  Equal languages give equal
    automata."""
    if not is_deterministic(dfa):
        raise AutomatonError("minimize needs a deterministic automaton")
    n = dfa.n_states
    delta = [{} for _ in range(n)]
    back = [[] for _ in range(n)]
    for s, lab, t in dfa.edges:
        delta[s][lab] = t
        back[t].append(s)
    # live = reachable from the initial state and co-reachable to a final one
    reach = {dfa.initial}
    stack = [dfa.initial]
    while stack:
        for t in delta[stack.pop()].values():
            if t not in reach:
                reach.add(t)
                stack.append(t)
    coreach = {f for f in dfa.finals if f in reach}
    stack = list(coreach)
    while stack:
        for s in back[stack.pop()]:
            if s in reach and s not in coreach:
                coreach.add(s)
                stack.append(s)
    live = sorted(coreach)
    full = dfa.alphabet_size
    if dfa.initial not in coreach:
        if full == 0:
            return BoundaryNfa(dfa.left, dfa.right, 1, 0, frozenset(), (), None)
        return BoundaryNfa(dfa.left, dfa.right, 1, 0, frozenset(), (), 0)
    symbols = sorted({lab for s in live for lab in delta[s]})
    cls = {s: int(s in dfa.finals) for s in live}
    n_classes = len(set(cls.values()))
    while True:
        sig = {}
        new_cls = {}
        for s in live:
            key = (cls[s],) + tuple(cls.get(delta[s].get(lab), -1) for lab in symbols)
            new_cls[s] = sig.setdefault(key, len(sig))
        cls = new_cls
        if len(sig) == n_classes:
            break
        n_classes = len(sig)
    rep = {}
    for s in live:
        rep.setdefault(cls[s], s)
    # canonical BFS numbering
    start = cls[dfa.initial]
    number = {start: 0}
    order = [start]
    i = 0
    rows = []
    while i < len(order):
        s = rep[order[i]]
        row = {}
        for lab in symbols:
            t = delta[s].get(lab)
            if t is None or t not in cls:
                continue
            c = cls[t]
            if c not in number:
                number[c] = len(order)
                order.append(c)
            row[lab] = number[c]
        rows.append(row)
        i += 1
    finals = frozenset(i for i, c in enumerate(order) if rep[c] in dfa.finals)
    return _with_dead(dfa.left, dfa.right, len(order), 0, finals, rows)


def canonical(nfa: BoundaryNfa) -> BoundaryNfa:
    """ε-close, determinize and minimize."""
    return minimize(determinize(epsilon_close(nfa)))


def language_equal(a: BoundaryNfa, b: BoundaryNfa) -> bool:
    return (a.left, a.right) == (b.left, b.right) and canonical(a) == canonical(b)


def _out_with_idle(nfa: BoundaryNfa) -> list:
    out = [[(EPS, s)] for s in range(nfa.n_states)]
    for s, lab, t in nfa.edges:
        if not (lab == EPS and s == t):
            out[s].append((lab, t))
    return out


def _product(a: BoundaryNfa, b: BoundaryNfa, left, right, combine) -> BoundaryNfa:
    out_a = _out_with_idle(a)
    out_b = _out_with_idle(b)
    start = (a.initial, b.initial)
    index = {start: 0}
    pairs = [start]
    edges = set()
    i = 0
    while i < len(pairs):
        x, y = pairs[i]
        for lab, t in combine(out_a[x], out_b[y]):
            if lab == EPS and t == (x, y):
                continue
            j = index.get(t)
            if j is None:
                j = index[t] = len(pairs)
                pairs.append(t)
            edges.add((i, lab, j))
        i += 1
    finals = frozenset(
        i for i, (x, y) in enumerate(pairs) if x in a.finals and y in b.finals
    )
    return BoundaryNfa(
        left, right, len(pairs), 0, finals, tuple(edges), None, tuple(pairs)
    )


def seq_product(a: BoundaryNfa, b: BoundaryNfa) -> BoundaryNfa:
    """Synchronise ``a``'s right labels with ``b``'s left labels."""
    if a.right != b.left:
        raise AutomatonError(f"width mismatch: {a.left}/{a.right} ; {b.left}/{b.right}")

    def combine(ea, eb):
        by_gamma = {}
        for (g, beta), t in eb:
            by_gamma.setdefault(g, []).append((beta, t))
        for (alpha, g), s in ea:
            for beta, t in by_gamma.get(g, ()):
                yield (alpha, beta), (s, t)

    return _product(a, b, a.left, b.right, combine)


def tensor_product(a: BoundaryNfa, b: BoundaryNfa) -> BoundaryNfa:
    """Run side by side; ``b``'s ports come after ``a``'s on each boundary."""
    sl, sr = a.left, a.right

    def combine(ea, eb):
        for (a1, b1), s in ea:
            for (a2, b2), t in eb:
                yield (a1 | (a2 << sl), b1 | (b2 << sr)), (s, t)

    return _product(a, b, a.left + b.left, a.right + b.right, combine)


def _closed_verdict(nfa: BoundaryNfa) -> bool:
    if nfa.left or nfa.right:
        raise AutomatonError(
            f"triviality is only defined for width 0/0, got {nfa.left}/{nfa.right}"
        )
    d = canonical(nfa)
    assert d.n_states == 1
    return d.initial in d.finals


def is_trivially_accepting(nfa: BoundaryNfa) -> bool:
    return _closed_verdict(nfa)


def is_trivially_rejecting(nfa: BoundaryNfa) -> bool:
    return not _closed_verdict(nfa)


def bit_string(x: int, width: int) -> str:
    return "".join("1" if x >> i & 1 else "0" for i in range(width))


def format_label(label, left: int, right: int) -> str:
    """``alpha/beta`` with port 0 first; an empty boundary prints as ``ε``."""
    a, b = label
    return f"{bit_string(a, left) or 'ε'}/{bit_string(b, right) or 'ε'}"


def sample_words(
    nfa: BoundaryNfa, rng: random.Random, count: int, max_len: int = 6
) -> list:
    """Mix of uniformly random words and words read off random walks, so both
    accepted and rejected words show up."""
    out = nfa.out_edges()
    words = []
    for k in range(count):
        length = rng.randint(0, max_len)
        if k % 2 == 0 or not nfa.edges:
            words.append(
                [
                    (rng.randrange(1 << nfa.left), rng.randrange(1 << nfa.right))
                    for _ in range(length)
                ]
            )
        else:
            s = nfa.initial
            word = []
            for _ in range(length):
                if not out[s]:
                    break
                lab, s = rng.choice(out[s])
                word.append(lab)
            words.append(word)
    return words


def random_nfa(
    rng: random.Random, left: int, right: int, n_states: int, n_edges: int
) -> BoundaryNfa:
    """Random automaton for property tests; ε edges are allowed."""
    edges = [
        (
            rng.randrange(n_states),
            (rng.randrange(1 << left), rng.randrange(1 << right)),
            rng.randrange(n_states),
        )
        for _ in range(n_edges)
    ]
    finals = frozenset(s for s in range(n_states) if rng.random() < 0.3)
    return BoundaryNfa(left, right, n_states, 0, finals, tuple(edges))
