"""Pure-Python firing kernels.

Nets arrive as bitmask arrays (see :class:`netdecomp.net.NetMasks`).  A step
is a mutually independent set ``U`` of transitions that are individually
enabled at the marking; because pre-sets (post-sets) of independent
transitions are disjoint, every such set is enabled as a whole.
"""


def steps(pre, post, src, tgt, conflict, marking):
    """All enabled steps at ``marking`` as ``(umask, alpha, beta, next_marking)``.

    The empty step comes first; the rest follow in depth-first order over
    transition indices.
    """
    enabled = [
        t
        for t in range(len(pre))
        if not (pre[t] & ~marking) and not (post[t] & marking)
    ]
    out = []
    ne = len(enabled)

    def rec(start, u, blocked, pm, qm, a, b):
        out.append((u, a, b, (marking & ~pm) | qm))
        for j in range(start, ne):
            t = enabled[j]
            if blocked >> t & 1:
                continue
            rec(
                j + 1,
                u | (1 << t),
                blocked | conflict[t],
                pm | pre[t],
                qm | post[t],
                a | src[t],
                b | tgt[t],
            )

    rec(0, 0, 0, 0, 0, 0, 0)
    return out


def explore(pre, post, src, tgt, conflict, initial):
    """Breadth-first exploration of the markings reachable from ``initial``.

    Returns ``(markings, edges)``; ``markings[i]`` is state ``i`` and each edge
    is ``(i, alpha, beta, j)``.  Edges out of a state are de-duplicated and
    sorted by ``(alpha, beta, next_marking)``, which also fixes state numbering.
    """
    index = {initial: 0}
    order = [initial]
    edges = []
    i = 0
    while i < len(order):
        x = order[i]
        labelled = sorted(
            {(a, b, y) for _, a, b, y in steps(pre, post, src, tgt, conflict, x)}
        )
        for a, b, y in labelled:
            j = index.get(y)
            if j is None:
                j = index[y] = len(order)
                order.append(y)
            edges.append((i, a, b, j))
        i += 1
    return order, edges
