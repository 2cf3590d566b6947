# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled firing kernels; same contract as ``_kernels_py`` for nets with at
most 64 places, 64 transitions and boundaries of width at most 64."""

from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, realloc, free, qsort


cdef struct Step:
    uint64_t a
    uint64_t b
    uint64_t y
    uint64_t u


cdef struct Buf:
    Step* data
    size_t n
    size_t cap


cdef struct Arrs:
    int nt
    uint64_t* pre
    uint64_t* post
    uint64_t* src
    uint64_t* tgt
    uint64_t* conflict


cdef int push(Buf* buf, uint64_t u, uint64_t a, uint64_t b, uint64_t y) except -1:
    cdef Step* grown
    if buf.n == buf.cap:
        grown = <Step*> realloc(buf.data, 2 * buf.cap * sizeof(Step))
        if grown == NULL:
            raise MemoryError()
        buf.data = grown
        buf.cap *= 2
    buf.data[buf.n].u = u
    buf.data[buf.n].a = a
    buf.data[buf.n].b = b
    buf.data[buf.n].y = y
    buf.n += 1
    return 0


cdef int enum_steps(Buf* buf, Arrs* n, int* enabled, int ne, int start,
                    uint64_t marking, uint64_t u, uint64_t blocked,
                    uint64_t pm, uint64_t qm, uint64_t a, uint64_t b) except -1:
    cdef int j, t
    cdef uint64_t one = 1
    push(buf, u, a, b, (marking & ~pm) | qm)
    for j in range(start, ne):
        t = enabled[j]
        if (blocked >> t) & one:
            continue
        enum_steps(buf, n, enabled, ne, j + 1, marking,
                   u | (one << t), blocked | n.conflict[t],
                   pm | n.pre[t], qm | n.post[t], a | n.src[t], b | n.tgt[t])
    return 0


cdef int collect(Buf* buf, Arrs* n, uint64_t marking) except -1:
    cdef int* enabled = <int*> malloc((n.nt + 1) * sizeof(int))
    cdef int ne = 0
    cdef int t
    if enabled == NULL:
        raise MemoryError()
    try:
        for t in range(n.nt):
            if (n.pre[t] & ~marking) == 0 and (n.post[t] & marking) == 0:
                enabled[ne] = t
                ne += 1
        buf.n = 0
        enum_steps(buf, n, enabled, ne, 0, marking, 0, 0, 0, 0, 0, 0)
    finally:
        free(enabled)
    return 0


cdef int cmp_step(const void* p, const void* q) noexcept nogil:
    cdef Step* x = <Step*> p
    cdef Step* y = <Step*> q
    if x.a != y.a:
        return -1 if x.a < y.a else 1
    if x.b != y.b:
        return -1 if x.b < y.b else 1
    if x.y != y.y:
        return -1 if x.y < y.y else 1
    return 0


cdef int load(Arrs* n, pre, post, src, tgt, conflict) except -1:
    cdef int t
    n.nt = len(pre)
    n.pre = <uint64_t*> malloc((n.nt + 1) * sizeof(uint64_t))
    n.post = <uint64_t*> malloc((n.nt + 1) * sizeof(uint64_t))
    n.src = <uint64_t*> malloc((n.nt + 1) * sizeof(uint64_t))
    n.tgt = <uint64_t*> malloc((n.nt + 1) * sizeof(uint64_t))
    n.conflict = <uint64_t*> malloc((n.nt + 1) * sizeof(uint64_t))
    if not (n.pre and n.post and n.src and n.tgt and n.conflict):
        release(n)
        raise MemoryError()
    for t in range(n.nt):
        n.pre[t] = pre[t]
        n.post[t] = post[t]
        n.src[t] = src[t]
        n.tgt[t] = tgt[t]
        n.conflict[t] = conflict[t]
    return 0


cdef void release(Arrs* n):
    free(n.pre)
    free(n.post)
    free(n.src)
    free(n.tgt)
    free(n.conflict)


cdef int new_buf(Buf* buf) except -1:
    buf.cap = 64
    buf.n = 0
    buf.data = <Step*> malloc(buf.cap * sizeof(Step))
    if buf.data == NULL:
        raise MemoryError()
    return 0


def steps(pre, post, src, tgt, conflict, marking):
    cdef Arrs n
    cdef Buf buf
    cdef size_t i
    load(&n, pre, post, src, tgt, conflict)
    try:
        new_buf(&buf)
        try:
            collect(&buf, &n, marking)
            return [(buf.data[i].u, buf.data[i].a, buf.data[i].b, buf.data[i].y)
                    for i in range(buf.n)]
        finally:
            free(buf.data)
    finally:
        release(&n)


def explore(pre, post, src, tgt, conflict, initial):
    cdef Arrs n
    cdef Buf buf
    cdef size_t i, k
    cdef Py_ssize_t cur = 0
    cdef uint64_t x
    index = {initial: 0}
    order = [initial]
    edges = []
    load(&n, pre, post, src, tgt, conflict)
    try:
        new_buf(&buf)
        try:
            while cur < len(order):
                x = order[cur]
                collect(&buf, &n, x)
                qsort(buf.data, buf.n, sizeof(Step), cmp_step)
                for i in range(buf.n):
                    if i > 0 and cmp_step(&buf.data[i], &buf.data[i - 1]) == 0:
                        continue
                    y = buf.data[i].y
                    j = index.get(y)
                    if j is None:
                        j = len(order)
                        index[y] = j
                        order.append(y)
                    edges.append((cur, buf.data[i].a, buf.data[i].b, j))
                cur += 1
        finally:
            free(buf.data)
    finally:
        release(&n)
    return order, edges
