# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernels, semantically identical to _kernels_py.

Any change here must be mirrored in the pure Python module; the parity
tests compare outputs element for element.
"""

import numpy as np

cimport cython
from libc.stdlib cimport free, malloc

UNDIRECTED = 0
FORWARD = 1
REVERSE = 2
BOTH = 3

cdef unsigned char M_UNDIRECTED = 0
cdef unsigned char M_FORWARD = 1
cdef unsigned char M_REVERSE = 2
cdef unsigned char M_BOTH = 3


def greedy_defective(n, k, bound, indptr, adj_v):
    """See _kernels_py.greedy_defective."""
    cdef long long nn = n
    cdef long long kk = k
    cdef long long bnd = bound
    cdef long long[::1] iptr = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef long long[::1] adj = np.ascontiguousarray(adj_v, dtype=np.int64)

    colors_np = np.zeros(nn, dtype=np.int32)
    cdef int[::1] colors = colors_np
    cnt_np = np.zeros(nn * kk, dtype=np.int64)
    cdef long long[::1] cnt = cnt_np
    cdef unsigned char* in_q = <unsigned char*> malloc(nn if nn > 0 else 1)
    # ring buffer: the in-queue flag caps live entries at n
    cdef long long cap = nn + 1
    cdef long long* ring = <long long*> malloc(cap * sizeof(long long))
    if in_q == NULL or ring == NULL:
        free(in_q)
        free(ring)
        raise MemoryError()

    pots_np = np.empty(adj.shape[0] // 2 + 1, dtype=np.int64)
    cdef long long[::1] pots = pots_np
    cdef long long npots = 0

    cdef long long v, w, i, base, wb, head, tail, cold, cnew, potential
    try:
        for v in range(nn):
            in_q[v] = 0
            cnt[v * kk] = iptr[v + 1] - iptr[v]
        potential = adj.shape[0] // 2
        head = 0
        tail = 0
        for v in range(nn):
            if cnt[v * kk] > bnd:
                ring[tail] = v
                tail = (tail + 1) % cap
                in_q[v] = 1
        while head != tail:
            v = ring[head]
            head = (head + 1) % cap
            in_q[v] = 0
            base = v * kk
            cold = colors[v]
            if cnt[base + cold] <= bnd:
                continue
            cnew = 0
            while cnt[base + cnew] > bnd:
                cnew += 1
                if cnew >= kk:
                    raise AssertionError("no admissible color; pigeonhole violated")
            potential += cnt[base + cnew] - cnt[base + cold]
            if npots >= pots.shape[0]:
                raise AssertionError("more recolorings than edges; potential not decreasing")
            pots[npots] = potential
            npots += 1
            colors[v] = <int> cnew
            for i in range(iptr[v], iptr[v + 1]):
                w = adj[i]
                wb = w * kk
                cnt[wb + cold] -= 1
                cnt[wb + cnew] += 1
                if colors[w] == cnew and cnt[wb + cnew] > bnd and not in_q[w]:
                    ring[tail] = w
                    tail = (tail + 1) % cap
                    in_q[w] = 1
    finally:
        free(in_q)
        free(ring)
    return colors_np, pots_np[:npots].copy()


def uf_labels(n, eu, ev, active):
    """See _kernels_py.uf_labels."""
    cdef long long nn = n
    cdef long long[::1] ceu = np.ascontiguousarray(eu, dtype=np.int64)
    cdef long long[::1] cev = np.ascontiguousarray(ev, dtype=np.int64)
    cdef unsigned char[::1] act
    cdef bint has_act = active is not None
    if has_act:
        act = np.ascontiguousarray(active, dtype=np.uint8)

    parent_np = np.arange(nn, dtype=np.int64)
    cdef long long[::1] parent = parent_np
    size_np = np.ones(nn, dtype=np.int64)
    cdef long long[::1] size = size_np

    cdef long long i, a, b, v, r, tmp
    cdef long long e = ceu.shape[0]
    for i in range(e):
        if has_act and act[i] == 0:
            continue
        a = ceu[i]
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        b = cev[i]
        while parent[b] != b:
            parent[b] = parent[parent[b]]
            b = parent[b]
        if a == b:
            continue
        if size[a] < size[b] or (size[a] == size[b] and b < a):
            tmp = a
            a = b
            b = tmp
        parent[b] = a
        size[a] += size[b]
    out_np = np.empty(nn, dtype=np.int64)
    cdef long long[::1] out = out_np
    for v in range(nn):
        r = v
        while parent[r] != r:
            parent[r] = parent[parent[r]]
            r = parent[r]
        out[v] = r
    return out_np


def orient_marks(n, indptr, adj_v, adj_e, eu, ev, anchors, e_total):
    """See _kernels_py.orient_marks."""
    cdef long long nn = n
    cdef long long et = e_total
    cdef long long[::1] iptr = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef long long[::1] cav = np.ascontiguousarray(adj_v, dtype=np.int64)
    cdef long long[::1] cae = np.ascontiguousarray(adj_e, dtype=np.int64)
    cdef long long[::1] ceu = np.ascontiguousarray(eu, dtype=np.int64)
    cdef long long[::1] cev = np.ascontiguousarray(ev, dtype=np.int64)
    cdef long long[::1] canc = np.ascontiguousarray(anchors, dtype=np.int64)

    marks_np = np.zeros(et, dtype=np.uint8)
    cdef unsigned char[::1] marks = marks_np
    settled_np = np.zeros(nn, dtype=np.uint8)
    cdef unsigned char[::1] settled = settled_np
    alive_np = np.empty(nn, dtype=np.int64)
    cdef long long[::1] alive = alive_np
    peeled_np = np.zeros(nn, dtype=np.uint8)
    cdef unsigned char[::1] peeled = peeled_np
    ptr_np = np.empty(nn, dtype=np.int64)
    cdef long long[::1] ptr = ptr_np
    queue_np = np.empty(nn if nn > 0 else 1, dtype=np.int64)
    cdef long long[::1] queue = queue_np

    cdef long long a, v, w, i, t, s, head, tail, cur
    cdef long long best_w, best_e, nxt_w, nxt_e

    for i in range(canc.shape[0]):
        a = canc[i]
        marks[a] = M_BOTH
        settled[ceu[a]] = 1
        settled[cev[a]] = 1

    for v in range(nn):
        alive[v] = iptr[v + 1] - iptr[v]
        ptr[v] = iptr[v]

    head = 0
    tail = 0
    for v in range(nn):
        if alive[v] == 1:
            queue[tail] = v
            tail += 1
    while head < tail:
        v = queue[head]
        head += 1
        if alive[v] != 1:
            continue
        peeled[v] = 1
        alive[v] = 0
        i = ptr[v]
        while peeled[cav[i]]:
            i += 1
        ptr[v] = i
        w = cav[i]
        alive[w] -= 1
        if alive[w] == 1:
            queue[tail] = w
            tail += 1

    for s in range(nn):
        if alive[s] < 2 or settled[s]:
            continue
        best_w = -1
        best_e = -1
        for i in range(iptr[s], iptr[s + 1]):
            w = cav[i]
            if alive[w] >= 2 and marks[cae[i]] == M_UNDIRECTED and (best_w == -1 or w < best_w):
                best_w = w
                best_e = cae[i]
        marks[best_e] = M_FORWARD if ceu[best_e] == s else M_REVERSE
        settled[s] = 1
        cur = best_w
        while cur != s:
            settled[cur] = 1
            nxt_w = -1
            nxt_e = -1
            for i in range(iptr[cur], iptr[cur + 1]):
                w = cav[i]
                t = cae[i]
                if alive[w] >= 2 and marks[t] == M_UNDIRECTED:
                    nxt_w = w
                    nxt_e = t
                    break
            marks[nxt_e] = M_FORWARD if ceu[nxt_e] == cur else M_REVERSE
            cur = nxt_w

    head = 0
    tail = 0
    for v in range(nn):
        if settled[v]:
            queue[tail] = v
            tail += 1
    while head < tail:
        v = queue[head]
        head += 1
        for i in range(iptr[v], iptr[v + 1]):
            w = cav[i]
            if not settled[w]:
                settled[w] = 1
                t = cae[i]
                marks[t] = M_FORWARD if ceu[t] == w else M_REVERSE
                queue[tail] = w
                tail += 1
    return marks_np
