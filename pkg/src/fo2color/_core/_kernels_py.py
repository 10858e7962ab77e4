"""Pure Python kernels for the hot inner loops.

These are the reference implementations; fo2color._core._speedups holds a
Cython mirror with identical semantics. Every function here must stay
bit-for-bit deterministic so the two backends are interchangeable:

* greedy_defective  -- sequential recoloring worklist (defective coloring)
* uf_labels         -- connected-component labels over a subset of edges
* orient_marks      -- per-edge direction marks for pseudoforest components

Arrays cross the boundary as numpy (int64 indices, uint8 flags); the loops
run on plain Python lists, which are faster than scalar numpy indexing.
"""

import numpy as np

UNDIRECTED = 0
FORWARD = 1
REVERSE = 2
BOTH = 3


def greedy_defective(n, k, bound, indptr, adj_v):
    """Recolor until every vertex has at most `bound` same-colored incident
    half-edges (parallel edges count with multiplicity).

    Starts all-zero and processes a FIFO worklist of violating vertices;
    each step recolors to the smallest admissible color. Returns
    (colors int32[n], potentials int64[r]) where potentials[i] is the
    monochromatic-edge count after the i-th recoloring. The sequence is
    strictly decreasing, which bounds the number of steps by the edge count.
    """
    indptr = indptr.tolist()
    adj = adj_v.tolist()
    colors = [0] * n
    cnt = [0] * (n * k)  # cnt[v*k + c]: incident half-edges whose far end has color c
    for v in range(n):
        cnt[v * k] = indptr[v + 1] - indptr[v]
    potential = len(adj) // 2  # every edge is monochromatic at the start
    pots = []
    in_q = bytearray(n)
    queue = []
    for v in range(n):
        if cnt[v * k] > bound:
            queue.append(v)
            in_q[v] = 1
    head = 0
    while head < len(queue):
        v = queue[head]
        head += 1
        in_q[v] = 0
        base = v * k
        cold = colors[v]
        if cnt[base + cold] <= bound:
            continue  # fixed by an earlier recoloring while queued
        cnew = 0
        while cnt[base + cnew] > bound:
            cnew += 1
            if cnew >= k:
                raise AssertionError("no admissible color; pigeonhole violated")
        potential += cnt[base + cnew] - cnt[base + cold]
        pots.append(potential)
        colors[v] = cnew
        for i in range(indptr[v], indptr[v + 1]):
            w = adj[i]
            wb = w * k
            cnt[wb + cold] -= 1
            cnt[wb + cnew] += 1
            if colors[w] == cnew and cnt[wb + cnew] > bound and not in_q[w]:
                queue.append(w)
                in_q[w] = 1
    return (
        np.array(colors, dtype=np.int32),
        np.array(pots, dtype=np.int64),
    )


def uf_labels(n, eu, ev, active):
    """Union-find component labels considering only edges with active[i] != 0
    (active=None means all edges). Returns int64[n] of component roots.

    Union by size, ties broken toward the smaller root id, so labels are
    identical across backends.
    """
    eu = eu.tolist()
    ev = ev.tolist()
    act = None if active is None else active.tolist()
    parent = list(range(n))
    size = [1] * n
    for i in range(len(eu)):
        if act is not None and not act[i]:
            continue
        a = eu[i]
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        b = ev[i]
        while parent[b] != b:
            parent[b] = parent[parent[b]]
            b = parent[b]
        if a == b:
            continue
        if size[a] < size[b] or (size[a] == size[b] and b < a):
            a, b = b, a
        parent[b] = a
        size[a] += size[b]
    out = np.empty(n, dtype=np.int64)
    for v in range(n):
        r = v
        while parent[r] != r:
            parent[r] = parent[parent[r]]
            r = parent[r]
        out[v] = r
    return out


def orient_marks(n, indptr, adj_v, adj_e, eu, ev, anchors, e_total):
    """Direction marks for a graph whose active components all have
    cyclomatic number <= 1 (caller guarantees this).

    The CSR arrays (indptr/adj_v/adj_e) cover exactly the active edges;
    adj_e holds original edge ids and eu/ev the full endpoint arrays.
    `anchors` lists the minimum edge id of every acyclic component with at
    least one edge; those edges are marked BOTH. Unicyclic components get
    their unique cycle oriented consistently starting from the smallest
    cycle vertex toward its smallest-id cycle neighbor; every remaining
    vertex points along its path toward the cycle or anchor.

    Returns uint8[e_total] marks (inactive edges stay UNDIRECTED).
    """
    indptr = indptr.tolist()
    adj_v = adj_v.tolist()
    adj_e = adj_e.tolist()
    eu = eu.tolist()
    ev = ev.tolist()
    marks = bytearray(e_total)
    settled = bytearray(n)

    for a in anchors.tolist():
        marks[a] = BOTH
        settled[eu[a]] = 1
        settled[ev[a]] = 1

    # Peel degree-1 vertices to expose the cycles; alive[v] >= 2 afterwards
    # exactly on cycle vertices.
    alive = [indptr[v + 1] - indptr[v] for v in range(n)]
    peeled = bytearray(n)
    ptr = indptr[:n]
    queue = [v for v in range(n) if alive[v] == 1]
    head = 0
    while head < len(queue):
        v = queue[head]
        head += 1
        if alive[v] != 1:
            continue
        peeled[v] = 1
        alive[v] = 0
        i = ptr[v]
        while peeled[adj_v[i]]:
            i += 1
        ptr[v] = i
        w = adj_v[i]
        alive[w] -= 1
        if alive[w] == 1:
            queue.append(w)

    # Orient each cycle; scanning ids ascending makes the start vertex the
    # smallest on its cycle.
    for s in range(n):
        if alive[s] < 2 or settled[s]:
            continue
        best_w = -1
        best_e = -1
        for i in range(indptr[s], indptr[s + 1]):
            w = adj_v[i]
            if alive[w] >= 2 and marks[adj_e[i]] == UNDIRECTED and (best_w == -1 or w < best_w):
                best_w = w
                best_e = adj_e[i]
        marks[best_e] = FORWARD if eu[best_e] == s else REVERSE
        settled[s] = 1
        cur = best_w
        while cur != s:
            settled[cur] = 1
            nxt_w = -1
            nxt_e = -1
            for i in range(indptr[cur], indptr[cur + 1]):
                w = adj_v[i]
                t = adj_e[i]
                if alive[w] >= 2 and marks[t] == UNDIRECTED:
                    nxt_w = w
                    nxt_e = t
                    break
            marks[nxt_e] = FORWARD if eu[nxt_e] == cur else REVERSE
            cur = nxt_w

    # BFS outward: every unsettled vertex points at its first settled
    # neighbor in queue order.
    queue = [v for v in range(n) if settled[v]]
    head = 0
    while head < len(queue):
        u = queue[head]
        head += 1
        for i in range(indptr[u], indptr[u + 1]):
            w = adj_v[i]
            if not settled[w]:
                settled[w] = 1
                t = adj_e[i]
                marks[t] = FORWARD if eu[t] == w else REVERSE
                queue.append(w)
    return np.frombuffer(bytes(marks), dtype=np.uint8).copy()
