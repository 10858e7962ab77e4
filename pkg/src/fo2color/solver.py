"""Exact FO 2-coloring search: decide, count, extend and port tables.

Depth-first search over vertices in id order (color 0 before 1) with an
incremental union-find tracking the cyclomatic number of every
monochromatic component among assigned vertices; any component reaching
cyclomatic number 2 prunes the branch, which is sound because same-colored
components only ever gain edges as the coloring grows.

Two propagation rules keep gadget-style graphs (built from doubled and
tripled edges) nearly deterministic:

* vertices joined by >= 3 parallel edges must differ;
* once a vertex sits in a monochromatic component with cyclomatic number 1,
  any uncolored neighbor joined to it by >= 2 parallel edges must take the
  other color.

Failed subtrees report the set of decision levels their contradiction
depends on, and the search backjumps over decisions that were not
involved. Jumps only skip provably solution-free regions, so the first
solution found is still the lexicographically smallest and counting stays
exact.
"""

from __future__ import annotations

import itertools
import os
import time
from collections import deque
from dataclasses import dataclass

from .graph import Multigraph

_DEFAULT_MAX_NODES = 50_000_000


class _IndeterminateType:
    """Singleton marker for budget-exhausted results."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INDETERMINATE"

    def __bool__(self):
        return False


INDETERMINATE = _IndeterminateType()


class SearchBudgetExceeded(Exception):
    """Raised by port_table when a pattern's search runs out of budget."""


@dataclass(frozen=True)
class SolveLimits:
    """Search budgets. Exhausting one yields an explicit indeterminate
    result, never a wrong answer. max_nodes counts attempted assignments
    (decisions and propagated implications)."""

    max_nodes: int | None = None
    time_budget: float | None = None

    def resolved_max_nodes(self) -> int:
        if self.max_nodes is not None:
            return self.max_nodes
        env = os.environ.get("FO2_BUDGET_NODES")
        return int(env) if env else _DEFAULT_MAX_NODES


@dataclass(frozen=True)
class SolveResult:
    status: str  # 'yes' | 'no' | 'indeterminate'
    coloring: list[int] | None
    nodes: int

    @property
    def is_yes(self):
        return self.status == "yes"

    @property
    def is_no(self):
        return self.status == "no"

    @property
    def is_indeterminate(self):
        return self.status == "indeterminate"


@dataclass(frozen=True)
class PortTable:
    """External color patterns (tuples over the ordered ports) that extend
    to a complete FO 2-coloring of the gadget graph."""

    ports: tuple[int, ...]
    patterns: frozenset

    def allows(self, pattern) -> bool:
        return tuple(pattern) in self.patterns


class _Budget(Exception):
    pass


_NOJUMP = object()


class _Frame:
    __slots__ = ("v", "level", "mark", "c", "conf", "saw")

    def __init__(self, v, level, mark):
        self.v = v
        self.level = level
        self.mark = mark
        self.c = 0
        self.conf = set()
        self.saw = False


class _Search:
    """Single-use search engine over one graph."""

    def __init__(self, g: Multigraph, limits: SolveLimits | None, mode: str):
        limits = limits or SolveLimits()
        self.mode = mode
        self.n = g.vertex_count
        self.max_nodes = limits.resolved_max_nodes()
        self.deadline = (
            time.monotonic() + limits.time_budget if limits.time_budget is not None else None
        )
        self.nodes = 0

        # Collapsed adjacency: per-vertex (neighbor, multiplicity), sorted.
        mult: dict[tuple[int, int], int] = {}
        eu, ev = g.endpoint_arrays()
        for u, v in zip(eu.tolist(), ev.tolist()):
            key = (u, v) if u < v else (v, u)
            mult[key] = mult.get(key, 0) + 1
        self.adj = [[] for _ in range(self.n)]
        for (u, v), m in sorted(mult.items()):
            self.adj[u].append((v, m))
            self.adj[v].append((u, m))
        for lst in self.adj:
            lst.sort()
        self.dbl = [[(w, m) for (w, m) in lst if m >= 2] for lst in self.adj]
        self.trip = [[w for (w, m) in lst if m >= 3] for lst in self.adj]

        self.color = [-1] * self.n
        self.deps: list = [None] * self.n
        self.parent = list(range(self.n))
        self.size = [1] * self.n
        self.cedges = [0] * self.n
        self.cdeps: list = [None] * self.n
        self.nxt = list(range(self.n))  # circular member list per component
        self.trail: list = []
        self.pending: deque = deque()

        self.witness: list[int] | None = None
        self.solutions = 0

    # -- union-find with undo ------------------------------------------

    def _find(self, v):
        p = self.parent
        while p[v] != v:
            v = p[v]
        return v

    def _members(self, root):
        out = [root]
        u = self.nxt[root]
        while u != root:
            out.append(u)
            u = self.nxt[u]
        return out

    def _undo_to(self, mark):
        trail = self.trail
        while len(trail) > mark:
            rec = trail.pop()
            op = rec[0]
            if op == "A":
                v = rec[1]
                self.color[v] = -1
                self.deps[v] = None
                self.cdeps[v] = None
                self.cedges[v] = 0
            elif op == "E":
                self.cedges[rec[1]] -= rec[2]
            else:  # merge: ('M', child, root, old_size, old_edges, old_deps)
                _, child, root, old_size, old_edges, old_deps = rec
                self.parent[child] = child
                self.size[root] = old_size
                self.cedges[root] = old_edges
                self.cdeps[root] = old_deps
                self.nxt[child], self.nxt[root] = self.nxt[root], self.nxt[child]

    # -- assignment and propagation ------------------------------------

    def _scan_doubled(self, members, root_deps):
        """Queue rule-(b) implications for every uncolored doubled neighbor
        of the given members (their component has cyclomatic number 1)."""
        color = self.color
        for u in members:
            forced = 1 - color[u]
            for w, _ in self.dbl[u]:
                if color[w] == -1:
                    self.pending.append((w, forced, root_deps))

    def _link(self, v, w, m):
        """Account for the m parallel edges between same-colored v and w.
        Returns a conflict dependency set or None."""
        ra = self._find(v)
        rb = self._find(w)
        if ra == rb:
            old_cyc = self.cedges[ra] - self.size[ra] + 1
            self.cedges[ra] += m
            self.trail.append(("E", ra, m))
            if old_cyc + m >= 2:
                return self.cdeps[ra]
            if old_cyc <= 0 and old_cyc + m == 1:
                self._scan_doubled(self._members(ra), self.cdeps[ra])
            return None
        cyc_a = self.cedges[ra] - self.size[ra] + 1
        cyc_b = self.cedges[rb] - self.size[rb] + 1
        if self.size[ra] < self.size[rb] or (self.size[ra] == self.size[rb] and rb < ra):
            ra, rb = rb, ra
            cyc_a, cyc_b = cyc_b, cyc_a
        new_cyc = cyc_a + cyc_b + m - 1
        scan = None
        if new_cyc == 1:
            if cyc_a == 1:
                scan = self._members(rb)
            elif cyc_b == 1:
                scan = self._members(ra)
            else:
                scan = self._members(ra) + self._members(rb)
        self.trail.append(("M", rb, ra, self.size[ra], self.cedges[ra], self.cdeps[ra]))
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.cedges[ra] += self.cedges[rb] + m
        merged_deps = self.cdeps[ra] | self.cdeps[rb]
        self.cdeps[ra] = merged_deps
        self.nxt[rb], self.nxt[ra] = self.nxt[ra], self.nxt[rb]
        if new_cyc >= 2:
            return merged_deps
        if scan is not None:
            self._scan_doubled(scan, merged_deps)
        return None

    def _place(self, v, c, dep):
        """Color one vertex, update components, queue implications."""
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise _Budget()
        if self.deadline is not None and self.nodes % 256 == 0:
            if time.monotonic() > self.deadline:
                raise _Budget()
        self.trail.append(("A", v))
        self.color[v] = c
        self.deps[v] = dep
        self.cdeps[v] = dep
        color = self.color
        for w, m in self.adj[v]:
            if color[w] == c:
                conf = self._link(v, w, m)
                if conf is not None:
                    return conf
        for w in self.trip[v]:
            if color[w] == -1:
                self.pending.append((w, 1 - c, dep))
        r = self._find(v)
        if self.cedges[r] - self.size[r] + 1 == 1:
            forced = 1 - c
            for w, _ in self.dbl[v]:
                if color[w] == -1:
                    self.pending.append((w, forced, self.cdeps[r]))
        return None

    def _assign(self, v, c, dep):
        """Place v and drain the implication queue. Returns a conflict
        dependency set or None."""
        self.pending.clear()
        conf = self._place(v, c, dep)
        while conf is None and self.pending:
            w, cw, dw = self.pending.popleft()
            cur = self.color[w]
            if cur == cw:
                continue
            if cur == 1 - cw:
                conf = dw | self.deps[w]
                break
            conf = self._place(w, cw, dw)
        self.pending.clear()
        return conf

    # -- main loop ------------------------------------------------------

    def run(self, pins) -> str:
        for v in sorted(pins):
            c = pins[v]
            if self.color[v] == c:
                continue
            if self.color[v] == 1 - c:
                return "no"
            try:
                if self._assign(v, c, frozenset()) is not None:
                    return "no"
            except _Budget:
                return "indeterminate"

        frames: list[_Frame] = []
        color = self.color
        phase = "descend"
        carry = None
        hint = 0
        try:
            while True:
                if phase == "descend":
                    v = hint
                    while v < self.n and color[v] != -1:
                        v += 1
                    if v == self.n:
                        if self.mode == "decide":
                            self.witness = list(color)
                            return "yes"
                        self.solutions += 1
                        phase = "unwind"
                        carry = _NOJUMP
                        continue
                    frames.append(_Frame(v, len(frames) + 1, len(self.trail)))
                    phase = "try"
                    continue
                if phase == "try":
                    f = frames[-1]
                    conf = self._assign(f.v, f.c, frozenset((f.level,)))
                    if conf is None:
                        hint = f.v + 1
                        phase = "descend"
                        continue
                    phase = "unwind"
                    carry = conf
                    continue
                # unwind
                if not frames:
                    if carry is _NOJUMP:
                        return "yes" if self.mode == "decide" else "done"
                    return "no" if self.solutions == 0 else "done"
                f = frames[-1]
                self._undo_to(f.mark)
                if carry is _NOJUMP:
                    f.saw = True
                    if f.c == 0:
                        f.c = 1
                        phase = "try"
                        continue
                    frames.pop()
                    continue
                if f.level not in carry and not f.saw:
                    frames.pop()  # backjump: this decision was not involved
                    continue
                f.conf |= carry
                f.conf.discard(f.level)
                if f.c == 0:
                    f.c = 1
                    phase = "try"
                    continue
                frames.pop()
                carry = frozenset(f.conf) if not f.saw else _NOJUMP
        except _Budget:
            return "indeterminate"


def _as_pins(partial, n):
    if partial is None:
        return {}
    if isinstance(partial, dict):
        items = partial.items()
    else:
        items = ((v, c) for v, c in enumerate(partial) if c is not None)
    pins = {}
    for v, c in items:
        v = int(v)
        c = int(c)
        if not 0 <= v < n:
            raise ValueError(f"pinned vertex {v} out of range")
        if c not in (0, 1):
            raise ValueError(f"pinned color {c} must be 0 or 1")
        pins[v] = c
    return pins


def decide(g: Multigraph, limits: SolveLimits | None = None) -> SolveResult:
    """Exact decision. A 'yes' carries the lexicographically smallest
    FO 2-coloring (over vertex-id order); 'no' is an exhaustive refutation."""
    return extend(g, None, limits)


def extend(g: Multigraph, partial, limits: SolveLimits | None = None) -> SolveResult:
    """Complete a partial coloring (dict vertex -> color, or sequence with
    None for unassigned) to a full FO 2-coloring, or refute."""
    pins = _as_pins(partial, g.vertex_count)
    s = _Search(g, limits, "decide")
    status = s.run(pins)
    if status == "yes":
        return SolveResult("yes", s.witness, s.nodes)
    if status == "no":
        return SolveResult("no", None, s.nodes)
    return SolveResult("indeterminate", None, s.nodes)


def count(g: Multigraph, limits: SolveLimits | None = None):
    """Exact number of FO 2-colorings, or INDETERMINATE on budget
    exhaustion. Intended for small instances."""
    s = _Search(g, limits, "count")
    status = s.run({})
    if status == "indeterminate":
        return INDETERMINATE
    return s.solutions


def port_table(g: Multigraph, ports, limits: SolveLimits | None = None) -> PortTable:
    """Which of the 2^len(ports) pin patterns extend to a complete
    FO 2-coloring. Raises SearchBudgetExceeded if any pattern's search
    exhausts its budget."""
    ports = tuple(int(p) for p in ports)
    if len(set(ports)) != len(ports):
        raise ValueError("ports must be distinct")
    allowed = []
    for pattern in itertools.product((0, 1), repeat=len(ports)):
        res = extend(g, dict(zip(ports, pattern)), limits)
        if res.is_indeterminate:
            raise SearchBudgetExceeded(f"pattern {pattern} exhausted the search budget")
        if res.is_yes:
            allowed.append(pattern)
    return PortTable(ports=ports, patterns=frozenset(allowed))
