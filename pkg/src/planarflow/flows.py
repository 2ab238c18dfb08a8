"""Single-pair exact max-flow engines, min-cut extraction and certificates.

Two independent engines compute the same value:

* :func:`max_flow_reference` - Edmonds-Karp on plain incidence lists; needs no
  embedding and serves as the oracle.
* :func:`max_flow_planar` - works on the embedding.  When ``s`` and ``t``
  share a face it solves the problem as a shortest path in the dual (face
  potentials give the flow directly); otherwise it runs a blocking-flow
  search over the dart structure.

All arithmetic is on Python ints.  Self-loops never carry flow.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .errors import NotMaximal, SameSourceSink, TooLarge
from .graph import FaceStructure, IdOutOfRange, PlanarDigraph, require_faces

BRUTE_FORCE_LIMIT = 20


@dataclass(frozen=True)
class FlowResult:
    value: int
    flow: tuple[int, ...]
    source: int
    sink: int


@dataclass(frozen=True)
class CutSet:
    arcs: tuple[int, ...]
    capacity: int
    source_side: tuple[int, ...] | None = None

    def __len__(self) -> int:
        return len(self.arcs)


@dataclass(frozen=True)
class Violation:
    code: str
    detail: str
    offending_id: int | None = None


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def _check_pair(g: PlanarDigraph, s: int, t: int) -> None:
    for what, v in (("source", s), ("sink", t)):
        if not 0 <= v < g.n:
            raise IdOutOfRange(what, v, g.n)
    if s == t:
        raise SameSourceSink(s)


def _flow_from_residual(g: PlanarDigraph, res: list[int]) -> tuple[int, ...]:
    # flow on arc k is the residual of its head-dart
    return tuple(res[2 * k + 1] for k in range(g.m))


def _initial_residual(g: PlanarDigraph) -> list[int]:
    res = [0] * (2 * g.m)
    for k, (u, v, c) in enumerate(g.arcs):
        if u != v:
            res[2 * k] = c
    return res


def _usable_darts(g: PlanarDigraph, order: str) -> list[list[int]]:
    """Per-vertex darts of non-loop arcs with positive capacity."""
    caps = g.caps
    tails = g.tails
    heads = g.heads
    if order == "arc":
        out: list[list[int]] = [[] for _ in range(g.n)]
        for k in range(g.m):
            u, v = tails[k], heads[k]
            if u != v and caps[k] > 0:
                out[u].append(2 * k)
                out[v].append(2 * k + 1)
        return out
    return [
        [d for d in darts if caps[d >> 1] > 0 and tails[d >> 1] != heads[d >> 1]]
        for darts in g.incident_darts
    ]


# -- reference engine -------------------------------------------------------


def max_flow_reference(g: PlanarDigraph, s: int, t: int) -> FlowResult:
    """Edmonds-Karp shortest augmenting paths.

    Incidences are scanned in ascending arc id, so the flow is a deterministic
    function of the input order.
    """
    _check_pair(g, s, t)
    out = _usable_darts(g, "arc")
    res = _initial_residual(g)
    head = g.dart_head
    n = g.n
    value = 0
    parent = [-1] * n
    while True:
        for i in range(n):
            parent[i] = -1
        parent[s] = -2
        queue = deque([s])
        while queue and parent[t] == -1:
            u = queue.popleft()
            for d in out[u]:
                if res[d] > 0:
                    w = head[d]
                    if parent[w] == -1:
                        parent[w] = d
                        queue.append(w)
        if parent[t] == -1:
            break
        bottleneck = None
        v = t
        while v != s:
            d = parent[v]
            if bottleneck is None or res[d] < bottleneck:
                bottleneck = res[d]
            v = head[d ^ 1]
        v = t
        while v != s:
            d = parent[v]
            res[d] -= bottleneck
            res[d ^ 1] += bottleneck
            v = head[d ^ 1]
        value += bottleneck
    return FlowResult(value, _flow_from_residual(g, res), s, t)


# -- planar engine ----------------------------------------------------------


def common_face(g: PlanarDigraph, faces: FaceStructure, s: int, t: int) -> int | None:
    """Smallest face id incident to both ``s`` and ``t``, if any."""
    shared = faces.faces_at(g, s) & faces.faces_at(g, t)
    return min(shared) if shared else None


def max_flow_planar(
    g: PlanarDigraph, faces: FaceStructure | None, s: int, t: int
) -> FlowResult:
    """Exact max flow on an embedded planar digraph."""
    faces = require_faces(g, faces)
    _check_pair(g, s, t)
    face = common_face(g, faces, s, t)
    if face is not None:
        return _cofacial_flow(g, faces, s, t, face)
    return _blocking_flow(g, s, t)


def _cofacial_flow(
    g: PlanarDigraph, faces: FaceStructure, s: int, t: int, face: int
) -> FlowResult:
    # Conceptually insert an uncapacitated arc t->s through `face`, splitting
    # it in two: the part bounded by the s..t walk stays `face` (left of the
    # new arc), the t..s walk becomes a new dual vertex `f` (its right).  Face
    # potentials phi with phi(right(e)) - phi(left(e)) in [0, cap(e)] are
    # exactly the feasible circulations, and the largest phi(f) - phi(face)
    # is a shortest path distance.
    head = g.dart_head
    cyc = faces.cycles[face]
    k = len(cyc)
    p = next(i for i, d in enumerate(cyc) if head[d ^ 1] == s)
    q = next((p + j) % k for j in range(k) if head[cyc[(p + j) % k] ^ 1] == t)
    right_part = set()
    i = q
    while i != p:
        right_part.add(cyc[i])
        i = (i + 1) % k

    f = faces.f
    fd = faces.face_of_dart
    adj: list[list[tuple[int, int]]] = [[] for _ in range(f + 1)]
    sides = []
    for a, (u, v, c) in enumerate(g.arcs):
        left = f if 2 * a in right_part else fd[2 * a]
        right = f if 2 * a + 1 in right_part else fd[2 * a + 1]
        sides.append((left, right))
        w = c if u != v else 0
        adj[left].append((right, w))
        adj[right].append((left, 0))

    dist = _dijkstra(adj, face)
    flow = tuple(
        dist[r] - dist[l] if u != v else 0 for (l, r), (u, v, _) in zip(sides, g.arcs)
    )
    return FlowResult(dist[f], flow, s, t)


def _dijkstra(adj: list[list[tuple[int, int]]], src: int) -> list[int]:
    inf = None
    dist: list[int | None] = [inf] * len(adj)
    dist[src] = 0
    heap = [(0, src)]
    done = [False] * len(adj)
    while heap:
        d, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        for w, c in adj[u]:
            nd = d + c
            if dist[w] is None or nd < dist[w]:
                dist[w] = nd
                heapq.heappush(heap, (nd, w))
    return dist  # type: ignore[return-value]


def _blocking_flow(g: PlanarDigraph, s: int, t: int) -> FlowResult:
    """Dinic's algorithm over darts, scanning each vertex in rotation order."""
    out = _usable_darts(g, "rotation")
    res = _initial_residual(g)
    head = g.dart_head
    n = g.n
    value = 0
    while True:
        level = [-1] * n
        level[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            lu = level[u] + 1
            if level[t] >= 0 and lu > level[t]:
                break
            for d in out[u]:
                if res[d] > 0:
                    w = head[d]
                    if level[w] < 0:
                        level[w] = lu
                        queue.append(w)
        if level[t] < 0:
            break
        ptr = [0] * n
        stack: list[int] = []
        v = s
        while True:
            if v == t:
                bottleneck = min(res[d] for d in stack)
                value += bottleneck
                cut_at = None
                for i, d in enumerate(stack):
                    res[d] -= bottleneck
                    res[d ^ 1] += bottleneck
                    if cut_at is None and res[d] == 0:
                        cut_at = i
                del stack[cut_at:]
                v = head[stack[-1]] if stack else s
                continue
            darts = out[v]
            i = ptr[v]
            lv = level[v] + 1
            while i < len(darts):
                d = darts[i]
                if res[d] > 0 and level[head[d]] == lv:
                    break
                i += 1
            ptr[v] = i
            if i < len(darts):
                d = darts[i]
                stack.append(d)
                v = head[d]
            else:
                if v == s:
                    break
                level[v] = -1
                d = stack.pop()
                v = head[d ^ 1]
                ptr[v] += 1
    return FlowResult(value, _flow_from_residual(g, res), s, t)


# -- cuts and certificates --------------------------------------------------


def residual_source_side(g: PlanarDigraph, flow: tuple[int, ...], s: int) -> list[bool]:
    """Vertices reachable from ``s`` in the residual graph of ``flow``."""
    seen = [False] * g.n
    seen[s] = True
    adj = g.incident_darts
    caps = g.caps
    head = g.dart_head
    queue = deque([s])
    while queue:
        u = queue.popleft()
        for d in adj[u]:
            k = d >> 1
            r = flow[k] if d & 1 else caps[k] - flow[k]
            if r > 0:
                w = head[d]
                if not seen[w] and w != u:
                    seen[w] = True
                    queue.append(w)
    return seen


def cut_from_side(g: PlanarDigraph, side: list[bool]) -> CutSet:
    arcs = tuple(k for k, (u, v, _) in enumerate(g.arcs) if side[u] and not side[v])
    cap = sum(g.arcs[k].capacity for k in arcs)
    return CutSet(arcs, cap, tuple(v for v in range(g.n) if side[v]))


def min_cut_from_flow(g: PlanarDigraph, result: FlowResult) -> CutSet:
    """Source-minimal minimum cut certified by a maximum flow."""
    side = residual_source_side(g, result.flow, result.source)
    if side[result.sink]:
        raise NotMaximal(
            f"residual path {result.source} -> {result.sink} exists; flow is not maximum"
        )
    cut = cut_from_side(g, side)
    if cut.capacity != result.value:
        raise NotMaximal(f"cut capacity {cut.capacity} differs from flow value {result.value}")
    return cut


def verify_flow(g: PlanarDigraph, result: FlowResult) -> ValidationReport:
    """Capacity, conservation and value checks for a flow assignment."""
    issues: list[Violation] = []
    if len(result.flow) != g.m:
        return ValidationReport(
            (Violation("length", f"{len(result.flow)} flow entries for {g.m} arcs"),)
        )
    net = [0] * g.n
    for k, ((u, v, c), x) in enumerate(zip(g.arcs, result.flow)):
        if not 0 <= x <= c:
            issues.append(Violation("capacity", f"flow {x} outside [0, {c}]", k))
        if u != v:
            net[u] += x
            net[v] -= x
    s, t = result.source, result.sink
    for v in range(g.n):
        if v not in (s, t) and net[v] != 0:
            issues.append(Violation("conservation", f"net outflow {net[v]}", v))
    if net[s] != result.value:
        issues.append(Violation("value", f"source net outflow {net[s]} != {result.value}", s))
    if -net[t] != result.value:
        issues.append(Violation("value", f"sink net inflow {-net[t]} != {result.value}", t))
    return ValidationReport(tuple(issues))


def brute_force_min_cut(g: PlanarDigraph, s: int, t: int) -> tuple[int, CutSet]:
    """Exhaustive minimum cut over every vertex subset ``S`` with s in S, t not in S.

    Among minimisers the one whose sorted vertex tuple is lexicographically
    smallest is returned.
    """
    if g.n > BRUTE_FORCE_LIMIT:
        raise TooLarge(g.n, BRUTE_FORCE_LIMIT)
    _check_pair(g, s, t)
    free = [v for v in range(g.n) if v not in (s, t)]
    masks = np.arange(1 << len(free), dtype=np.int64)
    full = np.zeros(len(masks), dtype=np.int64)
    full |= np.int64(1) << s
    for i, v in enumerate(free):
        full |= ((masks >> i) & 1) << v
    caps_total = np.zeros(len(masks), dtype=np.int64)
    for u, v, c in g.arcs:
        if u == v or c == 0:
            continue
        crossing = ((full >> u) & 1) & (1 - ((full >> v) & 1))
        caps_total += crossing * np.int64(c)
    best = int(caps_total.min())
    cand = full[caps_total == best]
    # lexicographically smallest sorted tuple: candidates always agree on the
    # vertices <= last; extend the prefix by the smallest possible next vertex
    chosen: list[int] = []
    last = -1
    while True:
        rest = cand >> (last + 1)
        if np.any(rest == 0):
            break
        low = rest & -rest
        b = int(low.min())
        cand = cand[low == b]
        last += b.bit_length()
        chosen.append(last)
    side = [False] * g.n
    for v in chosen:
        side[v] = True
    cut = cut_from_side(g, side)
    return best, cut
