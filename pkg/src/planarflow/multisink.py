"""Single-source all-sinks max-flow values and the all-pairs table.

``sssk_baseline`` runs one independent max flow per sink.  ``sssk_fast``
certifies each value from two bounds computed inside a small window around
the sink, growing the window only when the bounds disagree; see
:class:`_CertifiedSweep`.  Vertices not reachable from ``s`` get value 0.
"""

from __future__ import annotations

import logging
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import IncompleteTable, InvalidEmbedding, NotConnected, EulerViolation, SameSourceSink
from .flows import max_flow_planar, max_flow_reference
from .graph import FaceStructure, IdOutOfRange, PlanarDigraph, require_faces, validate_embedding

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SinkValueVector:
    """``values[t]`` is the max s-t flow value; ``values[source]`` is None."""

    source: int
    values: tuple[int | None, ...]

    def __getitem__(self, t: int) -> int | None:
        return self.values[t]

    def as_dict(self) -> dict[int, int]:
        return {t: v for t, v in enumerate(self.values) if t != self.source}


@dataclass(frozen=True)
class PairValueTable:
    """Ordered-pair values; diagonal entries hold ``None``."""

    n: int
    rows: tuple[tuple[int | None, ...], ...]

    def __getitem__(self, pair: tuple[int, int]) -> int | None:
        s, t = pair
        return self.rows[s][t]

    def off_diagonal(self) -> Iterable[tuple[int, int, int | None]]:
        for s, row in enumerate(self.rows):
            for t, v in enumerate(row):
                if s != t:
                    yield s, t, v


def _check_source(g: PlanarDigraph, s: int) -> None:
    if not 0 <= s < g.n:
        raise IdOutOfRange("source", s, g.n)


def sssk_baseline(g: PlanarDigraph, s: int) -> SinkValueVector:
    """n - 1 independent single-pair max flows."""
    _check_source(g, s)
    faces = None
    if g.has_embedding:
        try:
            faces = validate_embedding(g)
        except (NotConnected, EulerViolation) as exc:
            log.debug("embedding unusable (%s); using the reference engine", exc)
    values: list[int | None] = [None] * g.n
    for t in range(g.n):
        if t == s:
            continue
        if faces is not None:
            values[t] = max_flow_planar(g, faces, s, t).value
        else:
            values[t] = max_flow_reference(g, s, t).value
    return SinkValueVector(s, tuple(values))


def sssk_fast(g: PlanarDigraph, faces: FaceStructure | None, s: int) -> SinkValueVector:
    """All-sinks values from ``s`` by local certification."""
    require_faces(g, faces)
    _check_source(g, s)
    return SinkValueVector(s, tuple(_CertifiedSweep(g, s).run()))


_INF = 1 << 63


class _CertifiedSweep:
    """Sink-by-sink certification of max-flow values.

    Sinks are visited in breadth-first order from ``s`` (arc directions
    ignored).  The window of radius ``r`` around sink ``t`` is the set of
    vertices with a directed path of at most ``r`` arcs into ``t``.  With
    ``known[t]`` the best upper bound so far (initially the in-capacity):

    * upper bound: the min cut of ``G`` with everything outside the window
      (and ``s``) merged into the source, found by a max flow inside the
      window.  When it improves on ``known[t]`` its sink side is recorded,
      lowering ``known`` for every vertex in it.
    * lower bound: for any vertex set ``A``,
      ``value(t) >= min(min_{a in A} value(a), maxflow(A -> t))``, since a
      cut separating ``s`` from ``t`` either leaves some ``a`` on the sink
      side or separates all of ``A`` from ``t``.  ``A`` is ``s`` plus the
      solved window vertices whose value reaches ``known[t]``.

    When the bounds meet the value is final; otherwise the radius doubles.
    A window holding every vertex that reaches ``t`` gives the exact value
    by a plain max flow from ``s``, and the sink side of its source-minimal
    cut is recorded as above.  The sweep starts with one such exact solve
    for the farthest sink, whose cut usually binds for much of the graph.
    """

    def __init__(self, g: PlanarDigraph, s: int) -> None:
        self.s = s
        n = g.n
        tails, heads, caps = g.tails, g.heads, g.caps
        dhead = g.dart_head

        # only vertices reachable from s matter; restricting to them keeps
        # every cut valid and every flow unchanged
        fwd: list[list[int]] = [[] for _ in range(n)]
        for k in range(len(caps)):
            if caps[k] > 0 and tails[k] != heads[k]:
                fwd[tails[k]].append(heads[k])
        reach = [False] * n
        reach[s] = True
        stack = [s]
        while stack:
            u = stack.pop()
            for w in fwd[u]:
                if not reach[w]:
                    reach[w] = True
                    stack.append(w)

        out: list[list[int]] = [[] for _ in range(n)]
        for v in range(n):
            if reach[v]:
                out[v] = [
                    d
                    for d in g.incident_darts[v]
                    if caps[d >> 1] > 0 and tails[d >> 1] != heads[d >> 1] and reach[dhead[d]]
                ]
        res = [0] * (2 * len(caps))
        known = [0] * n  # best upper bound so far; starts as the in-capacity
        indeg = [0] * n
        for k, c in enumerate(caps):
            if c > 0 and tails[k] != heads[k] and reach[tails[k]]:
                res[2 * k] = c
                known[heads[k]] += c
                indeg[heads[k]] += 1

        self.n = n
        self.caps = caps
        self.dhead = dhead
        self.reach = reach
        self.size = sum(reach)
        self.out = out
        self.res = res
        self.known = known
        self.indeg = indeg
        self.value: list[int | None] = [None] * n
        self.touched: list[int] = []
        self.mark = [0] * n
        self.level = [0] * n
        self.ptr = [0] * n
        self.seen = [0] * n  # phase stamps of the level graph
        self.phase = 0
        self.epoch = 0

    def run(self) -> list[int | None]:
        s, n = self.s, self.n
        values: list[int | None] = [0] * n
        values[s] = None
        self.value[s] = _INF
        order = self._order()
        if order:
            # one far sink up front records a cut next to s, usually the
            # binding one for most of the graph
            far = order[-1]
            values[far] = self.value[far] = self._full(far)
        for t in order:
            if self.value[t] is None:
                values[t] = self.value[t] = self._solve(t)
        return values

    def _order(self) -> list[int]:
        s, out, dhead = self.s, self.out, self.dhead
        seen = [False] * self.n
        seen[s] = True
        order = []
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for d in out[u]:
                w = dhead[d]
                if not seen[w]:
                    seen[w] = True
                    order.append(w)
                    queue.append(w)
        return order

    def _solve(self, t: int) -> int:
        ub = self.known[t]
        radius = 2
        while ub > 0:
            window, complete = self._ball(t, radius)
            if complete:
                return self._full(t, window)
            lower = self._window_lower(window, t, ub)
            if lower >= ub:
                break
            local = self._window_cut(window, t, ub)
            if local < ub:
                ub = local
                if lower >= ub or self._window_lower(window, t, ub) >= ub:
                    break
            radius *= 2
        return ub

    def _ball(self, t: int, radius: int | None) -> tuple[list[int], bool]:
        """Vertices with a path to ``t`` of at most ``radius`` arcs; marks them.

        The flag tells whether the ball already holds every vertex that can
        reach ``t``.
        """
        self.epoch += 1
        epoch, mark, out, dhead = self.epoch, self.mark, self.out, self.dhead
        mark[t] = epoch
        ball = [t]
        frontier = [t]
        hops = 0
        while frontier:
            if radius is not None and hops == radius:
                return ball, False
            hops += 1
            nxt = []
            for u in frontier:
                for d in out[u]:
                    if d & 1:  # arc entering u
                        w = dhead[d]
                        if mark[w] != epoch:
                            mark[w] = epoch
                            nxt.append(w)
            ball.extend(nxt)
            frontier = nxt
        return ball, True

    def _window_cut(self, window: list[int], t: int, limit: int) -> int:
        """Min cut into ``t`` with the outside of the window merged into s.

        Returns ``limit`` if the cut is at least that large; otherwise the
        sink side found is recorded as a bound for its members.
        """
        s, epoch, mark, out, dhead, caps = self.s, self.epoch, self.mark, self.out, self.dhead, self.caps
        supply: dict[int, int] = {}
        for v in window:
            if v == s:
                continue
            inflow = 0
            for d in out[v]:
                if d & 1:  # head-dart: arc enters v
                    u = dhead[d]
                    if mark[u] != epoch or u == s:
                        inflow += caps[d >> 1]
            if inflow:
                supply[v] = inflow
        if s in supply or mark[s] == epoch:
            mark[s] = 0  # s belongs to the merged source, not to the window
        value = self._flow(supply, t, limit)
        if value < limit:
            known = self.known
            for y in self._sink_side(t):
                if known[y] > value:
                    known[y] = value
        self._restore()
        return value

    def _window_lower(self, window: list[int], t: int, target: int) -> int:
        s, value, epoch, mark = self.s, self.value, self.epoch, self.mark
        for v in window:
            mark[v] = epoch
        supply = {}
        for v in window:
            if v != t and value[v] is not None and value[v] >= target:
                supply[v] = _INF
        if not supply:
            return 0
        got = self._flow(supply, t, target)
        self._restore()
        return got

    def _full(self, t: int, window: list[int] | None = None) -> int:
        """Exact value from a max flow over the vertices that can reach ``t``.

        Afterwards the complement ``Z`` of the source-minimal cut bounds every
        member by the value.  Inside the window ``Z`` is what the residual
        search from ``s`` misses.  Outside it the flow is zero, so ``Z``
        continues with every vertex whose in-arcs all start in ``Z``.  No
        arc enters the window from outside, hence the cut is exactly as
        large as the flow.
        """
        if window is None:
            window, _ = self._ball(t, None)
        s, epoch, mark = self.s, self.epoch, self.mark
        out, dhead, res, indeg, known = self.out, self.dhead, self.res, self.indeg, self.known
        value = self._flow({s: _INF}, t, _INF)
        source_side = {s}
        stack = [s]
        while stack:
            v = stack.pop()
            for d in out[v]:
                if res[d] > 0:
                    w = dhead[d]
                    if mark[w] == epoch and w not in source_side:
                        source_side.add(w)
                        stack.append(w)
        self._restore()
        stack = [v for v in window if v not in source_side]
        hits: dict[int, int] = {}
        while stack:
            v = stack.pop()
            if known[v] > value:
                known[v] = value
            for d in out[v]:
                if not d & 1:
                    w = dhead[d]
                    if mark[w] != epoch:
                        h = hits.get(w, 0) + 1
                        hits[w] = h
                        if h == indeg[w]:
                            mark[w] = epoch
                            stack.append(w)
        return value

    def _sink_side(self, t: int) -> list[int]:
        epoch, mark, out, dhead, res = self.epoch, self.mark, self.out, self.dhead, self.res
        seen = {t}
        stack = [t]
        while stack:
            v = stack.pop()
            for e in out[v]:
                u = dhead[e]
                if mark[u] == epoch and u not in seen and res[e ^ 1] > 0:
                    seen.add(u)
                    stack.append(u)
        return list(seen)

    def _restore(self) -> None:
        res, caps = self.res, self.caps
        for d in self.touched:
            k = d >> 1
            res[2 * k] = caps[k]
            res[2 * k + 1] = 0
        self.touched.clear()

    def _flow(self, supply: dict[int, int], t: int, limit: int) -> int:
        """Dinic from capacitated sources to ``t`` over marked vertices.

        Stops once ``limit`` units have arrived.  Residual changes are logged
        in ``touched`` so that :meth:`_restore` can undo them.
        """
        epoch, mark, out, dhead, res = self.epoch, self.mark, self.out, self.dhead, self.res
        level, ptr, seen, touched = self.level, self.ptr, self.seen, self.touched
        supply = dict(supply)
        total = min(supply.pop(t, 0), limit)  # arcs straight into t
        while total < limit:
            sources = [v for v, a in supply.items() if a > 0]
            if not sources:
                break
            # level graph grown from all sources at once
            self.phase += 1
            phase = self.phase
            for v in sources:
                seen[v] = phase
                level[v] = 0
                ptr[v] = 0
            frontier = sources
            depth = 0
            while frontier and seen[t] != phase:
                depth += 1
                nxt = []
                for v in frontier:
                    for d in out[v]:
                        if res[d] > 0:
                            w = dhead[d]
                            if seen[w] != phase and mark[w] == epoch:
                                seen[w] = phase
                                level[w] = depth
                                ptr[w] = 0
                                nxt.append(w)
                frontier = nxt
            if seen[t] != phase:
                break
            lt = depth
            for src in sources:
                if total >= limit:
                    break
                avail = supply[src]
                stack: list[int] = []
                v = src
                while True:
                    if v == t:
                        amount = avail if avail < limit - total else limit - total
                        for d in stack:
                            if res[d] < amount:
                                amount = res[d]
                        cut_at = len(stack)
                        for i, d in enumerate(stack):
                            res[d] -= amount
                            res[d ^ 1] += amount
                            touched.append(d)
                            if res[d] == 0 and i < cut_at:
                                cut_at = i
                        avail -= amount
                        total += amount
                        if avail == 0 or total >= limit:
                            break
                        del stack[cut_at:]
                        v = dhead[stack[-1]] if stack else src
                        continue
                    darts = out[v]
                    i = ptr[v]
                    lw = level[v] + 1
                    nd = len(darts)
                    while i < nd:
                        d = darts[i]
                        if res[d] > 0:
                            w = dhead[d]
                            if seen[w] == phase and level[w] == lw and (lw < lt or w == t):
                                break
                        i += 1
                    ptr[v] = i
                    if i < nd:
                        stack.append(darts[i])
                        v = dhead[darts[i]]
                        continue
                    level[v] = -1  # dead end for the rest of this phase
                    if v == src:
                        break
                    d = stack.pop()
                    v = dhead[d ^ 1]
                    ptr[v] += 1
                supply[src] = avail
        return total


def _row(args: tuple[PlanarDigraph, FaceStructure, int]) -> tuple[int | None, ...]:
    g, faces, s = args
    return sssk_fast(g, faces, s).values


def all_pairs_values(
    g: PlanarDigraph, faces: FaceStructure | None, jobs: int = 1
) -> PairValueTable:
    """One ``sssk_fast`` row per source; ``jobs > 1`` fans rows out to processes."""
    faces = require_faces(g, faces)
    work = [(g, faces, s) for s in range(g.n)]
    if jobs > 1 and g.n > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = tuple(pool.map(_row, work, chunksize=max(1, g.n // (4 * jobs))))
    else:
        rows = tuple(_row(w) for w in work)
    return PairValueTable(g.n, rows)


def distinct_values(table: PairValueTable) -> int:
    """Number of distinct off-diagonal values (0 included)."""
    seen = set()
    for s, t, v in table.off_diagonal():
        if v is None:
            raise IncompleteTable(f"entry ({s}, {t}) is missing")
        seen.add(v)
    return len(seen)


def k_pairs_values(
    g: PlanarDigraph, faces: FaceStructure | None, pairs: Sequence[tuple[int, int]]
) -> list[int]:
    """Values for selected pairs, one sweep per distinct source."""
    for i, (s, t) in enumerate(pairs):
        for what, v in (("source", s), ("sink", t)):
            if not 0 <= v < g.n:
                raise IdOutOfRange(f"pair #{i} {what}", v, g.n)
        if s == t:
            raise SameSourceSink(s, i)
    if not pairs:
        return []
    faces = require_faces(g, faces)
    rows: dict[int, SinkValueVector] = {}
    for s, _ in pairs:
        if s not in rows:
            rows[s] = sssk_fast(g, faces, s)
    return [rows[s][t] for s, t in pairs]  # type: ignore[misc]


__all__ = [
    "InvalidEmbedding",
    "PairValueTable",
    "SinkValueVector",
    "all_pairs_values",
    "distinct_values",
    "k_pairs_values",
    "sssk_baseline",
    "sssk_fast",
]
