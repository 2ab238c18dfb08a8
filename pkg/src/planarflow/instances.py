"""Deterministic generators of embedded planar digraphs.

Randomness comes from SplitMix64 (Steele, Lea & Flood, 2014): state advances
by ``0x9E3779B97F4A7C15`` and each output is the usual xor-shift-multiply
finaliser.  Bounded integers use rejection sampling on the raw 64-bit output,
so a given seed produces the same instance in any language.

Every generator returns a graph with a rotation system that passes
:func:`planarflow.graph.validate_embedding`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import BadRange, EmptyCaps
from .graph import PlanarDigraph, build_graph

MASK64 = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int) -> None:
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform integer in ``[0, bound)``."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % bound

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in ``[lo, hi]``."""
        return lo + self.below(hi - lo + 1)

    def shuffle(self, items: list) -> None:
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]


# Grid directions in clockwise order (rows grow downwards).
_N, _E, _S, _W = 0, 1, 2, 3
_OPPOSITE = (_S, _W, _N, _E)


def _embed_grid_edges(
    n: int,
    edges: Sequence[tuple[int, int, int, list[tuple[bool, int]]]],
) -> PlanarDigraph:
    """Assemble arcs and rotations for edges of a grid skeleton.

    Each edge is ``(u, v, direction_from_u, arcs)`` where ``arcs`` lists
    ``(u_to_v, capacity)``; parallel arcs on one edge get mirrored orders at
    the two ends so that they nest without crossing.
    """
    arcs: list[tuple[int, int, int]] = []
    slots: list[list[list[int]]] = [[[], [], [], []] for _ in range(n)]
    for u, v, direction, bundle in edges:
        at_u = []
        at_v = []
        for forward, cap in bundle:
            k = len(arcs)
            if forward:
                arcs.append((u, v, cap))
                at_u.append(2 * k)
                at_v.append(2 * k + 1)
            else:
                arcs.append((v, u, cap))
                at_u.append(2 * k + 1)
                at_v.append(2 * k)
        slots[u][direction].extend(at_u)
        slots[v][_OPPOSITE[direction]].extend(reversed(at_v))
    rotation = [[d for slot in s for d in slot] for s in slots]
    return build_graph(n, arcs, rotation)


def gen_grid(rows: int, cols: int, cap_lo: int, cap_hi: int, seed: int) -> PlanarDigraph:
    """Directed grid with arcs pointing right and down.

    Vertex ``(r, c)`` has id ``r * cols + c``.  Arcs are emitted in row-major
    vertex order, rightward arc before downward arc, with capacities drawn in
    that order.
    """
    if rows < 1 or cols < 1:
        raise BadRange(f"grid dimensions must be positive, got {rows}x{cols}")
    if not 0 <= cap_lo <= cap_hi:
        raise BadRange(f"need 0 <= cap_lo <= cap_hi, got [{cap_lo}, {cap_hi}]")
    rng = SplitMix64(seed)
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1, _E, [(True, rng.randint(cap_lo, cap_hi))]))
            if r + 1 < rows:
                edges.append((v, v + cols, _S, [(True, rng.randint(cap_lo, cap_hi))]))
    return _embed_grid_edges(rows * cols, edges)


def gen_path(caps: Sequence[int]) -> PlanarDigraph:
    """Directed path ``0 -> 1 -> ... -> len(caps)``."""
    if len(caps) == 0:
        raise EmptyCaps("path needs at least one capacity")
    edges = [(i, i + 1, _E, [(True, c)]) for i, c in enumerate(caps)]
    return _embed_grid_edges(len(caps) + 1, edges)


def hard_quadratic_size(k: int) -> int:
    return 2 * k + 2


def gen_hard_quadratic(k: int) -> PlanarDigraph:
    """Planar digraph on ``2k + 2`` vertices with at least ``k^2`` distinct pair values.

    Two hubs ``L`` (id 0) and ``R`` (id 1) and ``2k`` spokes.  Senders
    ``x_1..x_k`` (ids ``2..k+1``) feed ``x_i -> L`` with capacity
    ``(k + 1) * i`` and ``x_i -> R`` with a capacity larger than any cut;
    receivers ``y_1..y_k`` (ids ``k+2..2k+1``) are fed by ``L -> y_j`` with
    the large capacity and ``R -> y_j`` with capacity ``j``.  The two
    arc-disjoint routes x_i-L-y_j and x_i-R-y_j are throttled at opposite
    ends, so the value from ``x_i`` to ``y_j`` is ``(k + 1) * i + j`` and the
    ``k^2`` sender/receiver values are pairwise distinct.

    Embedding: the spokes sit on a circle between the hubs; every spoke is a
    2-path ``L - spoke - R`` and consecutive spokes bound a quadrilateral
    face.
    """
    if k < 1:
        raise BadRange(f"k must be >= 1, got {k}")
    big = (k + 1) * k * (k + 1) + k * (k + 1) + 1
    n = hard_quadratic_size(k)
    hub_l, hub_r = 0, 1
    arcs: list[tuple[int, int, int]] = []
    rot_l: list[int] = []
    rot_r: list[int] = []
    rotation: list[list[int]] = [[] for _ in range(n)]
    for i in range(1, k + 1):
        x = 1 + i
        a = len(arcs)
        arcs.append((x, hub_l, (k + 1) * i))
        arcs.append((x, hub_r, big))
        rotation[x] = [2 * a, 2 * a + 2]
        rot_l.append(2 * a + 1)
        rot_r.append(2 * a + 3)
    for j in range(1, k + 1):
        y = k + 1 + j
        a = len(arcs)
        arcs.append((hub_l, y, big))
        arcs.append((hub_r, y, j))
        rotation[y] = [2 * a + 1, 2 * a + 3]
        rot_l.append(2 * a)
        rot_r.append(2 * a + 2)
    # spokes run clockwise around L; around R the same spokes appear in
    # reverse order
    rotation[hub_l] = rot_l
    rotation[hub_r] = rot_r[::-1]
    return build_graph(n, arcs, rotation)


def _grid_dims(n: int) -> tuple[int, int]:
    cols = 1
    while cols * cols < n:
        cols += 1
    rows = -(-n // cols)
    return rows, cols


def gen_random_planar(n: int, cap_hi: int, seed: int) -> PlanarDigraph:
    """Random connected subgraph of a grid skeleton.

    ``n`` grid cells are grown from a random start by random frontier
    expansion; the growth tree plus each remaining skeleton edge with
    probability 1/2 forms the undirected support.  Each edge becomes one arc
    in a random direction, or (with probability 1/8) an antiparallel pair.
    Capacities are uniform in ``[0, cap_hi]``.
    """
    if n < 2:
        raise BadRange(f"n must be >= 2, got {n}")
    if cap_hi < 0:
        raise BadRange(f"cap_hi must be >= 0, got {cap_hi}")
    rng = SplitMix64(seed)
    rows, cols = _grid_dims(n)

    def neighbours(cell: int) -> list[int]:
        r, c = divmod(cell, cols)
        out = []
        if r > 0:
            out.append(cell - cols)
        if c + 1 < cols:
            out.append(cell + 1)
        if r + 1 < rows:
            out.append(cell + cols)
        if c > 0:
            out.append(cell - 1)
        return out

    start = rng.below(rows * cols)
    chosen = {start}
    tree: set[tuple[int, int]] = set()
    frontier = [(start, w) for w in neighbours(start)]
    while len(chosen) < n:
        u, w = frontier.pop(rng.below(len(frontier)))
        if w in chosen:
            continue
        chosen.add(w)
        tree.add((min(u, w), max(u, w)))
        frontier.extend((w, x) for x in neighbours(w) if x not in chosen)

    ids = {cell: i for i, cell in enumerate(sorted(chosen))}
    edges = []
    for cell in sorted(chosen):
        for other, direction in ((cell + 1, _E), (cell + cols, _S)):
            if direction == _E and (cell % cols) + 1 >= cols:
                continue
            if other not in chosen:
                continue
            if (cell, other) not in tree and rng.below(2) == 0:
                continue
            if rng.below(8) == 0:
                first = rng.below(2) == 0
                bundle = [(first, rng.randint(0, cap_hi)), (not first, rng.randint(0, cap_hi))]
            else:
                bundle = [(rng.below(2) == 0, rng.randint(0, cap_hi))]
            edges.append((ids[cell], ids[other], direction, bundle))
    return _embed_grid_edges(n, edges)


@dataclass(frozen=True)
class GenSpec:
    """Full description of a generated instance; equal specs give equal graphs."""

    family: str
    size: tuple[int, ...] = ()
    cap_lo: int = 1
    cap_hi: int = 100
    seed: int = 0
    caps: tuple[int, ...] = field(default=())

    def build(self) -> PlanarDigraph:
        if self.family == "grid":
            rows, cols = self.size
            return gen_grid(rows, cols, self.cap_lo, self.cap_hi, self.seed)
        if self.family == "path":
            if self.caps:
                return gen_path(self.caps)
            rng = SplitMix64(self.seed)
            (length,) = self.size
            return gen_path([rng.randint(self.cap_lo, self.cap_hi) for _ in range(length)])
        if self.family == "hard":
            (k,) = self.size
            return gen_hard_quadratic(k)
        if self.family == "random-planar":
            (n,) = self.size
            return gen_random_planar(n, self.cap_hi, self.seed)
        raise BadRange(f"unknown family {self.family!r}")
