"""Embedded planar digraphs, face tracing and the dual.

Dart convention used throughout the package: arc ``k`` owns two darts,
``2*k`` (the tail-dart, leaving ``tail`` towards ``head``) and ``2*k + 1``
(the head-dart, leaving ``head`` towards ``tail``).  ``d ^ 1`` is the reverse
of dart ``d``.  A rotation system lists, for every vertex, the darts leaving it
in clockwise order.

Faces are traced with ``next(d) = succ(rev(d))`` where ``succ`` is the
clockwise successor around the dart's origin; the face traced through ``d``
lies to the left of ``d``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

from .errors import (
    CapacityOutOfRange,
    DanglingDart,
    DuplicateDart,
    EulerViolation,
    GraphError,
    IdOutOfRange,
    InvalidEmbedding,
    NotConnected,
)

MAX_CAPACITY = 1 << 60
MAX_TOTAL_CAPACITY = 1 << 62


class Arc(NamedTuple):
    tail: int
    head: int
    capacity: int


def dart_origin(arc: Arc, dart: int) -> int:
    return arc.head if dart & 1 else arc.tail


@dataclass(frozen=True)
class PlanarDigraph:
    """Capacitated digraph with an optional rotation system.

    Instances are immutable; build them with :func:`build_graph` so that the
    invariants are checked.
    """

    n: int
    arcs: tuple[Arc, ...]
    rotation: tuple[tuple[int, ...], ...] | None = None

    @property
    def m(self) -> int:
        return len(self.arcs)

    @property
    def has_embedding(self) -> bool:
        return self.rotation is not None

    @cached_property
    def tails(self) -> list[int]:
        return [a.tail for a in self.arcs]

    @cached_property
    def heads(self) -> list[int]:
        return [a.head for a in self.arcs]

    @cached_property
    def caps(self) -> list[int]:
        return [a.capacity for a in self.arcs]

    @cached_property
    def dart_head(self) -> list[int]:
        """Vertex each dart points to."""
        out = [0] * (2 * len(self.arcs))
        for k, (u, v, _) in enumerate(self.arcs):
            out[2 * k] = v
            out[2 * k + 1] = u
        return out

    @cached_property
    def incident_darts(self) -> list[list[int]]:
        """Darts leaving each vertex.

        Rotation order when an embedding is present, ascending dart id
        otherwise.
        """
        if self.rotation is not None:
            return [list(r) for r in self.rotation]
        out: list[list[int]] = [[] for _ in range(self.n)]
        for k, (u, v, _) in enumerate(self.arcs):
            out[u].append(2 * k)
            out[v].append(2 * k + 1)
        return out

    def out_capacity(self, v: int) -> int:
        return sum(c for (u, w, c) in self.arcs if u == v and w != v)

    def in_capacity(self, v: int) -> int:
        return sum(c for (u, w, c) in self.arcs if w == v and u != v)

    def without_rotation(self) -> PlanarDigraph:
        return PlanarDigraph(self.n, self.arcs, None)


def _is_int(x: object) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def build_graph(
    n: int,
    arcs: Iterable[Sequence[int]],
    rotation: Sequence[Sequence[int]] | None = None,
) -> PlanarDigraph:
    """Validate inputs and return an immutable :class:`PlanarDigraph`.

    ``rotation`` is retained verbatim; it is checked to be a permutation of all
    darts that places each dart at its origin, but planarity is left to
    :func:`validate_embedding`.
    """
    if not _is_int(n) or n < 1:
        raise GraphError(f"vertex count must be a positive integer, got {n!r}")
    arc_list: list[Arc] = []
    total = 0
    for k, a in enumerate(arcs):
        if len(a) != 3:
            raise GraphError(f"arc {k}: expected (tail, head, capacity), got {a!r}")
        u, v, c = a
        for what, x in (("tail", u), ("head", v)):
            if not _is_int(x):
                raise GraphError(f"arc {k}: {what} must be an integer, got {x!r}")
            if not 0 <= x < n:
                raise IdOutOfRange(f"arc {k} {what}", x, n)
        if not _is_int(c) or c < 0 or c > MAX_CAPACITY:
            raise CapacityOutOfRange(f"arc {k}: capacity {c!r} not an integer in [0, 2^60]")
        total += c
        arc_list.append(Arc(u, v, c))
    if total > MAX_TOTAL_CAPACITY:
        raise CapacityOutOfRange(f"total capacity {total} exceeds 2^62")

    rot: tuple[tuple[int, ...], ...] | None = None
    if rotation is not None:
        rot = tuple(tuple(r) for r in rotation)
        _check_rotation(n, arc_list, rot)
    return PlanarDigraph(n, tuple(arc_list), rot)


def _check_rotation(n: int, arcs: list[Arc], rot: tuple[tuple[int, ...], ...]) -> None:
    if len(rot) != n:
        raise GraphError(f"rotation lists {len(rot)} vertices, graph has {n}")
    ndarts = 2 * len(arcs)
    seen = [False] * ndarts
    for v, darts in enumerate(rot):
        for d in darts:
            if not _is_int(d) or not 0 <= d < ndarts:
                raise IdOutOfRange(f"dart at vertex {v}", d, ndarts)
            if seen[d]:
                raise DuplicateDart(d)
            seen[d] = True
            origin = dart_origin(arcs[d >> 1], d)
            if origin != v:
                raise DanglingDart(d, f"listed at vertex {v} but leaves vertex {origin}")
    for d, ok in enumerate(seen):
        if not ok:
            raise DanglingDart(d, "missing from the rotation system")


def is_connected(g: PlanarDigraph) -> bool:
    """Connectivity of the underlying undirected multigraph."""
    adj: list[list[int]] = [[] for _ in range(g.n)]
    for u, v, _ in g.arcs:
        adj[u].append(v)
        adj[v].append(u)
    seen = [False] * g.n
    seen[0] = True
    queue = deque([0])
    count = 1
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if not seen[w]:
                seen[w] = True
                count += 1
                queue.append(w)
    return count == g.n


@dataclass(frozen=True)
class FaceStructure:
    """Faces of an embedded graph.

    ``face_of_dart[d]`` is the face to the left of dart ``d``; ``cycles[i]``
    lists the darts bounding face ``i`` in traversal order.
    """

    n: int
    m: int
    face_of_dart: tuple[int, ...]
    cycles: tuple[tuple[int, ...], ...]

    @property
    def f(self) -> int:
        return len(self.cycles)

    def matches(self, g: PlanarDigraph) -> bool:
        return (
            g.rotation is not None
            and g.n == self.n
            and g.m == self.m
            and len(self.face_of_dart) == 2 * g.m
            and self.n - self.m + self.f == 2
        )

    def faces_at(self, g: PlanarDigraph, v: int) -> set[int]:
        return {self.face_of_dart[d] for d in g.incident_darts[v]}


def trace_faces(g: PlanarDigraph) -> tuple[list[int], list[tuple[int, ...]]]:
    """Partition darts into face cycles (no planarity check)."""
    if g.rotation is None:
        raise InvalidEmbedding("graph has no rotation system")
    ndarts = 2 * g.m
    succ = [0] * ndarts
    for darts in g.rotation:
        k = len(darts)
        for i, d in enumerate(darts):
            succ[d] = darts[(i + 1) % k]
    face = [-1] * ndarts
    cycles: list[tuple[int, ...]] = []
    for start in range(ndarts):
        if face[start] >= 0:
            continue
        fid = len(cycles)
        cyc = []
        d = start
        while face[d] < 0:
            face[d] = fid
            cyc.append(d)
            d = succ[d ^ 1]
        cycles.append(tuple(cyc))
    return face, cycles


def validate_embedding(g: PlanarDigraph) -> FaceStructure:
    """Trace faces and check Euler's formula ``n - m + f = 2``.

    Raises :class:`NotConnected` for disconnected input and
    :class:`EulerViolation` when the rotation system is not planar.
    """
    if g.rotation is None:
        raise InvalidEmbedding("graph has no rotation system")
    if not is_connected(g):
        raise NotConnected(f"graph with {g.n} vertices is not connected")
    face, cycles = trace_faces(g)
    if g.m == 0:
        # lone vertex: the whole plane is one face with an empty boundary
        cycles = [()]
    f = len(cycles)
    if g.n - g.m + f != 2:
        raise EulerViolation(g.n, g.m, f)
    return FaceStructure(g.n, g.m, tuple(face), tuple(cycles))


def require_faces(g: PlanarDigraph, faces: FaceStructure | None) -> FaceStructure:
    """Return a face structure valid for ``g`` or raise :class:`InvalidEmbedding`."""
    if faces is None:
        return validate_embedding(g)
    if not isinstance(faces, FaceStructure) or not faces.matches(g):
        raise InvalidEmbedding("face structure does not belong to this graph")
    return faces


@dataclass(frozen=True)
class DualGraph:
    """One vertex per face, one dual arc per primal arc.

    Dual arc ``k`` runs from the face left of primal arc ``k`` to the face on
    its right and carries the primal capacity as its weight.
    """

    n_faces: int
    arcs: tuple[Arc, ...]
    primal_to_dual: tuple[int, ...] = field(repr=False)
    dual_to_primal: tuple[int, ...] = field(repr=False)


def derive_dual(g: PlanarDigraph, faces: FaceStructure) -> DualGraph:
    faces = require_faces(g, faces)
    fd = faces.face_of_dart
    arcs = tuple(Arc(fd[2 * k], fd[2 * k + 1], a.capacity) for k, a in enumerate(g.arcs))
    ident = tuple(range(g.m))
    return DualGraph(faces.f, arcs, ident, ident)
