"""Canonical minimum cut-sets for every ordered vertex pair.

One cut per pair: the source-minimal minimum cut, whose source side is the set
of vertices reachable from ``s`` in the residual graph of a maximum flow.  It
does not depend on which maximum flow was found, so the collection is
deterministic.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field

from .errors import EulerViolation, InvalidEmbedding, NotConnected
from .flows import (
    CutSet,
    ValidationReport,
    Violation,
    max_flow_planar,
    max_flow_reference,
    min_cut_from_flow,
    _check_pair,
)
from .graph import FaceStructure, PlanarDigraph, require_faces, validate_embedding

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class CutSetCollection:
    """Cuts keyed by ordered pair ``(s, t)``.

    ``total_size`` is the sum of cut sizes counted per pair, so shared cuts
    are counted once for each pair they belong to.  With ``dedup`` the
    ``shared`` index maps every distinct arc set to the pairs using it.
    """

    n: int
    cuts: dict[tuple[int, int], CutSet]
    shared: dict[tuple[int, ...], tuple[tuple[int, int], ...]] | None = field(default=None)

    @property
    def total_size(self) -> int:
        return sum(len(c) for c in self.cuts.values())

    def __len__(self) -> int:
        return len(self.cuts)

    def __getitem__(self, pair: tuple[int, int]) -> CutSet:
        return self.cuts[pair]


def _usable_faces(g: PlanarDigraph, faces: FaceStructure | None) -> FaceStructure | None:
    if faces is not None:
        return require_faces(g, faces)
    if not g.has_embedding:
        return None
    try:
        return validate_embedding(g)
    except (NotConnected, EulerViolation) as exc:
        log.debug("embedding unusable (%s); using the reference engine", exc)
        return None


def canonical_min_cut(
    g: PlanarDigraph, faces: FaceStructure | None, s: int, t: int
) -> CutSet:
    """Source-minimal minimum ``s``-``t`` cut.

    Uses the planar engine when an embedding is available (given or
    validated on the fly) and the reference engine otherwise.
    """
    _check_pair(g, s, t)
    faces = _usable_faces(g, faces)
    if faces is not None:
        result = max_flow_planar(g, faces, s, t)
    else:
        result = max_flow_reference(g, s, t)
    return min_cut_from_flow(g, result)


def all_cutsets(
    g: PlanarDigraph,
    faces: FaceStructure | None,
    include_zero: bool = False,
    dedup: bool = False,
) -> CutSetCollection:
    """Canonical cut for every ordered pair with a positive value.

    Args:
        g: embedded graph.
        faces: its face structure, or None to validate ``g`` here.
        include_zero: also keep pairs of value 0 (their cut is empty).
        dedup: build the index of identical arc sets.
    """
    faces = require_faces(g, faces)
    cuts: dict[tuple[int, int], CutSet] = {}
    for s in range(g.n):
        for t in range(g.n):
            if s == t:
                continue
            cut = canonical_min_cut(g, faces, s, t)
            if cut.capacity > 0 or include_zero:
                cuts[(s, t)] = cut
    shared = None
    if dedup:
        groups: dict[tuple[int, ...], list[tuple[int, int]]] = {}
        for pair, cut in cuts.items():
            groups.setdefault(cut.arcs, []).append(pair)
        shared = {arcs: tuple(pairs) for arcs, pairs in groups.items()}
    return CutSetCollection(g.n, cuts, shared)


def _separates(g: PlanarDigraph, s: int, t: int, removed: set[int]) -> bool:
    seen = [False] * g.n
    seen[s] = True
    queue = deque([s])
    adj = g.incident_darts
    caps = g.caps
    head = g.dart_head
    while queue:
        u = queue.popleft()
        for d in adj[u]:
            k = d >> 1
            if d & 1 or k in removed or caps[k] == 0:
                continue
            w = head[d]
            if not seen[w]:
                if w == t:
                    return False
                seen[w] = True
                queue.append(w)
    return True


def verify_cutset(g: PlanarDigraph, s: int, t: int, cut: CutSet) -> ValidationReport:
    """Check that ``cut`` separates ``s`` from ``t`` and is minimum.

    Problems are reported, not raised.  The minimum is taken from the
    reference engine so the check does not trust the planar code.
    """
    _check_pair(g, s, t)
    issues: list[Violation] = []
    removed = set()
    for k in cut.arcs:
        if not 0 <= k < g.m:
            issues.append(Violation("arc-id", f"arc {k} out of range [0, {g.m})", k))
        else:
            removed.add(k)
    listed = sum(g.caps[k] for k in removed)
    if listed != cut.capacity:
        issues.append(Violation("capacity", f"arcs sum to {listed}, cut claims {cut.capacity}"))
    if not _separates(g, s, t, removed):
        issues.append(Violation("separation", f"a path {s} -> {t} survives the cut", t))
    value = max_flow_reference(g, s, t).value
    if listed != value:
        issues.append(Violation("minimality", f"cut capacity {listed} but max flow is {value}"))
    return ValidationReport(tuple(issues))


__all__ = [
    "CutSetCollection",
    "InvalidEmbedding",
    "all_cutsets",
    "canonical_min_cut",
    "verify_cutset",
]
