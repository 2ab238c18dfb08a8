"""Extended DIMACS max-flow format.

Line types::

    c <comment>
    p max <n> <m>
    n <id> s|t
    a <tail> <head> <capacity>
    r <vertex> <dart> ...

Vertex ids are 1-based in files.  A dart is written ``+k`` (tail-dart of the
k-th ``a`` line, 1-based) or ``-k`` (its head-dart), and an ``r`` line lists
the complete clockwise rotation at a vertex.  Either every vertex has an ``r``
line or none does.
"""

from __future__ import annotations

import re
from typing import NamedTuple

from .errors import DimacsSyntaxError, GraphError, MissingProblemLine, RotationIncomplete
from .graph import PlanarDigraph, build_graph

HEADER = "c planarflow extended DIMACS"

_UINT = re.compile(r"[0-9]+\Z")
_DART = re.compile(r"[+-][0-9]+\Z")


class Terminals(NamedTuple):
    source: int | None = None
    sink: int | None = None


def _uint(tok: str, lineno: int, what: str) -> int:
    if not _UINT.match(tok):
        raise DimacsSyntaxError(lineno, f"{what} must be a non-negative integer, got {tok!r}")
    return int(tok)


def parse_dimacs(text: str) -> tuple[PlanarDigraph, Terminals]:
    n = m = None
    arcs: list[tuple[int, int, int]] = []
    rot: dict[int, list[int]] = {}
    source = sink = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line[0] == "c":
            continue
        tok = line.split()
        kind = tok[0]
        if kind == "p":
            if n is not None:
                raise DimacsSyntaxError(lineno, "duplicate problem line")
            if len(tok) != 4 or tok[1] != "max":
                raise DimacsSyntaxError(lineno, "expected 'p max <n> <m>'")
            n = _uint(tok[2], lineno, "vertex count")
            m = _uint(tok[3], lineno, "arc count")
            if n < 1:
                raise DimacsSyntaxError(lineno, "vertex count must be positive")
            continue
        if kind not in ("n", "a", "r"):
            raise DimacsSyntaxError(lineno, f"unknown line type {kind!r}")
        if n is None:
            raise MissingProblemLine(f"line {lineno}: '{kind}' line before the problem line")

        if kind == "n":
            if len(tok) != 3 or tok[2] not in ("s", "t"):
                raise DimacsSyntaxError(lineno, "expected 'n <id> s|t'")
            v = _vertex(tok[1], lineno, n)
            if tok[2] == "s":
                if source is not None:
                    raise DimacsSyntaxError(lineno, "duplicate source designation")
                source = v
            else:
                if sink is not None:
                    raise DimacsSyntaxError(lineno, "duplicate sink designation")
                sink = v
        elif kind == "a":
            if len(tok) != 4:
                raise DimacsSyntaxError(lineno, "expected 'a <tail> <head> <capacity>'")
            u = _vertex(tok[1], lineno, n)
            v = _vertex(tok[2], lineno, n)
            arcs.append((u, v, _uint(tok[3], lineno, "capacity")))
        else:
            if len(tok) < 2:
                raise DimacsSyntaxError(lineno, "expected 'r <vertex> <dart>...'")
            v = _vertex(tok[1], lineno, n)
            if v in rot:
                raise DimacsSyntaxError(lineno, f"duplicate rotation for vertex {v + 1}")
            darts = []
            for t in tok[2:]:
                if not _DART.match(t):
                    raise DimacsSyntaxError(lineno, f"bad dart {t!r}")
                k = int(t[1:])
                if k < 1:
                    raise DimacsSyntaxError(lineno, f"bad dart {t!r}")
                darts.append(2 * (k - 1) + (t[0] == "-"))
            rot[v] = darts

    if n is None:
        raise MissingProblemLine("no 'p max' line")
    if len(arcs) != m:
        raise DimacsSyntaxError(0, f"problem line declares {m} arcs, found {len(arcs)}")
    rotation = None
    if rot:
        if len(rot) != n:
            missing = sorted(set(range(n)) - rot.keys())
            raise RotationIncomplete(
                f"rotation given for {len(rot)} of {n} vertices; missing {[v + 1 for v in missing[:10]]}"
            )
        rotation = [rot[v] for v in range(n)]
    try:
        g = build_graph(n, arcs, rotation)
    except GraphError as exc:
        raise DimacsSyntaxError(0, str(exc)) from exc
    return g, Terminals(source, sink)


def _vertex(tok: str, lineno: int, n: int) -> int:
    v = _uint(tok, lineno, "vertex id")
    if not 1 <= v <= n:
        raise DimacsSyntaxError(lineno, f"vertex id {v} out of range 1..{n}")
    return v - 1


def _dart_token(d: int) -> str:
    return f"{'-' if d & 1 else '+'}{(d >> 1) + 1}"


def write_dimacs(g: PlanarDigraph, terminals: Terminals | None = None) -> str:
    lines = [HEADER, f"p max {g.n} {g.m}"]
    if terminals is not None:
        if terminals.source is not None:
            lines.append(f"n {terminals.source + 1} s")
        if terminals.sink is not None:
            lines.append(f"n {terminals.sink + 1} t")
    lines.extend(f"a {u + 1} {v + 1} {c}" for u, v, c in g.arcs)
    if g.rotation is not None:
        for v, darts in enumerate(g.rotation):
            lines.append(" ".join([f"r {v + 1}", *map(_dart_token, darts)]).rstrip())
    return "\n".join(lines) + "\n"
