"""JSON files for value tables and cut collections.

A value file stores a full pair table or one source's sink vector together
with a fingerprint of the graph it was computed on, so that stale tables are
refused at query time.  Output is canonical (sorted keys, fixed separators),
which makes ``dump(load(text)) == text`` for any file this module wrote.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from typing import Any

from .cutsets import CutSetCollection
from .dimacs import write_dimacs
from .errors import FingerprintMismatch, PlanarFlowError
from .flows import CutSet
from .graph import PlanarDigraph
from .multisink import PairValueTable, SinkValueVector

FORMAT_VERSION = 1


class TableFormatError(PlanarFlowError):
    pass


def fingerprint(g: PlanarDigraph) -> str:
    """sha256 of the graph's canonical DIMACS text (terminals excluded)."""
    return hashlib.sha256(write_dimacs(g).encode()).hexdigest()


def _dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


@dataclass(frozen=True)
class ValueTableFile:
    """Parsed value file; ``kind`` is ``"table"`` or ``"vector"``."""

    fingerprint: str
    n: int
    kind: str
    entries: PairValueTable | SinkValueVector
    version: int = FORMAT_VERSION

    @classmethod
    def for_graph(cls, g: PlanarDigraph, entries: PairValueTable | SinkValueVector):
        kind = "table" if isinstance(entries, PairValueTable) else "vector"
        return cls(fingerprint(g), g.n, kind, entries)

    def check(self, g: PlanarDigraph) -> None:
        got = fingerprint(g)
        if got != self.fingerprint or g.n != self.n:
            raise FingerprintMismatch(
                f"table was built for graph {self.fingerprint[:12]}, loaded graph is {got[:12]}"
            )

    def lookup(self, s: int, t: int) -> int | None:
        """Value of pair ``(s, t)``; None on the diagonal.

        Vector files only answer pairs from their own source.
        """
        if isinstance(self.entries, PairValueTable):
            return self.entries[s, t]
        if s != self.entries.source:
            raise TableFormatError(
                f"vector file holds source {self.entries.source + 1}, not {s + 1}"
            )
        return self.entries[t]

    def to_json(self) -> dict:
        out: dict[str, Any] = {
            "version": self.version,
            "fingerprint": self.fingerprint,
            "n": self.n,
            "kind": self.kind,
        }
        if isinstance(self.entries, PairValueTable):
            out["entries"] = [list(r) for r in self.entries.rows]
        else:
            out["source"] = self.entries.source
            out["entries"] = list(self.entries.values)
        return out

    def dumps(self) -> str:
        return _dumps(self.to_json())

    @classmethod
    def from_json(cls, obj: dict) -> ValueTableFile:
        try:
            version = obj["version"]
            if version != FORMAT_VERSION:
                raise TableFormatError(f"unsupported table version {version!r}")
            n = obj["n"]
            kind = obj["kind"]
            raw = obj["entries"]
            if kind == "table":
                rows = tuple(tuple(r) for r in raw)
                if len(rows) != n or any(len(r) != n for r in rows):
                    raise TableFormatError(f"table is not {n} x {n}")
                entries: PairValueTable | SinkValueVector = PairValueTable(n, rows)
            elif kind == "vector":
                if len(raw) != n:
                    raise TableFormatError(f"vector has {len(raw)} entries, expected {n}")
                entries = SinkValueVector(obj["source"], tuple(raw))
            else:
                raise TableFormatError(f"unknown kind {kind!r}")
            return cls(obj["fingerprint"], n, kind, entries, version)
        except (KeyError, TypeError) as exc:
            raise TableFormatError(f"malformed table file: {exc}") from exc

    @classmethod
    def loads(cls, text: str) -> ValueTableFile:
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise TableFormatError(f"not JSON: {exc}") from exc
        if not isinstance(obj, dict):
            raise TableFormatError("table file must hold a JSON object")
        return cls.from_json(obj)


def cutsets_to_json(g: PlanarDigraph, coll: CutSetCollection) -> dict:
    cuts = [
        {
            "s": s,
            "t": t,
            "capacity": c.capacity,
            "arcs": list(c.arcs),
            "source_side": None if c.source_side is None else list(c.source_side),
        }
        for (s, t), c in sorted(coll.cuts.items())
    ]
    out: dict[str, Any] = {
        "version": FORMAT_VERSION,
        "fingerprint": fingerprint(g),
        "n": coll.n,
        "total_size": coll.total_size,
        "cuts": cuts,
    }
    if coll.shared is not None:
        out["shared"] = [
            {"arcs": list(arcs), "pairs": [list(p) for p in pairs]}
            for arcs, pairs in sorted(coll.shared.items())
        ]
    return out


def cutsets_from_json(obj: dict) -> CutSetCollection:
    cuts = {}
    for c in obj["cuts"]:
        side = c["source_side"]
        cuts[(c["s"], c["t"])] = CutSet(
            tuple(c["arcs"]), c["capacity"], None if side is None else tuple(side)
        )
    shared = None
    if "shared" in obj:
        shared = {
            tuple(e["arcs"]): tuple(tuple(p) for p in e["pairs"]) for e in obj["shared"]
        }
    coll = CutSetCollection(obj["n"], cuts, shared)
    if coll.total_size != obj["total_size"]:
        raise TableFormatError(
            f"total_size {obj['total_size']} disagrees with the listed cuts ({coll.total_size})"
        )
    return coll


def dumps(obj: dict) -> str:
    return _dumps(obj)
