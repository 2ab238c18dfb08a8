"""``pft`` command line.

Vertex ids on the command line, in query lines and in text output are
1-based like DIMACS files; JSON files index arrays from 0.  Results go to
stdout (or ``--out``), logs to stderr.  Exit status: 0 on success, 1 on a
domain error or failed check, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from typing import Callable, Sequence, TextIO

from .bench import ENGINES as BENCH_ENGINES
from .bench import FAMILIES as BENCH_FAMILIES
from .bench import run_bench
from .cutsets import all_cutsets, verify_cutset
from .dimacs import Terminals, parse_dimacs, write_dimacs
from .errors import BadPairLine, EulerViolation, NotConnected, PlanarFlowError
from .flows import max_flow_planar, max_flow_reference, min_cut_from_flow, verify_flow
from .graph import PlanarDigraph, build_graph, validate_embedding
from .instances import GenSpec
from .multisink import (
    PairValueTable,
    SinkValueVector,
    all_pairs_values,
    distinct_values,
    sssk_baseline,
    sssk_fast,
)
from .tables import ValueTableFile, cutsets_to_json, dumps

log = logging.getLogger("planarflow.cli")

DEFAULT_REPRO = "pft-repro.dimacs"
DIAGONAL_MARKER = "!undefined"


class UsageError(Exception):
    """Bad flag combination detected after argument parsing."""


# -- helpers ----------------------------------------------------------------


def _configure_logging() -> None:
    level = os.environ.get("PFT_LOG", "WARNING").upper()
    logging.basicConfig(
        stream=sys.stderr,
        level=getattr(logging, level, logging.WARNING),
        format="%(levelname)s %(name)s: %(message)s",
    )


def _read_graph(path: str | None) -> tuple[PlanarDigraph, Terminals]:
    if path is None:
        raise UsageError("--in is required")
    if path == "-":
        return parse_dimacs(sys.stdin.read())
    with open(path) as fh:
        return parse_dimacs(fh.read())


def _emit(args: argparse.Namespace, text: str) -> None:
    if args.out and args.out != "-":
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _vertex(flag: str, value: int | None, fallback: int | None, n: int) -> int:
    """Turn a 1-based flag value (or a file designation) into a 0-based id."""
    if value is not None:
        if not 1 <= value <= n:
            raise UsageError(f"{flag} {value} out of range 1..{n}")
        return value - 1
    if fallback is None:
        raise UsageError(f"{flag} is required (the input file designates none)")
    return fallback


def _faces_or_none(g: PlanarDigraph):
    if not g.has_embedding:
        return None
    try:
        return validate_embedding(g)
    except (NotConnected, EulerViolation) as exc:
        log.warning("embedding unusable (%s)", exc)
        return None


def _vector_text(vec: SinkValueVector) -> str:
    width = len(str(len(vec.values)))
    lines = [f"{'sink':>{width}}  value"]
    for t, v in enumerate(vec.values):
        if t != vec.source:
            lines.append(f"{t + 1:>{width}}  {v}")
    return "\n".join(lines) + "\n"


def _table_text(table: PairValueTable) -> str:
    cells = [["-" if v is None else str(v) for v in row] for row in table.rows]
    width = max([len(str(table.n))] + [len(c) for row in cells for c in row])
    head = " " * width + " " + " ".join(f"{t + 1:>{width}}" for t in range(table.n))
    body = [
        f"{s + 1:>{width}} " + " ".join(f"{c:>{width}}" for c in row)
        for s, row in enumerate(cells)
    ]
    return "\n".join([head, *body]) + "\n"


# -- reproducer shrinking -----------------------------------------------------


def _component(g: PlanarDigraph, s: int) -> list[int]:
    adj: list[list[int]] = [[] for _ in range(g.n)]
    for u, v, _ in g.arcs:
        adj[u].append(v)
        adj[v].append(u)
    seen = {s}
    stack = [s]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return sorted(seen)


def _drop_arc(g: PlanarDigraph, k: int, s: int) -> tuple[PlanarDigraph, int]:
    """``g`` without arc ``k``, cut down to the component of ``s``.

    Returns the smaller graph and the new id of ``s``.
    """
    keep = [i for i in range(g.m) if i != k]
    h = build_graph(
        g.n,
        [g.arcs[i] for i in keep],
        None if g.rotation is None else _renumber_rotation(g.rotation, keep, range(g.n)),
    )
    verts = _component(h, s)
    if len(verts) == g.n:
        return h, s
    new_id = {v: i for i, v in enumerate(verts)}
    keep = [i for i, (u, _, _) in enumerate(h.arcs) if u in new_id]
    arcs = [(new_id[h.arcs[i].tail], new_id[h.arcs[i].head], h.arcs[i].capacity) for i in keep]
    rotation = None if h.rotation is None else _renumber_rotation(h.rotation, keep, verts)
    return build_graph(len(verts), arcs, rotation), new_id[s]


def _renumber_rotation(rotation, keep: list[int], verts) -> list[list[int]]:
    new_arc = {k: i for i, k in enumerate(keep)}
    return [
        [2 * new_arc[d >> 1] + (d & 1) for d in rotation[v] if (d >> 1) in new_arc]
        for v in verts
    ]


def shrink_mismatch(
    g: PlanarDigraph,
    s: int,
    differs: Callable[[PlanarDigraph, int], bool],
) -> tuple[PlanarDigraph, int]:
    """Greedily shrink ``g`` while ``differs(g, s)`` keeps reporting a mismatch.

    Arcs are deleted (keeping only the component of ``s``) and capacities
    lowered to 1 until neither step preserves the mismatch.
    """
    changed = True
    while changed:
        changed = False
        k = g.m - 1
        while k >= 0:
            h, hs = _drop_arc(g, k, s)
            if differs(h, hs):
                g, s = h, hs
                changed = True
            k = min(k, g.m) - 1
        for k, (u, v, c) in enumerate(g.arcs):
            if c > 1:
                arcs = list(g.arcs)
                arcs[k] = (u, v, 1)
                h = build_graph(g.n, arcs, g.rotation)
                if differs(h, s):
                    g = h
                    changed = True
    return g, s


def _sssk(engine: str, g: PlanarDigraph, s: int) -> SinkValueVector:
    if engine == "fast":
        return sssk_fast(g, validate_embedding(g), s)
    if engine == "baseline":
        return sssk_baseline(g, s)
    return sssk_baseline(g.without_rotation(), s)


# -- subcommands --------------------------------------------------------------


def cmd_maxflow(args: argparse.Namespace) -> int:
    g, term = _read_graph(args.inp)
    s = _vertex("--source", args.source, term.source, g.n)
    t = _vertex("--sink", args.sink, term.sink, g.n)
    faces = None if args.engine == "reference" else _faces_or_none(g)
    if faces is not None:
        result = max_flow_planar(g, faces, s, t)
    else:
        result = max_flow_reference(g, s, t)
    cut = min_cut_from_flow(g, result) if args.cut else None
    if args.format == "json":
        obj: dict = {"source": s, "sink": t, "value": result.value}
        if cut is not None:
            obj["cut"] = {"arcs": list(cut.arcs), "capacity": cut.capacity}
        _emit(args, dumps(obj))
    else:
        text = f"value {result.value}\n"
        if cut is not None:
            text += "cut " + " ".join(str(k + 1) for k in cut.arcs) + "\n"
        _emit(args, text)
    return 0


def cmd_sssk(args: argparse.Namespace) -> int:
    g, term = _read_graph(args.inp)
    s = _vertex("--source", args.source, term.source, g.n)
    vec = _sssk(args.engine, g, s)
    if args.check:
        other = "baseline" if args.engine != "baseline" else "reference"
        want = _sssk(other, g, s)
        if want != vec:
            bad = next(t for t in range(g.n) if want[t] != vec[t])

            def differs(h: PlanarDigraph, hs: int) -> bool:
                return _sssk(args.engine, h, hs) != _sssk(other, h, hs)

            small, ss = shrink_mismatch(g, s, differs)
            a = _sssk(args.engine, small, ss)
            b = _sssk(other, small, ss)
            sink = next(t for t in range(small.n) if a[t] != b[t])
            path = args.repro or DEFAULT_REPRO
            with open(path, "w") as fh:
                fh.write(write_dimacs(small, Terminals(ss, sink)))
            print(
                f"check failed: sink {bad + 1} {args.engine}={vec[bad]} {other}={want[bad]}; "
                f"reproducer with {small.n} vertices and {small.m} arcs written to {path}",
                file=sys.stderr,
            )
            return 1
        log.info("check passed against %s", other)
    if args.format == "json":
        _emit(args, ValueTableFile.for_graph(g, vec).dumps())
    else:
        _emit(args, _vector_text(vec))
    return 0


def cmd_allpairs(args: argparse.Namespace) -> int:
    g, _ = _read_graph(args.inp)
    table = all_pairs_values(g, validate_embedding(g), jobs=args.jobs)
    if args.out and args.out != "-":
        # the table file is always JSON so that `query` can load it
        with open(args.out, "w") as fh:
            fh.write(ValueTableFile.for_graph(g, table).dumps())
    elif args.format == "json":
        sys.stdout.write(ValueTableFile.for_graph(g, table).dumps())
    else:
        sys.stdout.write(_table_text(table))
    if args.distinct:
        print(f"distinct {distinct_values(table)}")
    return 0


def cmd_cutsets(args: argparse.Namespace) -> int:
    g, _ = _read_graph(args.inp)
    coll = all_cutsets(g, validate_embedding(g), include_zero=args.include_zero, dedup=args.dedup)
    if args.format == "json":
        _emit(args, dumps(cutsets_to_json(g, coll)))
        return 0
    lines = []
    for (s, t), c in sorted(coll.cuts.items()):
        arcs = " ".join(str(k + 1) for k in c.arcs)
        lines.append(f"{s + 1} {t + 1} capacity {c.capacity} arcs {arcs}".rstrip())
    lines.append(f"pairs {len(coll)} total_size {coll.total_size}")
    if coll.shared is not None:
        lines.append(f"distinct_cuts {len(coll.shared)}")
    _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_gen(args: argparse.Namespace) -> int:
    spec = GenSpec(
        family=args.family,
        size=tuple(args.size),
        cap_lo=args.cap_lo,
        cap_hi=args.cap_hi,
        seed=args.seed,
        caps=tuple(args.caps or ()),
    )
    if args.family == "path" and not args.caps and len(args.size) != 1:
        raise UsageError("path needs --caps or a single --size")
    expected = {"grid": 2, "hard": 1, "random-planar": 1}.get(args.family)
    if expected is not None and len(args.size) != expected:
        raise UsageError(f"--size for {args.family} takes {expected} value(s)")
    _emit(args, write_dimacs(spec.build()))
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    engines = args.engines or list(BENCH_ENGINES)
    report = run_bench(args.sizes, engines, args.reps, args.seed, args.family)
    _emit(args, report.dumps() if args.format == "json" else report.summary() + "\n")
    return 0


def _query_lines(table: ValueTableFile, n: int, stream: TextIO) -> list[str]:
    out = []
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise BadPairLine(lineno, line)
        s, t = int(parts[0]), int(parts[1])
        if not (1 <= s <= n and 1 <= t <= n):
            raise BadPairLine(lineno, line)
        if s == t:
            out.append(f"{DIAGONAL_MARKER} {s} {t}")
            continue
        out.append(str(table.lookup(s - 1, t - 1)))
    return out


def cmd_query(args: argparse.Namespace) -> int:
    if not args.table:
        raise UsageError("--table is required")
    with open(args.table) as fh:
        table = ValueTableFile.loads(fh.read())
    if args.inp is not None:
        g, _ = _read_graph(args.inp)
        table.check(g)
    else:
        log.warning("no --in graph given; fingerprint not checked")
    lines = _query_lines(table, table.n, sys.stdin)
    _emit(args, "".join(x + "\n" for x in lines))
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    g, term = _read_graph(args.inp)
    findings: list[tuple[str, bool, str]] = []
    if g.has_embedding:
        try:
            faces = validate_embedding(g)
            findings.append(("embedding", True, f"f={faces.f}"))
        except PlanarFlowError as exc:
            faces = None
            findings.append(("embedding", False, str(exc)))
    else:
        faces = None
        findings.append(("embedding", True, "absent"))
    want_pair = args.source is not None or args.sink is not None or term.source is not None
    if want_pair:
        s = _vertex("--source", args.source, term.source, g.n)
        t = _vertex("--sink", args.sink, term.sink, g.n)
        result = max_flow_planar(g, faces, s, t) if faces else max_flow_reference(g, s, t)
        rep = verify_flow(g, result)
        findings.append(("flow", rep.ok, "; ".join(v.detail for v in rep.violations)))
        cut = min_cut_from_flow(g, result)
        rep = verify_cutset(g, s, t, cut)
        findings.append(("cut", rep.ok, "; ".join(v.detail for v in rep.violations)))
    ok = all(f[1] for f in findings)
    if args.format == "json":
        _emit(
            args,
            dumps(
                {
                    "ok": ok,
                    "checks": [{"name": n, "ok": k, "detail": d} for n, k, d in findings],
                }
            ),
        )
    else:
        text = "".join(f"{n:<10} {'ok' if k else 'FAIL'} {d}".rstrip() + "\n" for n, k, d in findings)
        _emit(args, text)
    return 0 if ok else 1


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--in", dest="inp", metavar="PATH", help="input DIMACS file ('-' for stdin)")
    common.add_argument("--out", metavar="PATH", help="write results here instead of stdout")
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--seed", type=int, default=0, help="64-bit generator seed")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")
    common.add_argument(
        "--engine", choices=("fast", "baseline", "reference"), default="fast"
    )

    parser = argparse.ArgumentParser(prog="pft", description="Exact max-flow tools for planar digraphs.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("maxflow", parents=[common], help="single-pair max flow")
    p.add_argument("--source", type=int)
    p.add_argument("--sink", type=int)
    p.add_argument("--cut", action="store_true", help="also print the source-minimal cut")
    p.set_defaults(func=cmd_maxflow)

    p = sub.add_parser("sssk", parents=[common], help="values from one source to every sink")
    p.add_argument("--source", type=int)
    p.add_argument("--check", action="store_true", help="compare against a second engine")
    p.add_argument("--repro", metavar="PATH", help=f"reproducer path (default {DEFAULT_REPRO})")
    p.set_defaults(func=cmd_sssk)

    p = sub.add_parser("allpairs", parents=[common], help="full pair table")
    p.add_argument("--distinct", action="store_true", help="print the distinct value count")
    p.set_defaults(func=cmd_allpairs)

    p = sub.add_parser("cutsets", parents=[common], help="canonical cut for every pair")
    p.add_argument("--include-zero", action="store_true")
    p.add_argument("--dedup", action="store_true")
    p.set_defaults(func=cmd_cutsets)

    p = sub.add_parser("gen", parents=[common], help="generate an instance as DIMACS")
    p.add_argument("--family", choices=("grid", "path", "hard", "random-planar"), required=True)
    p.add_argument("--size", type=int, nargs="+", default=[], help="rows cols | length | k | n")
    p.add_argument("--cap-lo", type=int, default=1)
    p.add_argument("--cap-hi", type=int, default=100)
    p.add_argument("--caps", type=int, nargs="+", help="explicit path capacities")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", parents=[common], help="time the all-sinks engines")
    p.add_argument("--sizes", type=int, nargs="+", default=[1024, 2048, 4096, 8192])
    p.add_argument("--engines", nargs="+", choices=BENCH_ENGINES)
    p.add_argument("--reps", type=int, default=3)
    p.add_argument("--family", choices=BENCH_FAMILIES, default="grid")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("query", parents=[common], help="look up 's t' lines from stdin in a table")
    p.add_argument("--table", metavar="PATH")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("verify", parents=[common], help="check embedding, flow and cut")
    p.add_argument("--source", type=int)
    p.add_argument("--sink", type=int)
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    _configure_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"pft {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except (PlanarFlowError, OSError) as exc:
        print(f"pft {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
