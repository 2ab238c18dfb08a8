"""Timing harness for the all-sinks engines.

For each size the harness builds one deterministic instance, times every
engine on it from source 0 and keeps the median of the repetitions.  Growth
exponents come from a least-squares line through ``(log n, log median)``.
"""

from __future__ import annotations

import json
import logging
import os
import platform
import statistics
import time
from dataclasses import asdict, dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import BadRange, TooFewSizes
from .graph import PlanarDigraph, validate_embedding
from .instances import gen_grid, gen_random_planar
from .multisink import sssk_baseline, sssk_fast

log = logging.getLogger(__name__)

MIN_SIZES = 4
MIN_REPS = 3
ENGINES = ("fast", "baseline")
FAMILIES = ("grid", "random-planar")
BENCH_VERSION = 1


def grid_shape(n: int) -> tuple[int, int]:
    """Rows and columns of the benchmark grid with ``n`` vertices.

    Powers of two split as evenly as possible with ``rows <= cols``; other
    sizes use the near-square ``rows x ceil(n / rows)`` grid.
    """
    if n < 1:
        raise BadRange(f"size must be positive, got {n}")
    rows = 1 << ((n.bit_length() - 1) // 2)
    while rows * rows > n:
        rows >>= 1
    return rows, -(-n // rows)


def bench_instance(family: str, n: int, seed: int) -> PlanarDigraph:
    if family == "grid":
        rows, cols = grid_shape(n)
        return gen_grid(rows, cols, 1, 100, seed)
    if family == "random-planar":
        return gen_random_planar(n, 100, seed)
    raise BadRange(f"unknown bench family {family!r}")


def fit_exponent(sizes: Sequence[float], times: Sequence[float]) -> float:
    """Slope of the least-squares line through the log-log points."""
    slope, _ = np.polyfit(np.log(np.asarray(sizes, float)), np.log(np.asarray(times, float)), 1)
    return float(slope)


def environment() -> dict[str, str | int | None]:
    return {
        "python": platform.python_version(),
        "implementation": platform.python_implementation(),
        "platform": platform.platform(),
        "machine": platform.machine(),
        "cpus": os.cpu_count(),
        "numpy": np.__version__,
    }


@dataclass(frozen=True)
class BenchReport:
    """Median wall-clock seconds per engine and size, plus fitted exponents.

    ``speedup[i]`` is ``baseline / fast`` at ``sizes[i]`` when both engines
    ran.
    """

    family: str
    seed: int
    reps: int
    sizes: tuple[int, ...]
    medians: dict[str, tuple[float, ...]]
    exponents: dict[str, float]
    speedup: tuple[float, ...] | None
    env: dict = field(default_factory=dict)
    version: int = BENCH_VERSION

    def to_json(self) -> dict:
        out = asdict(self)
        out["sizes"] = list(self.sizes)
        out["medians"] = {k: list(v) for k, v in self.medians.items()}
        out["speedup"] = None if self.speedup is None else list(self.speedup)
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, obj: dict) -> BenchReport:
        return cls(
            family=obj["family"],
            seed=obj["seed"],
            reps=obj["reps"],
            sizes=tuple(obj["sizes"]),
            medians={k: tuple(v) for k, v in obj["medians"].items()},
            exponents=dict(obj["exponents"]),
            speedup=None if obj["speedup"] is None else tuple(obj["speedup"]),
            env=dict(obj["env"]),
            version=obj["version"],
        )

    @classmethod
    def loads(cls, text: str) -> BenchReport:
        return cls.from_json(json.loads(text))

    def summary(self) -> str:
        lines = [f"family={self.family} seed={self.seed} reps={self.reps}"]
        head = f"{'n':>8}" + "".join(f"{e:>12}" for e in self.medians)
        if self.speedup is not None:
            head += f"{'speedup':>10}"
        lines.append(head)
        for i, n in enumerate(self.sizes):
            row = f"{n:>8}" + "".join(f"{v[i]:>12.4f}" for v in self.medians.values())
            if self.speedup is not None:
                row += f"{self.speedup[i]:>10.1f}"
            lines.append(row)
        lines.append(
            "exponent " + " ".join(f"{e}={x:.3f}" for e, x in self.exponents.items())
        )
        return "\n".join(lines)


def _time(fn: Callable[[], object], clock: Callable[[], float]) -> float:
    start = clock()
    fn()
    return clock() - start


def run_bench(
    sizes: Sequence[int],
    engines: Sequence[str] = ENGINES,
    reps: int = MIN_REPS,
    seed: int = 0,
    family: str = "grid",
    clock: Callable[[], float] = time.perf_counter,
) -> BenchReport:
    """Time the requested engines over ``sizes``.

    Raises:
        TooFewSizes: fewer than four sizes, or fewer than three repetitions.
        BadRange: unknown engine or family.
    """
    sizes = tuple(sorted(set(int(n) for n in sizes)))
    if len(sizes) < MIN_SIZES:
        raise TooFewSizes(f"need at least {MIN_SIZES} distinct sizes, got {len(sizes)}")
    if reps < MIN_REPS:
        raise TooFewSizes(f"need at least {MIN_REPS} repetitions, got {reps}")
    for e in engines:
        if e not in ENGINES:
            raise BadRange(f"unknown bench engine {e!r}; choose from {ENGINES}")
    if family not in FAMILIES:
        raise BadRange(f"unknown bench family {family!r}; choose from {FAMILIES}")

    medians: dict[str, list[float]] = {e: [] for e in engines}
    for n in sizes:
        g = bench_instance(family, n, seed)
        faces = validate_embedding(g)
        runs = {
            "fast": lambda: sssk_fast(g, faces, 0),
            "baseline": lambda: sssk_baseline(g, 0),
        }
        for e in engines:
            samples = [_time(runs[e], clock) for _ in range(reps)]
            medians[e].append(statistics.median(samples))
            log.info("n=%d %s median %.4fs", n, e, medians[e][-1])
    exponents = {e: fit_exponent(sizes, medians[e]) for e in engines}
    speedup = None
    if "fast" in medians and "baseline" in medians:
        speedup = tuple(b / f for b, f in zip(medians["baseline"], medians["fast"]))
    return BenchReport(
        family=family,
        seed=seed,
        reps=reps,
        sizes=sizes,
        medians={e: tuple(v) for e, v in medians.items()},
        exponents=exponents,
        speedup=speedup,
        env=environment(),
    )
