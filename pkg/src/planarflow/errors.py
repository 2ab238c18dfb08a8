"""Exception hierarchy.

Every error raised by the toolkit derives from :class:`PlanarFlowError`, which
lets the CLI map domain failures to exit code 1 with a single ``except``.
"""

from __future__ import annotations


class PlanarFlowError(Exception):
    """Base class for all domain errors."""


# -- graph construction -----------------------------------------------------


class GraphError(PlanarFlowError, ValueError):
    pass


class IdOutOfRange(GraphError):
    def __init__(self, what: str, value: int, limit: int) -> None:
        super().__init__(f"{what} {value} out of range [0, {limit})")
        self.what = what
        self.value = value
        self.limit = limit


class CapacityOutOfRange(GraphError):
    pass


class DuplicateDart(GraphError):
    def __init__(self, dart: int) -> None:
        super().__init__(f"dart {dart} appears more than once in the rotation system")
        self.dart = dart


class DanglingDart(GraphError):
    def __init__(self, dart: int, detail: str) -> None:
        super().__init__(f"dart {dart}: {detail}")
        self.dart = dart


# -- embedding --------------------------------------------------------------


class InvalidEmbedding(PlanarFlowError):
    pass


class NotConnected(InvalidEmbedding):
    pass


class EulerViolation(InvalidEmbedding):
    def __init__(self, n: int, m: int, f: int) -> None:
        super().__init__(f"n - m + f = {n} - {m} + {f} = {n - m + f}, expected 2")
        self.n = n
        self.m = m
        self.f = f


# -- DIMACS -----------------------------------------------------------------


class DimacsError(PlanarFlowError):
    pass


class DimacsSyntaxError(DimacsError):
    def __init__(self, line: int, detail: str) -> None:
        super().__init__(f"line {line}: {detail}")
        self.line = line


class MissingProblemLine(DimacsError):
    pass


class RotationIncomplete(DimacsError):
    pass


# -- flows ------------------------------------------------------------------


class SameSourceSink(PlanarFlowError):
    def __init__(self, vertex: int, index: int | None = None) -> None:
        where = "" if index is None else f" (pair #{index})"
        super().__init__(f"source and sink are both {vertex}{where}")
        self.vertex = vertex
        self.index = index


class NotMaximal(PlanarFlowError):
    pass


class TooLarge(PlanarFlowError):
    def __init__(self, n: int, limit: int) -> None:
        super().__init__(f"brute force limited to n <= {limit}, got n = {n}")
        self.n = n


# -- tables, generators, bench, query --------------------------------------


class IncompleteTable(PlanarFlowError):
    pass


class BadRange(PlanarFlowError, ValueError):
    pass


class EmptyCaps(PlanarFlowError, ValueError):
    pass


class TooFewSizes(PlanarFlowError, ValueError):
    pass


class FingerprintMismatch(PlanarFlowError):
    pass


class BadPairLine(PlanarFlowError):
    def __init__(self, line: int, text: str) -> None:
        super().__init__(f"line {line}: cannot parse pair {text!r}")
        self.line = line
