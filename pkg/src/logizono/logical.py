"""Logical zonotopes: center plus independent binary generators.

The represented set is { c xor (xor_i g_i b_i) : b in {0,1}^gamma }.
XOR, NOT and XNOR are exact in generator space; AND (and the gates
derived from it) over-approximate, never missing a point.
"""

from __future__ import annotations

from dataclasses import dataclass

from .binvec import BinaryMatrix, BinaryVector, bv_and, bv_not, bv_xor
from .errors import CapacityError, DimensionError
from .explicit import ExplicitSet

DEFAULT_GEN_CAP = 24


@dataclass(frozen=True)
class LogicalZonotope:
    c: BinaryVector
    G: BinaryMatrix

    def __post_init__(self):
        if self.G.rows != self.c.dim:
            raise DimensionError("generator rows must match center dimension")

    @staticmethod
    def singleton(point):
        return LogicalZonotope(point, BinaryMatrix.empty(point.dim))

    @property
    def dim(self):
        return self.c.dim

    @property
    def gamma(self):
        return self.G.cols


def _check(a, b):
    if a.dim != b.dim:
        raise DimensionError(f"dim {a.dim} vs {b.dim}")


def lz_xor(a: LogicalZonotope, b: LogicalZonotope) -> LogicalZonotope:
    _check(a, b)
    return LogicalZonotope(bv_xor(a.c, b.c), a.G.hstack(b.G))


def lz_not(a: LogicalZonotope) -> LogicalZonotope:
    return LogicalZonotope(bv_not(a.c), a.G)


def lz_xnor(a, b):
    return lz_not(lz_xor(a, b))


def lz_and(a: LogicalZonotope, b: LogicalZonotope) -> LogicalZonotope:
    """Over-approximating AND; the result contains every pointwise product."""
    _check(a, b)
    cols = []
    for g in b.G.columns:
        cols.append(bv_and(a.c, g))
    for g in a.G.columns:
        cols.append(bv_and(b.c, g))
    for g1 in a.G.columns:
        for g2 in b.G.columns:
            cols.append(bv_and(g1, g2))
    return LogicalZonotope(bv_and(a.c, b.c), BinaryMatrix(a.dim, tuple(cols)))


def lz_nand(a, b):
    return lz_not(lz_and(a, b))


def lz_or(a, b):
    return lz_nand(lz_not(a), lz_not(b))


def lz_nor(a, b):
    return lz_not(lz_or(a, b))


def lz_enclose_points(points) -> LogicalZonotope:
    """Zonotope containing every given point (possibly more)."""
    points = list(points)
    if not points:
        raise ValueError("at least one point required")
    c = points[0]
    cols = [bv_xor(s, c) for s in points[1:]]
    return LogicalZonotope(c, BinaryMatrix(c.dim, tuple(cols)))


def lz_evaluate(a: LogicalZonotope, cap=DEFAULT_GEN_CAP) -> ExplicitSet:
    """Enumerate the represented set.

    The work is bounded by reducing the generators to an independent
    basis first, which preserves the set exactly.
    """
    r = lz_reduce(a)
    if r.gamma > cap:
        raise CapacityError(f"{r.gamma} independent generators exceeds cap {cap}")
    points = {a.c.bits}
    for g in r.G.columns:
        points |= {x ^ g.bits for x in points}
    return ExplicitSet(a.dim, frozenset(
        BinaryVector(a.dim, x) for x in points))


def lz_contains(a: LogicalZonotope, point: BinaryVector,
                cap=DEFAULT_GEN_CAP) -> bool:
    if a.dim != point.dim:
        raise DimensionError(f"dim {a.dim} vs {point.dim}")
    # point is in the set iff point xor c lies in the span of the generators
    r = lz_reduce(a)
    x = point.bits ^ a.c.bits
    for g in r.G.columns:
        x = min(x, x ^ g.bits)
    return x == 0


def lz_compact(a: LogicalZonotope) -> LogicalZonotope:
    """Drop all-zero generator columns and duplicate columns."""
    seen = set()
    cols = []
    for g in a.G.columns:
        if g.bits and g.bits not in seen:
            seen.add(g.bits)
            cols.append(g)
    return LogicalZonotope(a.c, BinaryMatrix(a.dim, tuple(cols)))


def lz_reduce(a: LogicalZonotope) -> LogicalZonotope:
    """Replace the generators by an independent basis of their span.

    Because every subset XOR of generator columns is reachable, the
    represented set is the affine span of the columns shifted by the
    center, so this preserves the set exactly while bounding the
    generator count by the dimension.
    """
    basis = []
    for g in a.G.columns:
        x = g.bits
        for b in basis:
            x = min(x, x ^ b)
        if x:
            basis.append(x)
            basis.sort(reverse=True)
    cols = tuple(BinaryVector(a.dim, b) for b in basis)
    return LogicalZonotope(a.c, BinaryMatrix(a.dim, cols))
