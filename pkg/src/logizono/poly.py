"""Polynomial logical zonotopes: dependent factors with an exponent matrix.

The represented set is
    { c xor (xor_i (and_k a_k^E[k,i]) g_i) : a in {0,1}^p }
with a^0 = 1, so an all-zero exponent column makes its generator
unconditional. Factors are named by globally unique identifiers; two
zonotopes sharing an identifier share that factor, which is what makes
the exact operations dependency-aware.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

from .binvec import BinaryMatrix, BinaryVector, bv_and, bv_not, bv_xor
from .errors import CapacityError, DimensionError
from .explicit import ExplicitSet

DEFAULT_FACTOR_CAP = 24

_id_lock = threading.Lock()
_id_next = 1


def unique_id(count):
    """Allocate count fresh, globally unique, strictly increasing ids."""
    global _id_next
    if count < 0:
        raise ValueError("count must be >= 0")
    with _id_lock:
        start = _id_next
        _id_next += count
    return tuple(range(start, start + count))


@dataclass(frozen=True)
class PolyLogicalZonotope:
    c: BinaryVector
    G: BinaryMatrix  # n x h dependent generators
    E: BinaryMatrix  # p x h exponent matrix, one column per generator
    id: tuple  # p distinct factor identifiers

    def __post_init__(self):
        if self.G.rows != self.c.dim:
            raise DimensionError("generator rows must match center dimension")
        if self.E.cols != self.G.cols:
            raise DimensionError("E must have one column per generator")
        if self.E.rows != len(self.id):
            raise DimensionError("E must have one row per identifier")
        if len(set(self.id)) != len(self.id):
            raise ValueError("identifiers must be pairwise distinct")

    @staticmethod
    def singleton(point):
        return PolyLogicalZonotope(
            point, BinaryMatrix.empty(point.dim), BinaryMatrix.empty(0), ())

    @property
    def dim(self):
        return self.c.dim

    @property
    def h(self):
        return self.G.cols

    @property
    def p(self):
        return len(self.id)

    def to_json(self):
        return {
            "c": self.c.to_string(),
            "G": self.G.to_strings(),
            "E": self.E.to_strings(),
            "id": list(self.id),
        }

    @staticmethod
    def from_json(doc):
        c = BinaryVector.from_string(doc["c"])
        ids = tuple(doc["id"])
        G = BinaryMatrix(c.dim, tuple(
            BinaryVector.from_string(s) for s in doc["G"]))
        E = BinaryMatrix(len(ids), tuple(
            BinaryVector.from_string(s) for s in doc["E"]))
        return PolyLogicalZonotope(c, G, E, ids)


def _check(a, b):
    if a.dim != b.dim:
        raise DimensionError(f"dim {a.dim} vs {b.dim}")


def merge_id(a, b):
    """Rewrite both zonotopes onto one common identifier vector.

    The merged vector lists a's identifiers first, then b's identifiers
    that a lacks; exponent rows are zero-padded or permuted accordingly.
    Both results represent exactly the same sets as the inputs.
    """
    extra = tuple(i for i in b.id if i not in set(a.id))
    merged = a.id + extra
    ea = BinaryMatrix(len(merged), tuple(
        BinaryVector(len(merged), col.bits) for col in a.E.columns))
    b_row = {ident: r for r, ident in enumerate(b.id)}
    eb_cols = []
    for col in b.E.columns:
        bits = 0
        for r, ident in enumerate(merged):
            if ident in b_row:
                bits |= ((col.bits >> b_row[ident]) & 1) << r
        eb_cols.append(BinaryVector(len(merged), bits))
    a2 = PolyLogicalZonotope(a.c, a.G, ea, merged)
    b2 = PolyLogicalZonotope(b.c, b.G, BinaryMatrix(len(merged), tuple(eb_cols)),
                             merged)
    return a2, b2


def _relabel(a):
    """Same structure with fresh identifiers (Minkowski independence)."""
    return PolyLogicalZonotope(a.c, a.G, a.E, unique_id(a.p))


def pz_mink_xor(a, b):
    _check(a, b)
    p1, p2 = a.p, b.p
    rows = p1 + p2
    cols = [BinaryVector(rows, col.bits) for col in a.E.columns]
    cols += [BinaryVector(rows, col.bits << p1) for col in b.E.columns]
    return PolyLogicalZonotope(
        bv_xor(a.c, b.c), a.G.hstack(b.G),
        BinaryMatrix(rows, tuple(cols)), unique_id(rows))


def _and_generators(a, b):
    cols = []
    for g in b.G.columns:
        cols.append(bv_and(a.c, g))
    for g in a.G.columns:
        cols.append(bv_and(b.c, g))
    for g1 in a.G.columns:
        for g2 in b.G.columns:
            cols.append(bv_and(g1, g2))
    return BinaryMatrix(a.dim, tuple(cols))


def pz_mink_and(a, b):
    """Exact AND of independently-varying operands.

    Cross terms are gated by the conjunction of both operands' monomials,
    expressed over a fresh factor vector of length p1 + p2.
    """
    _check(a, b)
    p1, p2 = a.p, b.p
    rows = p1 + p2
    ecols = [BinaryVector(rows, col.bits << p1) for col in b.E.columns]
    ecols += [BinaryVector(rows, col.bits) for col in a.E.columns]
    for c1 in a.E.columns:
        for c2 in b.E.columns:
            ecols.append(BinaryVector(rows, c1.bits | (c2.bits << p1)))
    return PolyLogicalZonotope(
        bv_and(a.c, b.c), _and_generators(a, b),
        BinaryMatrix(rows, tuple(ecols)), unique_id(rows))


def pz_not(a):
    return PolyLogicalZonotope(bv_not(a.c), a.G, a.E, a.id)


def pz_mink_xnor(a, b):
    return pz_not(pz_mink_xor(a, b))


def pz_mink_nand(a, b):
    return pz_not(pz_mink_and(a, b))


def pz_mink_or(a, b):
    return pz_mink_nand(pz_not(a), pz_not(b))


def pz_mink_nor(a, b):
    return pz_not(pz_mink_or(a, b))


def pz_exact_xor(a, b):
    a, b = merge_id(a, b)
    return PolyLogicalZonotope(
        bv_xor(a.c, b.c), a.G.hstack(b.G), a.E.hstack(b.E), a.id)


def pz_exact_and(a, b):
    a, b = merge_id(a, b)
    ecols = list(b.E.columns) + list(a.E.columns)
    for c1 in a.E.columns:
        for c2 in b.E.columns:
            ecols.append(BinaryVector(len(a.id), c1.bits | c2.bits))
    return PolyLogicalZonotope(
        bv_and(a.c, b.c), _and_generators(a, b),
        BinaryMatrix(len(a.id), tuple(ecols)), a.id)


def pz_exact_xnor(a, b):
    return pz_not(pz_exact_xor(a, b))


def pz_exact_nand(a, b):
    return pz_not(pz_exact_and(a, b))


def pz_exact_or(a, b):
    return pz_exact_nand(pz_not(a), pz_not(b))


def pz_exact_nor(a, b):
    return pz_not(pz_exact_or(a, b))


def pz_enclose_points(points):
    """Zonotope containing every given point, one factor per generator."""
    points = list(points)
    if not points:
        raise ValueError("at least one point required")
    c = points[0]
    gcols = tuple(bv_xor(s, c) for s in points[1:])
    k = len(gcols)
    ecols = tuple(BinaryVector(k, 1 << i) for i in range(k)) if k else ()
    return PolyLogicalZonotope(
        c, BinaryMatrix(c.dim, gcols), BinaryMatrix(k, ecols), unique_id(k))


def eval_at(a, assignment):
    """Evaluate for one factor assignment, a mapping id -> 0/1."""
    alpha = [assignment[i] for i in a.id]
    out = a.c.bits
    for g, e in zip(a.G.columns, a.E.columns):
        if all(alpha[k] for k in range(a.p) if (e.bits >> k) & 1):
            out ^= g.bits
    return BinaryVector(a.dim, out)


def value_table(a, id_order=None):
    """Values of a for every assignment over id_order, as packed ints.

    Entry i holds the value for the assignment where factor id_order[k]
    equals bit k of i. Computed by scattering generators onto their
    monomials and applying the XOR zeta transform, so the cost is
    O(h + p * 2^p) instead of O(h * 2^p).
    """
    if id_order is None:
        id_order = a.id
    pos = {ident: k for k, ident in enumerate(id_order)}
    p = len(id_order)
    table = [0] * (1 << p)
    table[0] = a.c.bits
    for g, e in zip(a.G.columns, a.E.columns):
        idx = 0
        for r, ident in enumerate(a.id):
            if (e.bits >> r) & 1:
                idx |= 1 << pos[ident]
        table[idx] ^= g.bits
    for k in range(p):
        bit = 1 << k
        for i in range(1 << p):
            if i & bit:
                table[i] ^= table[i ^ bit]
    return table


def pz_evaluate(a, cap=DEFAULT_FACTOR_CAP) -> ExplicitSet:
    if a.p > cap:
        raise CapacityError(f"{a.p} factors exceeds cap {cap}")
    table = value_table(a)
    return ExplicitSet(a.dim, frozenset(
        BinaryVector(a.dim, bits) for bits in set(table)))


def pz_contains(a, point, cap=DEFAULT_FACTOR_CAP):
    if a.dim != point.dim:
        raise DimensionError(f"dim {a.dim} vs {point.dim}")
    return point in pz_evaluate(a, cap=cap).points


def pz_simplify(a, cap=DEFAULT_FACTOR_CAP):
    """Greedily drop generators whose removal keeps the same point set,
    then drop identifier rows no remaining generator uses."""
    target = pz_evaluate(a, cap=cap).points
    gcols = list(a.G.columns)
    ecols = list(a.E.columns)
    i = 0
    while i < len(gcols):
        trial = PolyLogicalZonotope(
            a.c,
            BinaryMatrix(a.dim, tuple(gcols[:i] + gcols[i + 1:])),
            BinaryMatrix(a.p, tuple(ecols[:i] + ecols[i + 1:])),
            a.id)
        if pz_evaluate(trial, cap=cap).points == target:
            del gcols[i]
            del ecols[i]
        else:
            i += 1
    reduced = PolyLogicalZonotope(
        a.c, BinaryMatrix(a.dim, tuple(gcols)),
        BinaryMatrix(a.p, tuple(ecols)), a.id)
    return _drop_unused_rows(reduced)


def pz_compact(a):
    """Cheap reduction preserving eval_at for every assignment: drop zero
    generators, XOR-merge generators with identical exponent columns, and
    drop identifier rows that gate nothing."""
    merged = {}
    order = []
    for g, e in zip(a.G.columns, a.E.columns):
        if e.bits in merged:
            merged[e.bits] ^= g.bits
        else:
            merged[e.bits] = g.bits
            order.append(e.bits)
    gcols = [BinaryVector(a.dim, merged[e]) for e in order if merged[e]]
    ecols = [BinaryVector(a.p, e) for e in order if merged[e]]
    out = PolyLogicalZonotope(
        a.c, BinaryMatrix(a.dim, tuple(gcols)),
        BinaryMatrix(a.p, tuple(ecols)), a.id)
    return _drop_unused_rows(out)


def _drop_unused_rows(a):
    used = 0
    for e in a.E.columns:
        used |= e.bits
    keep = [k for k in range(a.p) if (used >> k) & 1]
    if len(keep) == a.p:
        return a
    ecols = []
    for e in a.E.columns:
        bits = 0
        for r, k in enumerate(keep):
            bits |= ((e.bits >> k) & 1) << r
        ecols.append(BinaryVector(len(keep), bits))
    return PolyLogicalZonotope(
        a.c, a.G, BinaryMatrix(len(keep), tuple(ecols)),
        tuple(a.id[k] for k in keep))


def pz_encode_points(points):
    """Exact encoding of a finite point set.

    Maps ceil(log2 m) fresh factors onto the m given points (padding by
    repeating the last point) and converts each coordinate's truth table
    to its XOR-of-monomials normal form, yielding a zonotope whose
    evaluation is exactly the given set.
    """
    points = sorted(set(points), key=lambda v: v.bits)
    if not points:
        raise ValueError("at least one point required")
    n = points[0].dim
    m = len(points)
    p = max(m - 1, 0).bit_length()
    table = [points[min(i, m - 1)].bits for i in range(1 << p)]
    for k in range(p):
        step = 1 << k
        for i in range(1 << p):
            if i & step:
                table[i] ^= table[i ^ step]
    gcols = []
    ecols = []
    for idx in range(1, 1 << p):
        if table[idx]:
            gcols.append(BinaryVector(n, table[idx]))
            ecols.append(BinaryVector(p, idx))
    c = BinaryVector(n, table[0])
    return PolyLogicalZonotope(
        c, BinaryMatrix(n, tuple(gcols)), BinaryMatrix(p, tuple(ecols)),
        unique_id(p))
