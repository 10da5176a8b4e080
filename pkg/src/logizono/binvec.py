"""Bit-exact binary vectors and matrices over {0, 1}.

Vectors are immutable and bit-packed into a single Python integer,
least-significant-bit first. The textual form is a string of '0'/'1'
characters with index 1 leftmost, matching model files and CLI output.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import DimensionError


class Gate(enum.Enum):
    XOR = "xor"
    AND = "and"
    OR = "or"
    XNOR = "xnor"
    NAND = "nand"
    NOR = "nor"


def _mask(dim):
    return (1 << dim) - 1


@dataclass(frozen=True)
class BinaryVector:
    dim: int
    bits: int

    def __post_init__(self):
        # dim 0 is permitted so factor-free exponent matrices can still
        # carry one column per generator
        if self.dim < 0:
            raise DimensionError("vector dimension must be >= 0")
        if not 0 <= self.bits <= _mask(self.dim):
            raise ValueError("payload has bits outside the declared dimension")

    @staticmethod
    def from_bits(values):
        values = list(values)
        bits = 0
        for i, v in enumerate(values):
            if v not in (0, 1):
                raise ValueError("bits must be 0 or 1")
            bits |= v << i
        return BinaryVector(len(values), bits)

    @staticmethod
    def from_string(text):
        return BinaryVector.from_bits(int(ch) for ch in text.strip())

    @staticmethod
    def zeros(dim):
        return BinaryVector(dim, 0)

    @staticmethod
    def ones(dim):
        return BinaryVector(dim, _mask(dim))

    def __getitem__(self, i):
        if not 0 <= i < self.dim:
            raise IndexError(i)
        return (self.bits >> i) & 1

    def __iter__(self):
        return iter((self.bits >> i) & 1 for i in range(self.dim))

    def to_string(self):
        return "".join(str(b) for b in self)

    def __str__(self):
        return self.to_string()

    def is_zero(self):
        return self.bits == 0


def bv_op(a: BinaryVector, b: BinaryVector, gate: Gate) -> BinaryVector:
    """Apply a two-input gate elementwise."""
    if a.dim != b.dim:
        raise DimensionError(f"dim {a.dim} vs {b.dim}")
    m = _mask(a.dim)
    x, y = a.bits, b.bits
    if gate is Gate.XOR:
        r = x ^ y
    elif gate is Gate.AND:
        r = x & y
    elif gate is Gate.OR:
        r = x | y
    elif gate is Gate.XNOR:
        r = ~(x ^ y) & m
    elif gate is Gate.NAND:
        r = ~(x & y) & m
    elif gate is Gate.NOR:
        r = ~(x | y) & m
    else:
        raise ValueError(gate)
    return BinaryVector(a.dim, r)


def bv_not(a: BinaryVector) -> BinaryVector:
    return BinaryVector(a.dim, ~a.bits & _mask(a.dim))


def bv_xor(a, b):
    return bv_op(a, b, Gate.XOR)


def bv_and(a, b):
    return bv_op(a, b, Gate.AND)


@dataclass(frozen=True)
class BinaryMatrix:
    """A column-major binary matrix; columns are BinaryVectors of dim rows."""

    rows: int
    columns: tuple

    def __post_init__(self):
        for col in self.columns:
            if col.dim != self.rows:
                raise DimensionError("column dimension does not match row count")

    @staticmethod
    def from_columns(columns, rows=None):
        columns = tuple(columns)
        if rows is None:
            if not columns:
                raise ValueError("rows required for an empty matrix")
            rows = columns[0].dim
        return BinaryMatrix(rows, columns)

    @staticmethod
    def empty(rows):
        return BinaryMatrix(rows, ())

    @property
    def cols(self):
        return len(self.columns)

    def col(self, i):
        return self.columns[i]

    def hstack(self, other):
        if other.rows != self.rows:
            raise DimensionError("row counts differ")
        return BinaryMatrix(self.rows, self.columns + other.columns)

    def to_strings(self):
        return [col.to_string() for col in self.columns]
