"""Ready-made case studies: intersection protocol, a 10-bit Boolean
function family, and LFSR keystream generation plus exhaustive key search
over per-bit key sets."""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass

from .binvec import BinaryMatrix, BinaryVector
from .errors import SearchFailure
from .logical import LogicalZonotope, lz_compact
from .model import Model, parse_model


def intersection_document() -> dict:
    """Model document for the four-vehicle crossing protocol.

    Each vehicle i has a passing flag p_i and a came-first flag c_i:
        p_i(k+1) = up_i(k) & !p_i(k) & !c_i(k)
        c_i(k+1) = !p_i(k+1) & (uc_i(k) | (!p_i(k) & p_i(k+1)))
    Vehicles 1 and 3 may request to pass (up free); 2 and 4 never do.
    Initially vehicle 1 is passing and came first, vehicle 3 is neither,
    and vehicles 2 and 4 are unknown.
    """
    doc = {"vars": [], "updates": {}, "order": []}
    init_p = {1: ["1"], 2: ["0", "1"], 3: ["0"], 4: ["0", "1"]}
    for i in (1, 2, 3, 4):
        doc["vars"].append({"name": f"p{i}", "role": "state", "dim": 1,
                            "init": init_p[i]})
    for i in (1, 2, 3, 4):
        doc["vars"].append({"name": f"c{i}", "role": "state", "dim": 1,
                            "init": init_p[i]})
    for i in (1, 2, 3, 4):
        doc["vars"].append({"name": f"up{i}", "role": "input", "dim": 1,
                            "set": ["0", "1"] if i in (1, 3) else ["0"]})
        doc["vars"].append({"name": f"uc{i}", "role": "input", "dim": 1,
                            "set": ["0", "1"]})
    for i in (1, 2, 3, 4):
        doc["updates"][f"p{i}"] = f"up{i} & !p{i} & !c{i}"
        doc["updates"][f"c{i}"] = f"!p{i}' & (uc{i} | (!p{i} & p{i}'))"
        doc["order"].append(f"p{i}")
    doc["order"] += [f"c{i}" for i in (1, 2, 3, 4)]
    return doc


def intersection_model() -> Model:
    return parse_model(intersection_document())


def boolean10_document(seed, steps=8) -> dict:
    """Model document for three coupled 10-bit maps with two-valued
    initial and input sets.

    The update structure is fixed; the concrete vectors are drawn from
    the seed so runs are reproducible. Input sets are re-drawn per step.
    """
    rng = random.Random(seed)

    def draw_pair():
        a = rng.getrandbits(10)
        b = rng.getrandbits(10)
        while b == a:
            b = rng.getrandbits(10)
        return [format(a, "010b"), format(b, "010b")]

    doc = {"vars": [], "updates": {}, "order": ["B1", "B2", "B3"]}
    for name in ("B1", "B2", "B3"):
        doc["vars"].append({"name": name, "role": "state", "dim": 10,
                            "init": draw_pair()})
    for name in ("U1", "U2", "U3"):
        doc["vars"].append({"name": name, "role": "input", "dim": 10,
                            "steps": [draw_pair() for _ in range(steps)]})
    doc["updates"]["B1"] = "U1 | XNOR(B2, B1)"
    doc["updates"]["B2"] = "XNOR(B2, B1 & U2)"
    doc["updates"]["B3"] = "NAND(B3, XNOR(U2, U3))"
    doc["seed"] = seed
    return doc


def boolean10_model(seed, steps=8) -> Model:
    return parse_model(boolean10_document(seed, steps))


# --- LFSR -------------------------------------------------------------------

def default_taps(lk):
    """Feedback taps for a register of lk cells, scaled from the 60-bit
    reference layout {60, 59, 58, 14}."""
    if lk == 60:
        return (60, 59, 58, 14)
    low = max(1, round(14 * lk / 60))
    taps = [lk, lk - 1, lk - 2]
    if low not in taps:
        taps.append(low)
    return tuple(taps)


@dataclass(frozen=True)
class LfsrSpec:
    lk: int = 60
    taps: tuple = (60, 59, 58, 14)
    out_taps: tuple = (60, 59)
    lm: int = 120

    def __post_init__(self):
        if not self.out_taps:
            raise ValueError("output taps must be non-empty")
        for t in self.taps + self.out_taps:
            if not 1 <= t <= self.lk:
                raise ValueError(f"tap {t} outside 1..{self.lk}")

    @staticmethod
    def scaled(lk, lm=None):
        return LfsrSpec(lk, default_taps(lk), (lk, lk - 1),
                        lm if lm is not None else 2 * lk)


def lfsr_keystream(spec, key, length=None):
    """Clock the register and collect the output bit per clock.

    Cell 1 receives the feedback XOR; cell lk shifts out. Works over any
    values supporting ^, so concrete 0/1 bits and 1-bit logical zonotopes
    behave identically. Returns a list of length spec.lm (or `length`).
    """
    length = spec.lm if length is None else length
    if len(key) != spec.lk:
        raise ValueError(f"key width {len(key)} != {spec.lk}")
    cells = deque(key)  # cells[0] is A[1]
    out = []
    for _ in range(length):
        bit = None
        for t in spec.out_taps:
            v = cells[t - 1]
            bit = v if bit is None else bit ^ v
        fb = None
        for t in spec.taps:
            v = cells[t - 1]
            fb = v if fb is None else fb ^ v
        out.append(bit)
        cells.pop()
        cells.appendleft(fb)
    return out


def lfsr_encrypt(spec, key, message):
    """XOR each message bit with the corresponding keystream bit."""
    stream = lfsr_keystream(spec, key, len(message))
    return [m ^ s for m, s in zip(message, stream)]


class AffineBit:
    """A 1-bit set: a constant XORed with a span of free key bits.

    This is a 1-bit logical zonotope whose generators are the free key
    bits touching the value, kept as a bitmask so repeated contributions
    cancel exactly under XOR. The represented set is {const} when the
    mask is empty and {0, 1} otherwise.
    """

    __slots__ = ("const", "mask")

    def __init__(self, const, mask=0):
        self.const = const & 1
        self.mask = mask

    def __xor__(self, other):
        if isinstance(other, AffineBit):
            return AffineBit(self.const ^ other.const, self.mask ^ other.mask)
        return AffineBit(self.const ^ (other & 1), self.mask)

    __rxor__ = __xor__

    def contains(self, bit):
        return bool(self.mask) or self.const == bit

    def to_zonotope(self):
        gens = tuple(BinaryVector(1, 1)
                     for k in range(self.mask.bit_length())
                     if (self.mask >> k) & 1)
        z = LogicalZonotope(BinaryVector(1, self.const),
                            BinaryMatrix(1, gens))
        return lz_compact(z)

    def evaluate(self):
        return {self.const} if not self.mask else {0, 1}


def key_bit_sets(bits):
    """Per-bit AffineBits from a list of 0, 1, or None (meaning {0, 1})."""
    return [AffineBit(0, 1 << i) if b is None else AffineBit(b)
            for i, b in enumerate(bits)]


def lfsr_recover_key(spec, message, cipher, *, instrument=None):
    """Exhaustive key search over per-bit key sets.

    The first two key bits are tried over their four combinations. Each
    remaining bit j is tentatively fixed to 0 while bits j+1.. stay the
    full set {0, 1}; if the cipher-bit sets generated under that
    assumption fail to contain the observed ciphertext, bit j must be 1.
    A candidate only survives if re-encrypting the message with the fully
    resolved key reproduces the ciphertext exactly.
    """
    message = list(message)
    cipher = list(cipher)
    if len(message) != len(cipher):
        raise ValueError("message and ciphertext lengths differ")
    for first_two in range(4):
        bits = [None] * spec.lk
        bits[0] = first_two & 1
        bits[1] = (first_two >> 1) & 1
        for j in range(2, spec.lk):
            bits[j] = 0
            stream = lfsr_keystream(spec, key_bit_sets(bits), len(message))
            ok = all((s ^ m).contains(c)
                     for s, m, c in zip(stream, message, cipher))
            if not ok:
                bits[j] = 1
            if instrument is not None:
                instrument(first_two, j, list(bits))
        if lfsr_encrypt(spec, bits, message) == cipher:
            return BinaryVector.from_bits(bits)
    raise SearchFailure("no key reproduces the ciphertext; check the taps "
                        "and message length")
