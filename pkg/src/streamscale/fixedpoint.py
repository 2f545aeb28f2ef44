"""Signed fixed-point weight quantization and multiplierless shift-add
arithmetic.

All integer work runs on Python ints, so overflow is impossible by
construction; for hardware sizing, a two-stage datapath at `f` fractional
bits needs at most 2f+11 signed accumulator bits (8-bit pixels, renormalized
taps whose absolute sum stays below 2, f <= 16 gives 43 bits).
"""

from __future__ import annotations

from dataclasses import dataclass

from .kernel import WeightVector

CsdTerm = tuple[int, int]  # (sign in {+1,-1}, shift)


@dataclass(frozen=True)
class QFormat:
    """Signed fixed-point format: value = raw * 2^-frac_bits.

    Weight quantization is supported for frac_bits 4..16 (the CLI enforces
    that range); wider formats appear internally when two quantized stages
    are fused and rounded once.
    """

    frac_bits: int = 8
    signed: bool = True

    def __post_init__(self):
        if not 1 <= self.frac_bits <= 32:
            raise ValueError(f"frac_bits out of range: {self.frac_bits}")
        if not self.signed:
            raise ValueError("weights are signed; unsigned formats are not supported")

    @property
    def scale(self) -> int:
        return 1 << self.frac_bits


def csd_decompose(raw: int) -> tuple[CsdTerm, ...]:
    """Canonical signed-digit form of an integer, least-significant term first.

    The result has no two adjacent nonzero digit positions, reconstructs raw
    exactly, and uses at most ceil((bit_length+1)/2) terms.
    """
    terms = []
    n = raw
    shift = 0
    while n:
        if n & 1:
            digit = 1 if n & 2 == 0 else -1
            terms.append((digit, shift))
            n -= digit
        n >>= 1
        shift += 1
    return tuple(terms)


@dataclass(frozen=True)
class FixedWeight:
    """A quantized tap: raw integer plus its CSD decomposition."""

    raw: int
    csd: tuple[CsdTerm, ...]

    def __post_init__(self):
        if sum(s << sh for s, sh in self.csd) != self.raw:
            raise ValueError("CSD terms do not reconstruct raw")

    @classmethod
    def from_raw(cls, raw: int) -> "FixedWeight":
        return cls(raw, csd_decompose(raw))


@dataclass(frozen=True)
class FixedWeightVector:
    """Quantized taps for one phase, renormalized so raws sum to 2^frac_bits."""

    taps: tuple[FixedWeight, ...]
    qformat: QFormat

    def __post_init__(self):
        total = sum(t.raw for t in self.taps)
        if total != self.qformat.scale:
            raise ValueError(f"raw taps sum to {total}, expected {self.qformat.scale}")

    @property
    def raws(self) -> tuple[int, ...]:
        return tuple(t.raw for t in self.taps)


def quantize_weights(wv: WeightVector, q: QFormat) -> FixedWeightVector:
    """Round taps to the nearest representable value and renormalize.

    Rounding is to nearest with ties to even; the leftover rounding residual
    is folded into the tap of largest magnitude (first on a tie) so the raws
    sum to exactly 2^frac_bits and constant inputs pass through unchanged.
    """
    if sum(wv.taps) != 1:
        raise ValueError("exact taps must sum to 1")
    raws = [round(t * q.scale) for t in wv.taps]
    residual = q.scale - sum(raws)
    if residual:
        k = max(range(len(raws)), key=lambda i: (abs(raws[i]), -i))
        raws[k] += residual
    return FixedWeightVector(tuple(FixedWeight.from_raw(r) for r in raws), q)


def shift_add_mul(pixel: int, weight: FixedWeight) -> int:
    """pixel * weight.raw computed purely with shifts and adds/subtracts.

    Written for 8-bit pixels; the arithmetic is valid for any integer input,
    which the fused datapath exploits to scale row intermediates.
    """
    acc = 0
    for sign, shift in weight.csd:
        if sign > 0:
            acc += pixel << shift
        else:
            acc -= pixel << shift
    return acc


def accumulate_round(products, q: QFormat) -> int:
    """Sum scaled products, round half up via an offset, shift, clamp to [0, 255]."""
    total = sum(products)
    v = (total + (1 << (q.frac_bits - 1))) >> q.frac_bits
    if v < 0:
        return 0
    if v > 255:
        return 255
    return v
