"""Core interpolation arithmetic: bilinear 2x2 and separable bicubic 4x4,
in exact-rational and fixed-point flavors.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

from .fixedpoint import FixedWeightVector, QFormat, accumulate_round, shift_add_mul
from .kernel import WeightVector, bicubic_weights, bilinear_weights


class Window2x2(NamedTuple):
    """Row-major 2x2 neighborhood; row 1 is on top."""

    p11: int
    p12: int
    p21: int
    p22: int


class Window4x4(NamedTuple):
    """Row-major 4x4 neighborhood as four row tuples."""

    r1: tuple[int, int, int, int]
    r2: tuple[int, int, int, int]
    r3: tuple[int, int, int, int]
    r4: tuple[int, int, int, int]


def bilinear_exact(w: Window2x2, dx, dy) -> Fraction:
    """Exact bilinear blend of the four neighbors."""
    dx, dy = Fraction(dx), Fraction(dy)
    top = w.p11 * (1 - dx) + w.p12 * dx
    bot = w.p21 * (1 - dx) + w.p22 * dx
    return top * (1 - dy) + bot * dy


def bicubic_row(p1: int, p2: int, p3: int, p4: int, wv: WeightVector) -> Fraction:
    """Horizontal pass: exact dot product of one window row with its taps."""
    t = wv.taps
    return p1 * t[0] + p2 * t[1] + p3 * t[2] + p4 * t[3]


def bicubic_exact(w: Window4x4, dx, dy) -> Fraction:
    """Exact separable bicubic: four row passes combined with column taps.

    Algebraically equal to the direct 16-term double sum over the window.
    """
    wvx = bicubic_weights(dx)
    wvy = bicubic_weights(dy)
    total = Fraction(0)
    for row, wy in zip(w, wvy.taps):
        total += bicubic_row(*row, wvx) * wy
    return total


def round_to_intensity(value: Fraction) -> int:
    """Round half up and clamp to [0, 255]; the exact-mode output quantizer."""
    n, d = value.numerator, value.denominator
    v = (2 * n + d) // (2 * d)
    if v < 0:
        return 0
    if v > 255:
        return 255
    return v


def _check_pair(fwx: FixedWeightVector, fwy: FixedWeightVector) -> int:
    if fwx.qformat != fwy.qformat:
        raise ValueError("horizontal and vertical taps must share one QFormat")
    return fwx.qformat.frac_bits


def bilinear_fixed(w: Window2x2, fwx: FixedWeightVector, fwy: FixedWeightVector) -> int:
    """Fixed-point bilinear: shift-add passes, one fused rounding at the end.

    Row intermediates stay at full precision; the final result carries two
    weight scalings, so the rounding shift is 2*frac_bits.
    """
    f = _check_pair(fwx, fwy)
    x0, x1 = fwx.taps
    top = shift_add_mul(w.p11, x0) + shift_add_mul(w.p12, x1)
    bot = shift_add_mul(w.p21, x0) + shift_add_mul(w.p22, x1)
    y0, y1 = fwy.taps
    return accumulate_round(
        (shift_add_mul(top, y0), shift_add_mul(bot, y1)), QFormat(2 * f)
    )


def bicubic_fixed(w: Window4x4, fwx: FixedWeightVector, fwy: FixedWeightVector) -> int:
    """Fixed-point separable bicubic with full-precision intermediates.

    Four shift-add row dot products feed one column dot product; a single
    rounding (shift by 2*frac_bits) and clamp produce the output intensity.
    """
    f = _check_pair(fwx, fwy)
    xt = fwx.taps
    products = []
    for row, wy in zip(w, fwy.taps):
        acc = (
            shift_add_mul(row[0], xt[0])
            + shift_add_mul(row[1], xt[1])
            + shift_add_mul(row[2], xt[2])
            + shift_add_mul(row[3], xt[3])
        )
        products.append(shift_add_mul(acc, wy))
    return accumulate_round(products, QFormat(2 * f))


def bilinear_exact_at(w: Window2x2, wvx: WeightVector, wvy: WeightVector) -> Fraction:
    """Bilinear blend from precomputed per-phase weight vectors."""
    top = w.p11 * wvx.taps[0] + w.p12 * wvx.taps[1]
    bot = w.p21 * wvx.taps[0] + w.p22 * wvx.taps[1]
    return top * wvy.taps[0] + bot * wvy.taps[1]


def bicubic_exact_at(w: Window4x4, wvx: WeightVector, wvy: WeightVector) -> Fraction:
    """Separable bicubic from precomputed per-phase weight vectors."""
    total = Fraction(0)
    for row, wy in zip(w, wvy.taps):
        total += bicubic_row(*row, wvx) * wy
    return total


__all__ = [
    "Window2x2",
    "Window4x4",
    "bilinear_exact",
    "bilinear_exact_at",
    "bicubic_row",
    "bicubic_exact",
    "bicubic_exact_at",
    "bilinear_fixed",
    "bicubic_fixed",
    "round_to_intensity",
]
