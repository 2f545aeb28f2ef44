"""Exact tap weights for bilinear and Keys bicubic resampling, plus the
polyphase output-to-input coordinate tables. Everything here is computed in
exact rational arithmetic so downstream quantization has an unambiguous
reference.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple

# Keys kernel (a = -1/2) extrema, used by range checks and error analysis.
BICUBIC_TAP_MIN = Fraction(-2, 27)
BICUBIC_TAP_MAX = Fraction(1)
# max over phases of sum(|tap|); attained at dx = 1/2.
BICUBIC_ABS_TAP_SUM_MAX = Fraction(5, 4)
BILINEAR_ABS_TAP_SUM_MAX = Fraction(1)

_3_2 = Fraction(3, 2)
_5_2 = Fraction(5, 2)
_1_2 = Fraction(1, 2)


def keys_weight(d) -> Fraction:
    """Piecewise-cubic convolution kernel with a = -1/2, evaluated exactly.

    Returns (3/2)|d|^3 - (5/2)|d|^2 + 1 on [0,1), -(1/2)|d|^3 + (5/2)|d|^2
    - 4|d| + 2 on [1,2), and 0 beyond. Symmetric in the sign of d.
    """
    d = abs(Fraction(d))
    if d < 1:
        return (_3_2 * d - _5_2) * d * d + 1
    if d < 2:
        return ((-_1_2 * d + _5_2) * d - 4) * d + 2
    return Fraction(0)


@dataclass(frozen=True)
class WeightVector:
    """Exact tap weights for one phase; taps always sum to 1."""

    taps: tuple[Fraction, ...]
    phase: Fraction


def _check_phase(dx) -> Fraction:
    dx = Fraction(dx)
    if not 0 <= dx < 1:
        raise ValueError(f"phase must lie in [0, 1), got {dx}")
    return dx


def bicubic_weights(dx) -> WeightVector:
    """Four Keys-kernel taps for source offsets -1, 0, +1, +2 from the base index."""
    dx = _check_phase(dx)
    return WeightVector(
        (keys_weight(1 + dx), keys_weight(dx), keys_weight(1 - dx), keys_weight(2 - dx)),
        dx,
    )


def bilinear_weights(dx) -> WeightVector:
    """Two linear blend factors (1-dx, dx) for source offsets 0, +1."""
    dx = _check_phase(dx)
    return WeightVector((1 - dx, dx), dx)


class Phase(NamedTuple):
    base: int
    dx: Fraction


def source_position(u: int, in_len: int, out_len: int) -> Fraction:
    """Center-aligned output-to-input map: s = (u + 1/2) * in/out - 1/2."""
    return Fraction((2 * u + 1) * in_len - out_len, 2 * out_len)


def output_length(in_len: int, num: int, den: int) -> int:
    """Output axis length for scale num/den: round-half-up, at least 1."""
    return max(1, (2 * in_len * num + den) // (2 * den))


@dataclass(frozen=True)
class PhaseTable:
    """Polyphase decomposition of one axis of a scaling job.

    Phases repeat with period equal to the reduced denominator of in/out;
    only one period of fractional offsets is stored, together with the base
    indices of the first period and the per-period base stride.
    """

    in_len: int
    out_len: int
    period: int
    dx_values: tuple[Fraction, ...]
    first_bases: tuple[int, ...]
    base_step: int

    def phase(self, u: int) -> Phase:
        q, r = divmod(u, self.period)
        return Phase(self.first_bases[r] + q * self.base_step, self.dx_values[r])

    def slot(self, u: int) -> int:
        """Index into dx_values for output coordinate u."""
        return u % self.period

    def __len__(self) -> int:
        return self.out_len

    def __iter__(self) -> Iterator[Phase]:
        return (self.phase(u) for u in range(self.out_len))


def phase_table(in_len: int, out_len: int) -> PhaseTable:
    """Build the polyphase table for one axis.

    The map depends only on the two axis lengths; any rational scale factor
    is implied by them (out_len is fixed by the job before the table is built).
    """
    if in_len < 1 or out_len < 1:
        raise ValueError("axis lengths must be >= 1")
    g = math.gcd(in_len, out_len)
    period = out_len // g
    step = in_len // g
    dxs = []
    bases = []
    for u in range(period):
        s = source_position(u, in_len, out_len)
        base = math.floor(s)
        dxs.append(s - base)
        bases.append(base)
    return PhaseTable(in_len, out_len, period, tuple(dxs), tuple(bases), step)
