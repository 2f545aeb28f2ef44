"""Streaming scaler: line buffers and a shift-register window fed one input
pixel at a time, emitting output pixels in raster order without ever storing
the whole image. A random-access reference scaler with identical arithmetic
serves as the oracle for the streaming path.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .fixedpoint import QFormat, quantize_weights
from .imagecore import Image
from .interp import (
    Window2x2,
    Window4x4,
    bicubic_exact_at,
    bicubic_fixed,
    bilinear_exact_at,
    bilinear_fixed,
    round_to_intensity,
)
from .kernel import bicubic_weights, bilinear_weights, output_length, phase_table

METHOD_BILINEAR = "bilinear"
METHOD_BICUBIC = "bicubic"
MODE_EXACT = "exact"
MODE_FIXED = "fixed"

METHODS = (METHOD_BILINEAR, METHOD_BICUBIC)
MODES = (MODE_EXACT, MODE_FIXED)


@dataclass(frozen=True)
class ScaleJob:
    """One scaling task: method, arithmetic mode, rational scale, and dims.

    Output dimensions are computed once (round half up, at least 1) and are
    part of the job; everything downstream keys off the axis lengths.
    """

    method: str
    mode: str
    num: int
    den: int
    in_width: int
    in_height: int
    out_width: int
    out_height: int
    qformat: QFormat | None = None

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.num < 1 or self.den < 1:
            raise ValueError("scale numerator and denominator must be >= 1")
        for v in (self.in_width, self.in_height, self.out_width, self.out_height):
            if v < 1:
                raise ValueError("dimensions must be >= 1")
        if self.mode == MODE_FIXED and self.qformat is None:
            raise ValueError("fixed mode requires a QFormat")
        if self.mode == MODE_EXACT and self.qformat is not None:
            raise ValueError("exact mode takes no QFormat")

    @classmethod
    def make(
        cls,
        method: str,
        mode: str,
        num: int,
        den: int,
        in_width: int,
        in_height: int,
        frac_bits: int = 8,
    ) -> "ScaleJob":
        q = QFormat(frac_bits) if mode == MODE_FIXED else None
        return cls(
            method,
            mode,
            num,
            den,
            in_width,
            in_height,
            output_length(in_width, num, den),
            output_length(in_height, num, den),
            q,
        )

    @property
    def window_size(self) -> int:
        return 4 if self.method == METHOD_BICUBIC else 2

    @property
    def line_buffer_count(self) -> int:
        return 3 if self.method == METHOD_BICUBIC else 1

    @property
    def window_offset(self) -> int:
        """Offset of the first window tap from the phase base index."""
        return -1 if self.method == METHOD_BICUBIC else 0


class _PhaseWeights:
    """Per-job cache of phase tables and per-slot tap weights.

    Shared by the streaming engine and the reference scaler so the two paths
    differ only in how they source window pixels.
    """

    def __init__(self, job: ScaleJob):
        self.xt = phase_table(job.in_width, job.out_width)
        self.yt = phase_table(job.in_height, job.out_height)
        build = bicubic_weights if job.method == METHOD_BICUBIC else bilinear_weights
        wx = tuple(build(dx) for dx in self.xt.dx_values)
        wy = tuple(build(dy) for dy in self.yt.dx_values)
        if job.mode == MODE_FIXED:
            fwx = tuple(quantize_weights(w, job.qformat) for w in wx)
            fwy = tuple(quantize_weights(w, job.qformat) for w in wy)
            if job.method == METHOD_BICUBIC:
                self.value = lambda w, xi, yi: bicubic_fixed(w, fwx[xi], fwy[yi])
            else:
                self.value = lambda w, xi, yi: bilinear_fixed(w, fwx[xi], fwy[yi])
        elif job.method == METHOD_BICUBIC:
            self.value = lambda w, xi, yi: round_to_intensity(
                bicubic_exact_at(w, wx[xi], wy[yi])
            )
        else:
            self.value = lambda w, xi, yi: round_to_intensity(
                bilinear_exact_at(w, wx[xi], wy[yi])
            )


class LineBufferBank:
    """Ring of the most recent completed input rows plus the incoming row.

    Each buffer is exactly one input row long; together with the incoming
    row the bank exposes line_buffer_count + 1 consecutive input rows.
    Completed rows rotate lazily, so the full previous span stays readable
    until the first pixel of the next row arrives.
    """

    def __init__(self, n_lines: int, width: int):
        self.n_lines = n_lines
        self.width = width
        self._ring: deque[bytes] = deque(maxlen=n_lines)
        self._incoming = bytearray()
        self.rows_completed = 0

    @property
    def cursor(self) -> int:
        return len(self._incoming)

    def push(self, p: int) -> None:
        if len(self._incoming) == self.width:
            self._ring.append(bytes(self._incoming))
            self._incoming.clear()
            self.rows_completed += 1
        self._incoming.append(p)

    def value(self, row: int, col: int, current_row: int) -> int:
        """Sample a buffered row; `row` must lie within the exposed span."""
        if row == current_row:
            return self._incoming[col]
        idx = row - (current_row - len(self._ring))
        return self._ring[idx][col]

    def stored_rows(self) -> int:
        return len(self._ring) + (1 if self._incoming else 0)


class SlidingWindow:
    """k x k shift-register grid; column j holds input columns c-k+1..c."""

    def __init__(self, k: int):
        self.k = k
        self._cols: deque[tuple[int, ...]] = deque(
            [(0,) * k for _ in range(k)], maxlen=k
        )

    def shift_in(self, column) -> None:
        self._cols.append(tuple(column))

    def column(self, j: int) -> tuple[int, ...]:
        return self._cols[j]

    def grid(self) -> tuple[tuple[int, ...], ...]:
        cols = list(self._cols)
        return tuple(tuple(col[i] for col in cols) for i in range(self.k))

    def register_count(self) -> int:
        return self.k * self.k


class StreamScaler:
    """Sequential streaming state for one ScaleJob.

    push_pixel ingests the raster in order; output pixels are emitted in
    raster order as soon as their source windows are fully buffered. Border
    windows replicate the nearest edge row/column.
    """

    def __init__(self, job: ScaleJob):
        self.job = job
        self._weights = _PhaseWeights(job)
        self._bank = LineBufferBank(job.line_buffer_count, job.in_width)
        self._window = SlidingWindow(job.window_size)
        self._ingested = 0
        self._emitted = 0
        self._cursor = 0
        self._total_in = job.in_width * job.in_height
        self._total_out = job.out_width * job.out_height

    # cycle model: one cycle per fill slot, then one output per cycle
    @property
    def fill_latency(self) -> int:
        return self.job.line_buffer_count * self.job.in_width + self.job.window_size

    @property
    def total_cycles(self) -> int:
        return self.fill_latency + self._emitted

    @property
    def outputs_emitted(self) -> int:
        return self._emitted

    def stored_rows(self) -> int:
        return self._bank.stored_rows()

    def register_count(self) -> int:
        return self._window.register_count()

    def window_grid(self) -> tuple[tuple[int, ...], ...]:
        return self._window.grid()

    def _row_trigger(self, oy: int) -> int:
        base = self._weights.yt.phase(oy).base
        t = base + self.job.window_offset + self.job.window_size - 1
        h = self.job.in_height
        return 0 if t < 0 else (h - 1 if t > h - 1 else t)

    def _col_trigger(self, ox: int) -> int:
        base = self._weights.xt.phase(ox).base
        t = base + self.job.window_offset + self.job.window_size - 1
        w = self.job.in_width
        return 0 if t < 0 else (w - 1 if t > w - 1 else t)

    def _sample(self, row: int, col: int, r: int) -> int:
        """Clamped sample from the buffered span (rows r-k+1..r)."""
        h, w = self.job.in_height, self.job.in_width
        if row < 0:
            row = 0
        elif row > h - 1:
            row = h - 1
        if col < 0:
            col = 0
        elif col > w - 1:
            col = w - 1
        return self._bank.value(row, col, r)

    def _compute(self, ox: int, oy: int, r: int) -> int:
        pw = self._weights
        off = self.job.window_offset
        xbase = pw.xt.phase(ox).base
        ybase = pw.yt.phase(oy).base
        k = self.job.window_size
        if k == 4:
            win = Window4x4(
                *(
                    tuple(self._sample(ybase + off + i, xbase + off + j, r) for j in range(4))
                    for i in range(4)
                )
            )
        else:
            win = Window2x2(
                self._sample(ybase, xbase, r),
                self._sample(ybase, xbase + 1, r),
                self._sample(ybase + 1, xbase, r),
                self._sample(ybase + 1, xbase + 1, r),
            )
        return pw.value(win, pw.xt.slot(ox), pw.yt.slot(oy))

    def push_pixel(self, p: int) -> list[tuple[int, int, int]]:
        """Ingest the next raster pixel; return (ox, oy, value) emissions."""
        if self._ingested >= self._total_in:
            raise ValueError("ingest beyond the declared image size")
        r, c = divmod(self._ingested, self.job.in_width)
        self._bank.push(p)
        k = self.job.window_size
        self._window.shift_in(
            self._sample(r - k + 1 + i, c, r) for i in range(k)
        )
        self._ingested += 1

        out = []
        out_w = self.job.out_width
        while self._cursor < self._total_out:
            oy, ox = divmod(self._cursor, out_w)
            rt = self._row_trigger(oy)
            if rt > r or (rt == r and self._col_trigger(ox) > c):
                break
            out.append((ox, oy, self._compute(ox, oy, r)))
            self._cursor += 1
        self._emitted += len(out)
        return out


def _check_dims(img: Image, job: ScaleJob) -> None:
    if (img.width, img.height) != (job.in_width, job.in_height):
        raise ValueError(
            f"image is {img.width}x{img.height}, job expects "
            f"{job.in_width}x{job.in_height}"
        )


def scale_image(img: Image, job: ScaleJob) -> Image:
    """Scale by driving the streaming engine over the raster."""
    _check_dims(img, job)
    eng = StreamScaler(job)
    out_w = job.out_width
    out = bytearray(out_w * job.out_height)
    count = 0
    for p in img.data:
        for ox, oy, v in eng.push_pixel(p):
            out[oy * out_w + ox] = v
            count += 1
    if count != len(out):
        raise RuntimeError(f"emitted {count} pixels, expected {len(out)}")
    return Image(job.out_width, job.out_height, bytes(out))


def scale_image_reference(img: Image, job: ScaleJob) -> Image:
    """Random-access oracle: gather each window via sample_clamped."""
    _check_dims(img, job)
    pw = _PhaseWeights(job)
    off = job.window_offset
    k = job.window_size
    out = bytearray()
    for oy in range(job.out_height):
        ybase = pw.yt.phase(oy).base
        yslot = pw.yt.slot(oy)
        for ox in range(job.out_width):
            xbase = pw.xt.phase(ox).base
            if k == 4:
                win = Window4x4(
                    *(
                        tuple(
                            img.sample_clamped(xbase + off + j, ybase + off + i)
                            for j in range(4)
                        )
                        for i in range(4)
                    )
                )
            else:
                win = Window2x2(
                    img.sample_clamped(xbase, ybase),
                    img.sample_clamped(xbase + 1, ybase),
                    img.sample_clamped(xbase, ybase + 1),
                    img.sample_clamped(xbase + 1, ybase + 1),
                )
            out.append(pw.value(win, pw.xt.slot(ox), yslot))
    return Image(job.out_width, job.out_height, bytes(out))
