"""Cycle accounting and resource proxies for the streaming pipeline.

The cycle model is one pixel slot per cycle while the line buffers and window
fill, then one output pixel per cycle; fill latency is derived from the
buffer structure (3 rows + 4 window columns for bicubic, 1 row + 2 for
bilinear) and cross-checked against the instrumented streaming engine.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fixedpoint import quantize_weights
from .kernel import bicubic_weights, bilinear_weights, phase_table
from .stream import METHOD_BICUBIC, MODE_FIXED, ScaleJob

PIXEL_BITS = 8


@dataclass(frozen=True)
class PipelineReport:
    """Cycle counts and structural proxies from one simulated job."""

    fill_latency: int
    total_cycles: int
    outputs: int
    steady_state_rate: float
    adder_count: int | None = None
    register_count: int | None = None


def fill_latency(job: ScaleJob) -> int:
    return job.line_buffer_count * job.in_width + job.window_size


def resource_proxy(job: ScaleJob) -> tuple[int, int]:
    """Adder and register-bit counts for a fixed-mode job.

    Each nonzero CSD digit beyond the first of every quantized tap, across
    both axis phase tables, costs one adder; the dot-product trees of the
    datapath add k*k - 1 structural adders. Registers count line-buffer bits
    plus window register bits.
    """
    if job.mode != MODE_FIXED:
        raise ValueError("resource proxy is defined for fixed mode only")
    build = bicubic_weights if job.method == METHOD_BICUBIC else bilinear_weights
    k = job.window_size
    adders = k * k - 1
    for in_len, out_len in (
        (job.in_width, job.out_width),
        (job.in_height, job.out_height),
    ):
        table = phase_table(in_len, out_len)
        for dx in table.dx_values:
            fw = quantize_weights(build(dx), job.qformat)
            for tap in fw.taps:
                adders += max(0, len(tap.csd) - 1)
    registers = (job.line_buffer_count * job.in_width + k * k) * PIXEL_BITS
    return adders, registers


def simulate(job: ScaleJob) -> PipelineReport:
    """Predict cycle counts for a job; resource proxies only in fixed mode."""
    fill = fill_latency(job)
    outputs = job.out_width * job.out_height
    adders = registers = None
    if job.mode == MODE_FIXED:
        adders, registers = resource_proxy(job)
    return PipelineReport(
        fill_latency=fill,
        total_cycles=fill + outputs,
        outputs=outputs,
        steady_state_rate=1.0,
        adder_count=adders,
        register_count=registers,
    )
