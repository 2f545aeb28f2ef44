"""Streaming bilinear/bicubic image upscaler with an exact rational
reference path and a hardware-faithful fixed-point model."""

from .fixedpoint import (
    FixedWeight,
    FixedWeightVector,
    QFormat,
    accumulate_round,
    csd_decompose,
    quantize_weights,
    shift_add_mul,
)
from .imagecore import Image, PgmError, box_decimate2, read_pgm, write_pgm
from .kernel import (
    Phase,
    PhaseTable,
    WeightVector,
    bicubic_weights,
    bilinear_weights,
    keys_weight,
    output_length,
    phase_table,
)
from .metrics import QualityReport, psnr, ssim
from .pipesim import PipelineReport, resource_proxy, simulate
from .stream import ScaleJob, StreamScaler, scale_image, scale_image_reference

__version__ = "0.1.0"

__all__ = [
    "FixedWeight",
    "FixedWeightVector",
    "Image",
    "PgmError",
    "Phase",
    "PhaseTable",
    "PipelineReport",
    "QFormat",
    "QualityReport",
    "ScaleJob",
    "StreamScaler",
    "WeightVector",
    "accumulate_round",
    "bicubic_weights",
    "bilinear_weights",
    "box_decimate2",
    "csd_decompose",
    "keys_weight",
    "output_length",
    "phase_table",
    "psnr",
    "quantize_weights",
    "read_pgm",
    "resource_proxy",
    "scale_image",
    "scale_image_reference",
    "shift_add_mul",
    "simulate",
    "ssim",
    "write_pgm",
]
