"""PSNR and SSIM quality metrics for 8-bit grayscale images.

SSIM follows the original defaults: 11x11 Gaussian window with sigma 1.5,
K1 = 0.01, K2 = 0.03, dynamic range 255, averaged over fully valid window
positions only (no padding).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.signal import convolve2d

from .imagecore import Image

PSNR_IDENTICAL = math.inf

SSIM_WINDOW = 11
SSIM_SIGMA = 1.5
_C1 = (0.01 * 255) ** 2
_C2 = (0.03 * 255) ** 2


class DimensionMismatchError(ValueError):
    """Images to compare do not share dimensions."""


class WindowTooSmallError(ValueError):
    """Image is smaller than the SSIM window."""


def _as_array(img: Image) -> np.ndarray:
    return (
        np.frombuffer(img.data, dtype=np.uint8)
        .reshape(img.height, img.width)
        .astype(np.float64)
    )


def _check_dims(a: Image, b: Image) -> None:
    if (a.width, a.height) != (b.width, b.height):
        raise DimensionMismatchError(
            f"dimension mismatch: {a.width}x{a.height} vs {b.width}x{b.height}"
        )


def psnr(a: Image, b: Image) -> float:
    """Peak signal-to-noise ratio in dB; identical images return math.inf."""
    _check_dims(a, b)
    x = _as_array(a)
    y = _as_array(b)
    mse = float(np.mean((x - y) ** 2))
    if mse == 0.0:
        return PSNR_IDENTICAL
    return 10.0 * math.log10(255.0**2 / mse)


def _gaussian_window() -> np.ndarray:
    half = SSIM_WINDOW // 2
    g = np.exp(-((np.arange(SSIM_WINDOW) - half) ** 2) / (2.0 * SSIM_SIGMA**2))
    g /= g.sum()
    return np.outer(g, g)


_WIN = _gaussian_window()


def ssim(a: Image, b: Image) -> float:
    """Mean structural similarity over all fully valid window positions."""
    _check_dims(a, b)
    if a.width < SSIM_WINDOW or a.height < SSIM_WINDOW:
        raise WindowTooSmallError(
            f"image {a.width}x{a.height} is smaller than the "
            f"{SSIM_WINDOW}x{SSIM_WINDOW} SSIM window"
        )
    x = _as_array(a)
    y = _as_array(b)
    mu_x = convolve2d(x, _WIN, mode="valid")
    mu_y = convolve2d(y, _WIN, mode="valid")
    var_x = convolve2d(x * x, _WIN, mode="valid") - mu_x * mu_x
    var_y = convolve2d(y * y, _WIN, mode="valid") - mu_y * mu_y
    cov = convolve2d(x * y, _WIN, mode="valid") - mu_x * mu_y
    num = (2.0 * mu_x * mu_y + _C1) * (2.0 * cov + _C2)
    den = (mu_x * mu_x + mu_y * mu_y + _C1) * (var_x + var_y + _C2)
    return float(np.mean(num / den))


@dataclass(frozen=True)
class QualityReport:
    """PSNR/SSIM of one comparison, with labels for the two inputs."""

    ref: str
    test: str
    width: int
    height: int
    psnr_db: float
    ssim: float


def quality_report(ref_img: Image, test_img: Image, ref: str, test: str) -> QualityReport:
    return QualityReport(
        ref=ref,
        test=test,
        width=ref_img.width,
        height=ref_img.height,
        psnr_db=psnr(ref_img, test_img),
        ssim=ssim(ref_img, test_img),
    )
