"""Shared strategies and the standard-image corpus used by the test suite."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import strategies as st

from streamscale.imagecore import Image


def array_to_image(arr: np.ndarray) -> Image:
    if arr.dtype != np.uint8 or arr.ndim != 2:
        raise ValueError("need a 2-D uint8 array")
    return Image(arr.shape[1], arr.shape[0], arr.tobytes())


def image_to_array(img: Image) -> np.ndarray:
    return np.frombuffer(img.data, dtype=np.uint8).reshape(img.height, img.width)


@st.composite
def images(draw, min_side: int = 1, max_side: int = 24):
    w = draw(st.integers(min_side, max_side))
    h = draw(st.integers(min_side, max_side))
    data = draw(st.binary(min_size=w * h, max_size=w * h))
    return Image(w, h, data)


unit_fractions = st.fractions(min_value=0, max_value="63/64", max_denominator=64)


def quantization_delta_bound(n_taps: int, abs_sum_max, frac_bits: int) -> float:
    """Worst-case |fixed - exact| in gray levels, before output rounding.

    Renormalized tap errors sum to zero, each bounded by half a raw unit
    except the residual-corrected tap (<= (n-1)/2), so an axis contributes
    at most E = n-1 raw units of total error. Pixels enter centered at
    127.5 because zero-sum errors cancel any constant offset.
    """
    E = n_taps - 1
    A = float(abs_sum_max)
    return 127.5 * (2 * A * E * 2**frac_bits + E * E) / 4**frac_bits


def max_output_deviation(n_taps: int, abs_sum_max, frac_bits: int) -> int:
    """Integer gray-level deviation bound after both paths round."""
    return int(quantization_delta_bound(n_taps, abs_sum_max, frac_bits)) + 1


def _gray_corpus() -> dict[str, np.ndarray]:
    """Four 256x256 grayscale test images from scikit-image's bundled data.

    The 512x512 sources are box-downscaled so detail density matches the
    classic 256x256 test set; smaller sources are center-cropped.
    """
    import skimage.data as data
    from skimage.color import rgb2gray

    from streamscale.imagecore import box_decimate2

    def box2(arr):
        return image_to_array(box_decimate2(array_to_image(arr)))

    coffee = np.clip(np.round(rgb2gray(data.coffee()) * 255), 0, 255).astype(np.uint8)
    horse = data.horse().astype(np.uint8) * 255
    return {
        "moon": box2(data.moon()),
        "clock": data.clock()[22:278, 72:328],
        "coffee": coffee[72:328, 172:428],
        "horse": horse[36:292, 72:328],
    }


@pytest.fixture(scope="session")
def corpus() -> dict[str, Image]:
    imgs = {name: array_to_image(arr) for name, arr in _gray_corpus().items()}
    for name, img in imgs.items():
        assert (img.width, img.height) == (256, 256), name
    return imgs
