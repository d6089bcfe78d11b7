"""
Flat grayscale and binary morphology.

Out-of-bounds samples take the neutral element of the reduction (255 for erosion, 0 for dilation; foreground for
binary erosion, background for binary dilation), so dilation and erosion are exact duals.
"""
import logging

import numpy as np
from scipy import ndimage

from .models import BinaryMask, GrayImage, StructuringElement

logger = logging.getLogger(__name__)


def disk(radius: int) -> StructuringElement:
    """
    Exact Euclidean integer disk: every (dx, dy) with dx^2 + dy^2 <= radius^2.

    :param radius: Non-negative radius in pixels.
    :type radius: int
    :return: The structuring element.
    :rtype: StructuringElement
    """
    if radius < 0:
        raise ValueError(f'disk radius must be non-negative, got {radius}')
    r2 = radius * radius
    offsets = [(dx, dy) for dy in range(-radius, radius + 1) for dx in range(-radius, radius + 1)
               if dx * dx + dy * dy <= r2]
    return StructuringElement(offsets=offsets)


def _shift_rows(rows: np.ndarray, dy: int, fill: int) -> np.ndarray:
    """out[y] = rows[y + dy], ``fill`` where y + dy falls outside."""
    height = rows.shape[0]
    out = np.full_like(rows, fill)
    if abs(dy) >= height:
        return out
    if dy >= 0:
        out[:height - dy] = rows[dy:]
    else:
        out[-dy:] = rows[:height + dy]
    return out


def _flat_filter(pixels: np.ndarray, se: StructuringElement, use_max: bool) -> np.ndarray:
    fill = 0 if use_max else 255
    spans = se.row_spans()
    if spans is None:
        reference = ndimage.grey_dilation if use_max else ndimage.grey_erosion
        return reference(pixels, footprint=se.footprint(), mode='constant', cval=fill)

    # rows of the element are centred runs: a 1D running filter per row offset, then a reduction over rows
    line_filter = ndimage.maximum_filter1d if use_max else ndimage.minimum_filter1d
    combine = np.maximum if use_max else np.minimum
    out = np.full_like(pixels, fill)
    runs = {}
    for dy, half in spans:
        if half not in runs:
            runs[half] = line_filter(pixels, size=2 * half + 1, axis=1, mode='constant', cval=fill)
        combine(out, _shift_rows(runs[half], dy, fill), out=out)
    return out


def erode(img: GrayImage, se: StructuringElement) -> GrayImage:
    """
    out(p) = min over o in se of img(p + o).
    """
    return GrayImage(pixels=_flat_filter(img.pixels, se, use_max=False))


def dilate(img: GrayImage, se: StructuringElement) -> GrayImage:
    """
    out(p) = max over o in se of img(p + o).
    """
    return GrayImage(pixels=_flat_filter(img.pixels, se, use_max=True))


def open(img: GrayImage, se: StructuringElement) -> GrayImage:  # pylint: disable=redefined-builtin
    return dilate(erode(img, se), se)


def close(img: GrayImage, se: StructuringElement) -> GrayImage:
    return erode(dilate(img, se), se)


def saturating_subtract(a: GrayImage, b: GrayImage) -> GrayImage:
    """
    max(a - b, 0) in 8-bit space.
    """
    diff = a.pixels.astype(np.int16) - b.pixels.astype(np.int16)
    return GrayImage(pixels=np.clip(diff, 0, 255).astype(np.uint8))


def tophat(img: GrayImage, se: StructuringElement) -> GrayImage:
    """
    White top-hat: bright details smaller than ``se``.
    """
    return saturating_subtract(img, open(img, se))


def bothat(img: GrayImage, se: StructuringElement) -> GrayImage:
    """
    Black top-hat (bottom-hat): dark details smaller than ``se``.
    """
    return saturating_subtract(close(img, se), img)


def erode_mask(mask: BinaryMask, se: StructuringElement) -> BinaryMask:
    return BinaryMask(pixels=ndimage.binary_erosion(mask.pixels, structure=se.footprint(), border_value=1))


def dilate_mask(mask: BinaryMask, se: StructuringElement) -> BinaryMask:
    return BinaryMask(pixels=ndimage.binary_dilation(mask.pixels, structure=se.footprint(), border_value=0))


def open_mask(mask: BinaryMask, se: StructuringElement) -> BinaryMask:
    return dilate_mask(erode_mask(mask, se), se)


def close_mask(mask: BinaryMask, se: StructuringElement) -> BinaryMask:
    return erode_mask(dilate_mask(mask, se), se)
