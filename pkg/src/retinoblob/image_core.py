"""
Raster I/O, resizing to the standard geometry and colour-space conversions.
"""
import logging
import os
from pathlib import Path
from typing import Union

import numpy as np
from PIL import Image, UnidentifiedImageError

from .constants import GRAY_WEIGHTS, IMAGE_SUFFIXES, MASK_FOREGROUND, MASK_READ_THRESHOLD
from .exceptions import ImageReadError, ImageWriteError, InvalidParameterError
from .models import BinaryMask, ColorImage, GrayImage, HueMap

logger = logging.getLogger(__name__)

PathLike = Union[str, os.PathLike]

_PIL_FORMATS = {'.png': 'PNG', '.ppm': 'PPM', '.pgm': 'PPM'}


def _open(path: PathLike, mode: str) -> np.ndarray:
    """
    Decodes ``path`` and converts it to the given Pillow mode.

    :raises ImageReadError: If the file is missing, unreadable or not a decodable image.
    """
    try:
        with Image.open(path) as img:
            img.load()
            return np.asarray(img.convert(mode))
    except FileNotFoundError as exc:
        raise ImageReadError(f'Image file not found: {path}') from exc
    except (UnidentifiedImageError, OSError, SyntaxError, ValueError) as exc:
        raise ImageReadError(f'Cannot decode image {path}: {exc}') from exc


def load_color(path: PathLike) -> ColorImage:
    """
    Loads an RGB image. Alpha channels are discarded, palette and gray images are expanded.

    :param path: PNG, PPM or PGM file.
    :type path: PathLike
    :return: The decoded raster.
    :rtype: ColorImage
    :raises ImageReadError: If the file cannot be read or decoded.
    """
    pixels = _open(path, 'RGB')
    logger.debug('loaded %s (%dx%d)', path, pixels.shape[1], pixels.shape[0])
    return ColorImage(pixels=pixels)


def load_gray(path: PathLike) -> GrayImage:
    return GrayImage(pixels=_open(path, 'L'))


def load_mask(path: PathLike) -> BinaryMask:
    """
    Loads a mask file; pixels brighter than 127 are foreground.
    """
    return BinaryMask(pixels=_open(path, 'L') > MASK_READ_THRESHOLD)


def _save(pixels: np.ndarray, path: PathLike) -> None:
    suffix = Path(path).suffix.lower()
    if suffix not in IMAGE_SUFFIXES:
        raise ImageWriteError(f'Unsupported output format {suffix!r} for {path}; use one of {IMAGE_SUFFIXES}')
    try:
        Image.fromarray(np.ascontiguousarray(pixels)).save(path, format=_PIL_FORMATS[suffix])
    except OSError as exc:
        raise ImageWriteError(f'Cannot write image {path}: {exc}') from exc


def save_color(img: ColorImage, path: PathLike) -> None:
    _save(img.pixels, path)


def save_gray(img: GrayImage, path: PathLike) -> None:
    _save(img.pixels, path)


def save_mask(mask: BinaryMask, path: PathLike) -> None:
    """
    Saves a mask as a single channel 0/255 image.
    """
    _save(mask.pixels.astype(np.uint8) * MASK_FOREGROUND, path)


def _bilinear_axis(source: int, target: int):
    """
    Sample positions of ``target`` pixel centres in a ``source`` long axis: lower index, upper index, weight.
    """
    pos = (np.arange(target, dtype=np.float64) + 0.5) * (source / target) - 0.5
    pos = np.clip(pos, 0.0, source - 1)
    lo = np.floor(pos).astype(np.intp)
    hi = np.minimum(lo + 1, source - 1)
    return lo, hi, pos - lo


def resize_to_standard(img: ColorImage, target_w: int, target_h: int) -> ColorImage:
    """
    Bilinear resize onto pixel centres, edges clamped.

    :param img: Source raster.
    :type img: ColorImage
    :param target_w: Output width in pixels.
    :type target_w: int
    :param target_h: Output height in pixels.
    :type target_h: int
    :return: Raster of exactly target_w x target_h.
    :rtype: ColorImage
    :raises InvalidParameterError: If a target dimension is below 1.
    """
    if target_w < 1 or target_h < 1:
        raise InvalidParameterError(f'Target size must be at least 1x1, got {target_w}x{target_h}')
    if (img.width, img.height) == (target_w, target_h):
        return img

    x0, x1, wx = _bilinear_axis(img.width, target_w)
    y0, y1, wy = _bilinear_axis(img.height, target_h)
    src = img.pixels.astype(np.float64)
    wx = wx[None, :, None]
    wy = wy[:, None, None]
    top = src[y0][:, x0] * (1.0 - wx) + src[y0][:, x1] * wx
    bottom = src[y1][:, x0] * (1.0 - wx) + src[y1][:, x1] * wx
    out = top * (1.0 - wy) + bottom * wy
    logger.debug('resized %dx%d -> %dx%d', img.width, img.height, target_w, target_h)
    return ColorImage(pixels=np.clip(np.rint(out), 0, 255).astype(np.uint8))


def to_gray(img: ColorImage) -> GrayImage:
    """
    BT.601 luma, rounded and clamped to [0, 255].
    """
    weights = np.asarray(GRAY_WEIGHTS, dtype=np.float64)
    gray = img.pixels.astype(np.float64) @ weights
    return GrayImage(pixels=np.clip(np.rint(gray), 0, 255).astype(np.uint8))


def to_hue(img: ColorImage) -> HueMap:
    """
    Hexagonal HSV hue normalised to [0, 1). Achromatic pixels (max == min) are flagged undefined.
    """
    rgb = img.pixels.astype(np.float64)
    r, g, b = rgb[..., 0], rgb[..., 1], rgb[..., 2]
    mx = rgb.max(axis=2)
    mn = rgb.min(axis=2)
    delta = mx - mn
    defined = delta > 0
    safe = np.where(defined, delta, 1.0)

    sector = np.where(mx == r, np.mod((g - b) / safe, 6.0),
                      np.where(mx == g, (b - r) / safe + 2.0, (r - g) / safe + 4.0))
    hue = sector / 6.0
    hue = np.where(defined & (hue < 1.0), hue, 0.0)
    return HueMap(values=hue, defined=defined)
