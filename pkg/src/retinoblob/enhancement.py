"""
Contrast enhancement: CLAHE and the linear intensity stretch.
"""
import logging
from typing import Tuple

import numpy as np

from .constants import HISTOGRAM_BINS
from .exceptions import InvalidParameterError
from .models import ClaheParams, GrayImage

logger = logging.getLogger(__name__)


def _tile_edges(length: int, tiles: int) -> np.ndarray:
    return np.linspace(0, length, tiles + 1).astype(np.intp)


def _tile_mapping(tile: np.ndarray, clip_limit: float) -> np.ndarray:
    """
    Clipped-histogram CDF of one tile, scaled to [0, 255] and rounded.

    Computed on the normalised histogram so that tiles of different pixel counts with the same value distribution
    get the same mapping.
    """
    hist = np.bincount(tile.ravel(), minlength=HISTOGRAM_BINS).astype(np.float64) / tile.size
    clipped = np.minimum(hist, clip_limit / HISTOGRAM_BINS)
    excess = 1.0 - clipped.sum()
    clipped += excess / HISTOGRAM_BINS
    cdf = np.cumsum(clipped)
    return np.clip(np.rint(cdf * 255.0), 0, 255)


def _interpolation_axis(length: int, edges: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    For each pixel along one axis: the two neighbouring tile indices and the weight of the second.
    Pixels before the first centre or after the last use that single tile.
    """
    centres = (edges[:-1] + edges[1:] - 1) / 2.0
    pos = np.arange(length, dtype=np.float64)
    upper = np.searchsorted(centres, pos, side='right')
    lo = np.clip(upper - 1, 0, len(centres) - 1)
    hi = np.clip(upper, 0, len(centres) - 1)
    span = centres[hi] - centres[lo]
    weight = np.where(span > 0, (pos - centres[lo]) / np.where(span > 0, span, 1.0), 0.0)
    return lo, hi, weight


def clahe(img: GrayImage, params: ClaheParams) -> GrayImage:
    """
    Contrast-limited adaptive histogram equalisation.

    Each tile's 256-bin histogram is clipped at ``clip_limit`` times the uniform bin height, the excess spread
    evenly over all bins, and the CDF taken as the tile mapping. Every pixel blends the mappings of its (up to)
    four nearest tile centres bilinearly.

    :param img: Input image, at least tiles_x x tiles_y pixels.
    :type img: GrayImage
    :param params: Tile grid and clip limit.
    :type params: ClaheParams
    :return: Enhanced image.
    :rtype: GrayImage
    :raises InvalidParameterError: If the image is smaller than the tile grid.
    """
    if img.width < params.tiles_x or img.height < params.tiles_y:
        raise InvalidParameterError(f'Image {img.width}x{img.height} is smaller than the CLAHE tile grid '
                                    f'{params.tiles_x}x{params.tiles_y}')

    pixels = img.pixels
    x_edges = _tile_edges(img.width, params.tiles_x)
    y_edges = _tile_edges(img.height, params.tiles_y)
    maps = np.empty((params.tiles_y, params.tiles_x, HISTOGRAM_BINS), dtype=np.float64)
    for ty in range(params.tiles_y):
        for tx in range(params.tiles_x):
            tile = pixels[y_edges[ty]:y_edges[ty + 1], x_edges[tx]:x_edges[tx + 1]]
            maps[ty, tx] = _tile_mapping(tile, params.clip_limit)

    tx0, tx1, wx = _interpolation_axis(img.width, x_edges)
    ty0, ty1, wy = _interpolation_axis(img.height, y_edges)
    wx = wx[None, :]
    wy = wy[:, None]
    ty0, ty1 = ty0[:, None], ty1[:, None]
    tx0, tx1 = tx0[None, :], tx1[None, :]

    top = maps[ty0, tx0, pixels] * (1.0 - wx) + maps[ty0, tx1, pixels] * wx
    bottom = maps[ty1, tx0, pixels] * (1.0 - wx) + maps[ty1, tx1, pixels] * wx
    out = top * (1.0 - wy) + bottom * wy
    logger.debug('clahe %dx%d tiles, clip %.2f', params.tiles_x, params.tiles_y, params.clip_limit)
    return GrayImage(pixels=np.clip(np.rint(out), 0, 255).astype(np.uint8))


def _quantile_levels(pixels: np.ndarray, low_frac: float, high_frac: float) -> Tuple[int, int]:
    counts = np.bincount(pixels.ravel(), minlength=HISTOGRAM_BINS)
    cumulative = np.cumsum(counts)
    total = cumulative[-1]
    low = int(np.argmax(cumulative > low_frac * total))
    high = int(np.argmax(cumulative >= (1.0 - high_frac) * total))
    return low, high


def adjust_intensity(img: GrayImage, low_frac: float = 0.01, high_frac: float = 0.01) -> GrayImage:
    """
    Linear contrast stretch mapping the ``low_frac`` quantile to 0 and the ``1 - high_frac`` quantile to 255.
    Values beyond saturate. A degenerate range returns the input unchanged.

    :param img: Input image.
    :type img: GrayImage
    :param low_frac: Fraction of darkest pixels saturated to 0, in [0, 0.5).
    :type low_frac: float
    :param high_frac: Fraction of brightest pixels saturated to 255, in [0, 0.5).
    :type high_frac: float
    :return: Stretched image.
    :rtype: GrayImage
    """
    if not (0.0 <= low_frac < 0.5 and 0.0 <= high_frac < 0.5):
        raise InvalidParameterError(f'Stretch fractions must lie in [0, 0.5), got {low_frac}, {high_frac}')
    low, high = _quantile_levels(img.pixels, low_frac, high_frac)
    if high <= low:
        logger.debug('adjust_intensity: degenerate range [%d, %d], image unchanged', low, high)
        return img
    scaled = (img.pixels.astype(np.float64) - low) * (255.0 / (high - low))
    return GrayImage(pixels=np.clip(np.rint(scaled), 0, 255).astype(np.uint8))
