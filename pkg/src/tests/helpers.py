"""
Raster builders shared by the test modules.
"""
import math

import numpy as np

from retinoblob import models


def gray(values):
    return models.GrayImage(pixels=np.asarray(values, dtype=np.uint8))


def color(values):
    return models.ColorImage(pixels=np.asarray(values, dtype=np.uint8))


def mask(values):
    return models.BinaryMask(pixels=np.asarray(values, dtype=bool))


def hue_map(width, height, value=0.1):
    return models.HueMap(values=np.full((height, width), value), defined=np.ones((height, width), dtype=bool))


def near(a, b, tol=1e-9):
    return math.isclose(a, b, rel_tol=0.0, abs_tol=tol)


def flat_frame(width, height, level, patch=None, patch_level=None):
    """Gray-coloured frame; ``patch`` is (x0, y0, x1, y1) inclusive."""
    pixels = np.full((height, width, 3), level, dtype=np.uint8)
    if patch is not None:
        x0, y0, x1, y1 = patch
        pixels[y0:y1 + 1, x0:x1 + 1] = patch_level
    return models.ColorImage(pixels=pixels)
