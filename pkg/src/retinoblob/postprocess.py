"""
Post-processing: combine SEI and SHI candidates and annotate the image with oriented ellipses.
"""
import logging
import math
from typing import Iterable, List, Sequence, Tuple

import numpy as np
from scipy import ndimage

from .blob_analysis import EIGHT_CONNECTED, central_moments
from .constants import (ANNOTATION_CSV_HEADER, ELLIPSE_ARC_STEP, ELLIPSE_AXIS_SCALE, ELLIPSE_MIN_AXIS, ELLIPSE_PAD,
                        SEI_COLOR, SHI_COLOR, SOURCE_SEI)
from .models import BinaryMask, Blob, ColorImage, EllipseAnnotation
from .utils import open_csv_writer

logger = logging.getLogger(__name__)

_STROKE = {SOURCE_SEI: SEI_COLOR}


def _normalised_distance(xs: np.ndarray, ys: np.ndarray, center: Tuple[float, float], a: float, b: float,
                         angle: float) -> np.ndarray:
    """(u/a)^2 + (v/b)^2 of points in the ellipse frame; <= 1 means inside or on the ellipse."""
    dx = xs - center[0]
    dy = ys - center[1]
    cos_t, sin_t = math.cos(angle), math.sin(angle)
    u = dx * cos_t + dy * sin_t
    v = -dx * sin_t + dy * cos_t
    return (u / a) ** 2 + (v / b) ** 2


def blob_to_ellipse(blob: Blob) -> EllipseAnnotation:
    """
    Ellipse centred on the blob centroid along its orientation. Semi-axes are twice the square roots of the
    coordinate covariance eigenvalues, floored at 0.5 and padded by 2 pixels, then grown uniformly if needed so
    that every blob pixel lies inside or on the ellipse.

    :param blob: Measured blob.
    :type blob: Blob
    :return: The annotation.
    :rtype: EllipseAnnotation
    """
    mu20, mu02, mu11 = central_moments(blob.xs, blob.ys)
    covariance = np.array([[mu20, mu11], [mu11, mu02]]) / blob.area
    minor_var, major_var = np.clip(np.linalg.eigvalsh(covariance), 0.0, None)
    a = max(ELLIPSE_AXIS_SCALE * math.sqrt(major_var), ELLIPSE_MIN_AXIS) + ELLIPSE_PAD
    b = max(ELLIPSE_AXIS_SCALE * math.sqrt(minor_var), ELLIPSE_MIN_AXIS) + ELLIPSE_PAD

    spread = float(_normalised_distance(blob.xs, blob.ys, blob.centroid, a, b, blob.orientation).max())
    if spread > 1.0:
        scale = math.sqrt(spread) * (1.0 + 1e-9)
        a, b = a * scale, b * scale
    return EllipseAnnotation(center=blob.centroid, semi_major=a, semi_minor=b, angle=blob.orientation,
                             source=blob.source)


def _drawing_order(annotations: Iterable[EllipseAnnotation]) -> List[EllipseAnnotation]:
    return sorted(annotations, key=lambda ann: ann.source != SOURCE_SEI)


def ellipse_outline(ann: EllipseAnnotation) -> Tuple[np.ndarray, np.ndarray]:
    """
    Pixel coordinates of the outline, sampled at arc steps of at most half a pixel. May fall outside any raster.
    """
    samples = max(8, math.ceil(2.0 * math.pi * ann.semi_major / ELLIPSE_ARC_STEP))
    t = np.linspace(0.0, 2.0 * math.pi, samples, endpoint=False)
    cos_a, sin_a = math.cos(ann.angle), math.sin(ann.angle)
    x = ann.center[0] + ann.semi_major * np.cos(t) * cos_a - ann.semi_minor * np.sin(t) * sin_a
    y = ann.center[1] + ann.semi_major * np.cos(t) * sin_a + ann.semi_minor * np.sin(t) * cos_a
    return np.rint(x).astype(np.int64), np.rint(y).astype(np.int64)


def render_annotations(img: ColorImage, annotations: Sequence[EllipseAnnotation]) -> ColorImage:
    """
    Copy of ``img`` with a 1-pixel outline per annotation: SEI yellow, SHI red, SEI drawn first.
    Outline pixels outside the raster are dropped.

    :param img: Image to annotate; not modified.
    :type img: ColorImage
    :param annotations: Ellipses to stroke.
    :type annotations: Sequence[EllipseAnnotation]
    :return: Annotated copy.
    :rtype: ColorImage
    """
    out = img.pixels.copy()
    for ann in _drawing_order(annotations):
        xs, ys = ellipse_outline(ann)
        inside = (xs >= 0) & (xs < img.width) & (ys >= 0) & (ys < img.height)
        out[ys[inside], xs[inside]] = _STROKE.get(ann.source, SHI_COLOR)
    return ColorImage(pixels=out)


def candidate_mask(candidates: Iterable[Blob], dims: Tuple[int, int]) -> BinaryMask:
    """
    Union of the candidates' pixel sets.
    """
    width, height = dims
    pixels = np.zeros((height, width), dtype=bool)
    for blob in candidates:
        pixels[blob.ys, blob.xs] = True
    return BinaryMask(pixels=pixels)


def ellipse_interior_mask(annotations: Iterable[EllipseAnnotation], dims: Tuple[int, int]) -> BinaryMask:
    """
    Union of the filled ellipses, pixel centres inside or on the curve.
    """
    width, height = dims
    pixels = np.zeros((height, width), dtype=bool)
    for ann in annotations:
        reach = ann.semi_major
        x0 = max(0, math.floor(ann.center[0] - reach))
        x1 = min(width - 1, math.ceil(ann.center[0] + reach))
        y0 = max(0, math.floor(ann.center[1] - reach))
        y1 = min(height - 1, math.ceil(ann.center[1] + reach))
        if x0 > x1 or y0 > y1:
            continue
        ys, xs = np.mgrid[y0:y1 + 1, x0:x1 + 1]
        inside = _normalised_distance(xs, ys, ann.center, ann.semi_major, ann.semi_minor, ann.angle) <= 1.0
        pixels[y0:y1 + 1, x0:x1 + 1] |= inside
    return BinaryMask(pixels=pixels)


def merge_candidates(candidates: Sequence[Blob]) -> List[List[int]]:
    """
    Combines SEI and SHI results: candidates whose pixels overlap or touch (8-adjacency) form one region.

    :param candidates: Surviving blobs of both sources.
    :type candidates: Sequence[Blob]
    :return: Blob ids per merged region, each sorted, regions ordered by their smallest id.
    :rtype: List[List[int]]
    """
    if not candidates:
        return []
    xs = np.concatenate([blob.xs for blob in candidates])
    ys = np.concatenate([blob.ys for blob in candidates])
    x0, y0 = int(xs.min()), int(ys.min())
    canvas = np.zeros((int(ys.max()) - y0 + 1, int(xs.max()) - x0 + 1), dtype=bool)
    canvas[ys - y0, xs - x0] = True
    labels, _ = ndimage.label(canvas, structure=EIGHT_CONNECTED)

    regions = {}
    for blob in candidates:
        region = int(labels[blob.ys[0] - y0, blob.xs[0] - x0])
        regions.setdefault(region, []).append(blob.id)
    groups = sorted((sorted(ids) for ids in regions.values()), key=lambda ids: ids[0])
    logger.debug('merged %d candidates into %d regions', len(candidates), len(groups))
    return groups


def write_annotations(annotations: Iterable[EllipseAnnotation], path) -> None:
    with open_csv_writer(path) as writer:
        writer.writerow(ANNOTATION_CSV_HEADER)
        for ann in _drawing_order(annotations):
            writer.writerow([f'{ann.center[0]:.3f}', f'{ann.center[1]:.3f}', f'{ann.semi_major:.3f}',
                             f'{ann.semi_minor:.3f}', f'{ann.angle:.6f}', ann.source])
