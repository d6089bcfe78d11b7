"""
Connected-component labelling of the SEI/SHI masks and per-blob feature measurement.
"""
import logging
import math
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np
from scipy import ndimage

from .constants import BLOB_CSV_HEADER, SOURCE_SEI, SOURCE_SHI
from .exceptions import InvalidParameterError
from .models import BinaryMask, Blob, BlobSource, GrayImage, HueMap, PreprocessOutput
from .utils import open_csv_writer

logger = logging.getLogger(__name__)

PixelSet = Tuple[np.ndarray, np.ndarray]

EIGHT_CONNECTED = np.ones((3, 3), dtype=bool)


def label_components(mask: BinaryMask) -> List[PixelSet]:
    """
    Maximal 8-connected foreground components, ordered by the raster-scan position of each component's first pixel.

    :param mask: Binary mask.
    :type mask: BinaryMask
    :return: One (xs, ys) coordinate pair per component.
    :rtype: List[Tuple[np.ndarray, np.ndarray]]
    """
    labels, count = ndimage.label(mask.pixels, structure=EIGHT_CONNECTED)
    components = []
    for index, window in enumerate(ndimage.find_objects(labels), start=1):
        if window is None:
            continue
        local_ys, local_xs = np.nonzero(labels[window] == index)
        components.append((local_xs + window[1].start, local_ys + window[0].start))
    # raster-scan order of each component's first pixel
    components.sort(key=lambda c: (int(c[1].min()), int(c[0][c[1] == c[1].min()].min())))
    logger.debug('labelled %d components', count)
    return components


def _local_mask(xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """Blob pixels in their bounding box, padded by one background pixel on each side."""
    x0, y0 = xs.min(), ys.min()
    local = np.zeros((ys.max() - y0 + 3, xs.max() - x0 + 3), dtype=bool)
    local[ys - y0 + 1, xs - x0 + 1] = True
    return local


def measure_perimeter(xs: np.ndarray, ys: np.ndarray, dims: Tuple[int, int]) -> int:
    """
    Number of unit edges between a blob pixel and a non-blob pixel; the image border counts as non-blob.

    :param xs: Pixel x coordinates.
    :type xs: np.ndarray
    :param ys: Pixel y coordinates.
    :type ys: np.ndarray
    :param dims: (width, height) of the raster the pixels belong to.
    :type dims: Tuple[int, int]
    :return: Exposed edge count.
    :rtype: int
    """
    _check_bounds(xs, ys, dims)
    local = _local_mask(xs, ys)
    exposed = 0
    exposed += np.count_nonzero(local[1:, :] & ~local[:-1, :])
    exposed += np.count_nonzero(local[:-1, :] & ~local[1:, :])
    exposed += np.count_nonzero(local[:, 1:] & ~local[:, :-1])
    exposed += np.count_nonzero(local[:, :-1] & ~local[:, 1:])
    return int(exposed)


def _check_bounds(xs: np.ndarray, ys: np.ndarray, dims: Tuple[int, int]) -> None:
    width, height = dims
    if xs.size == 0:
        raise InvalidParameterError('a blob needs at least one pixel')
    if xs.min() < 0 or ys.min() < 0 or xs.max() >= width or ys.max() >= height:
        raise InvalidParameterError(f'blob pixel outside the {width}x{height} raster')


def central_moments(xs: np.ndarray, ys: np.ndarray) -> Tuple[float, float, float]:
    """
    Second-order central moments (mu20, mu02, mu11) of the pixel coordinates.
    """
    dx = xs - xs.mean()
    dy = ys - ys.mean()
    return float(np.dot(dx, dx)), float(np.dot(dy, dy)), float(np.dot(dx, dy))


def orientation_of(mu20: float, mu02: float, mu11: float) -> float:
    """
    Major-axis angle 0.5 * atan2(2 mu11, mu20 - mu02) in (-pi/2, pi/2], y pointing down.
    """
    if mu11 == 0.0 and mu20 == mu02:
        return 0.0
    angle = 0.5 * math.atan2(2.0 * mu11, mu20 - mu02)
    if angle <= -math.pi / 2:
        angle += math.pi
    return angle


def measure_blob(xs: np.ndarray, ys: np.ndarray, source: BlobSource, gray: GrayImage, hue: HueMap,
                 blob_id: int = 1) -> Blob:
    """
    Measures one component.

    :param xs: Pixel x coordinates.
    :type xs: np.ndarray
    :param ys: Pixel y coordinates.
    :type ys: np.ndarray
    :param source: The mask the component came from.
    :type source: BlobSource
    :param gray: Post-CLAHE intensity image.
    :type gray: GrayImage
    :param hue: Hue map of the resized colour image.
    :type hue: HueMap
    :param blob_id: Label to assign.
    :type blob_id: int
    :return: The measured blob.
    :rtype: Blob
    :raises InvalidParameterError: If a pixel lies outside the rasters.
    """
    xs = np.asarray(xs, dtype=np.int64)
    ys = np.asarray(ys, dtype=np.int64)
    _check_bounds(xs, ys, gray.dims)

    area = int(xs.size)
    perimeter = measure_perimeter(xs, ys, gray.dims)
    intensities = gray.pixels[ys, xs]
    defined = hue.defined[ys, xs]
    mean_hue = float(hue.values[ys, xs][defined].mean()) if defined.any() else None
    mu20, mu02, mu11 = central_moments(xs, ys)

    return Blob(id=blob_id, source=source, xs=xs, ys=ys, area=area, perimeter=perimeter,
                compactness=perimeter ** 2 / (4.0 * math.pi * area),
                intensity_mid=(int(intensities.min()) + int(intensities.max())) / 2.0,
                mean_hue=mean_hue,
                centroid=(float(xs.mean()), float(ys.mean())),
                orientation=orientation_of(mu20, mu02, mu11))


def extract_blobs(pre: PreprocessOutput) -> List[Blob]:
    """
    Labels SEI then SHI and measures every component. Ids are unique within the run: SEI takes 1..n and SHI
    continues from n + 1.

    :param pre: Pre-processing output.
    :type pre: PreprocessOutput
    :return: All blobs, SEI first.
    :rtype: List[Blob]
    """
    blobs = []
    for source, mask in ((SOURCE_SEI, pre.sei), (SOURCE_SHI, pre.shi)):
        for xs, ys in label_components(mask):
            blobs.append(measure_blob(xs, ys, source, pre.gray, pre.hue, blob_id=len(blobs) + 1))
    logger.debug('extracted %d blobs', len(blobs))
    return blobs


def blob_row(blob: Blob) -> List[str]:
    return [str(blob.id), blob.source, str(blob.area), str(blob.perimeter), f'{blob.compactness:.6f}',
            f'{blob.intensity_mid:.1f}', '' if blob.mean_hue is None else f'{blob.mean_hue:.6f}',
            f'{blob.centroid[0]:.3f}', f'{blob.centroid[1]:.3f}', f'{blob.orientation:.6f}']


def write_blob_table(blobs: Iterable[Blob], path, outcomes: Optional[Dict[int, str]] = None) -> None:
    """
    Writes the blob feature table as CSV, with an ``outcome`` column when outcomes are given.
    """
    header = list(BLOB_CSV_HEADER) + (['outcome'] if outcomes is not None else [])
    with open_csv_writer(path) as writer:
        writer.writerow(header)
        for blob in blobs:
            row = blob_row(blob)
            if outcomes is not None:
                row.append(outcomes[blob.id])
            writer.writerow(row)
