"""
Builds the suspected-exudates image (SEI, bright lesions) and the suspected-haemorrhages image (SHI, dark lesions).
"""
import logging
from fractions import Fraction

import numpy as np

from . import morphology
from .constants import HISTOGRAM_BINS
from .enhancement import adjust_intensity, clahe
from .image_core import resize_to_standard, to_gray, to_hue
from .models import BinaryMask, ColorImage, GrayImage, PipelineConfig, PreprocessOutput, PreprocessStages

logger = logging.getLogger(__name__)


def otsu_threshold(img: GrayImage) -> int:
    """
    Threshold t maximising the between-class variance of {v <= t} and {v > t} over the 256-bin histogram.

    The comparison is done in exact rational arithmetic so ties resolve to the smallest threshold. A histogram
    with a single occupied bin returns that bin, which makes the ``> t`` foreground empty.

    :param img: Input image.
    :type img: GrayImage
    :return: The threshold.
    :rtype: int
    """
    counts = np.bincount(img.pixels.ravel(), minlength=HISTOGRAM_BINS).astype(np.int64)
    levels = np.arange(HISTOGRAM_BINS, dtype=np.int64)
    n_below = np.cumsum(counts).tolist()
    sum_below = np.cumsum(counts * levels).tolist()
    total = n_below[-1]
    grand = sum_below[-1]

    best_t = None
    best_score = Fraction(-1)
    for t in range(HISTOGRAM_BINS):
        n0 = n_below[t]
        n1 = total - n0
        if n0 == 0 or n1 == 0:
            continue
        # proportional to w0 * w1 * (mu0 - mu1)^2
        score = Fraction((total * sum_below[t] - n0 * grand) ** 2, n0 * n1)
        if score > best_score:
            best_t, best_score = t, score

    if best_t is None:
        best_t = int(np.argmax(counts))
    return best_t


def binarize(img: GrayImage) -> BinaryMask:
    """
    Otsu binarisation, foreground strictly above the threshold.
    """
    threshold = otsu_threshold(img)
    mask = BinaryMask(pixels=img.pixels > threshold)
    logger.debug('otsu threshold %d, %d foreground pixels', threshold, mask.count())
    return mask


def clean_mask(mask: BinaryMask, cfg: PipelineConfig) -> BinaryMask:
    """
    Optional despeckling opening, then closing and opening with disk(cleanup_radius) in the configured order.
    """
    se = morphology.disk(cfg.cleanup_radius)
    if cfg.segmentation.despeckle:
        mask = morphology.open_mask(mask, se)
    if cfg.segmentation.cleanup_order == 'close_open':
        return morphology.open_mask(morphology.close_mask(mask, se), se)
    return morphology.close_mask(morphology.open_mask(mask, se), se)


def _branch(response: GrayImage, cfg: PipelineConfig) -> BinaryMask:
    stretched = adjust_intensity(response, cfg.stretch.low_frac, cfg.stretch.high_frac)
    return clean_mask(binarize(stretched), cfg)


def preprocess_stages(img: ColorImage, cfg: PipelineConfig) -> PreprocessStages:
    """
    Runs pre-processing and keeps every intermediate raster.

    resize -> gray -> CLAHE; bright = tophat - bothat and dark = bothat - tophat with disk(se_radius); each branch
    is stretched, Otsu-binarised and cleaned.

    :param img: Raw colour image.
    :type img: ColorImage
    :param cfg: Pipeline configuration.
    :type cfg: PipelineConfig
    :return: All intermediate rasters.
    :rtype: PreprocessStages
    """
    resized = resize_to_standard(img, cfg.standard_size.width, cfg.standard_size.height)
    gray = to_gray(resized)
    enhanced = clahe(gray, cfg.clahe)

    se = morphology.disk(cfg.se_radius)
    top = morphology.tophat(enhanced, se)
    bottom = morphology.bothat(enhanced, se)
    bright = morphology.saturating_subtract(top, bottom)
    dark = morphology.saturating_subtract(bottom, top)

    sei = _branch(bright, cfg)
    shi = _branch(dark, cfg)
    logger.debug('preprocess: sei %d px, shi %d px', sei.count(), shi.count())
    return PreprocessStages(resized=resized, gray=gray, clahe=enhanced, bright=bright, sei=sei, dark=dark, shi=shi,
                            hue=to_hue(resized))


def preprocess(img: ColorImage, cfg: PipelineConfig) -> PreprocessOutput:
    """
    Pre-processing reduced to what blob analysis needs: post-CLAHE gray, SEI, SHI and hue.
    """
    return preprocess_stages(img, cfg).output()
