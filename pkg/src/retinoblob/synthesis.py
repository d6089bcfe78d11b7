"""
Synthetic fundus frames with exact lesion ground truth, for desk-scale evaluation.
"""
import logging
import math
from typing import List, Optional, Tuple

import numpy as np
from scipy import ndimage

from . import morphology
from .models import BinaryMask, ColorImage, GroundTruth, PlantedLesion, SynthSpec

logger = logging.getLogger(__name__)

# fraction of the frame width used as the field radius; the disc is clipped top and bottom like a real camera frame
_FIELD_RADIUS_FRAC = 0.46
_VESSEL_STEPS = 900
_VESSEL_TURN_SIGMA = 0.06


class _Canvas:
    """Frame geometry and occupancy shared by the drawing steps."""

    def __init__(self, spec: SynthSpec):
        self.spec = spec
        self.ys, self.xs = np.mgrid[0:spec.height, 0:spec.width].astype(np.float64)
        self.cx = (spec.width - 1) / 2.0
        self.cy = (spec.height - 1) / 2.0
        self.radius = _FIELD_RADIUS_FRAC * spec.width
        self.rr = np.hypot(self.xs - self.cx, self.ys - self.cy)
        self.field = self.rr <= self.radius
        self.occupied = np.zeros((spec.height, spec.width), dtype=bool)

    def inside(self, x: float, y: float, inset: float) -> bool:
        return (inset <= x <= self.spec.width - 1 - inset and inset <= y <= self.spec.height - 1 - inset
                and math.hypot(x - self.cx, y - self.cy) <= self.radius - inset)


def _vessel_mask(canvas: _Canvas, rng: np.random.Generator) -> np.ndarray:
    """Random-walk centrelines thickened with a disk."""
    spec = canvas.spec
    vessels = np.zeros_like(canvas.occupied)
    # vessels leave from a disc-like hub left of centre
    hub_x = canvas.cx - 0.35 * canvas.radius
    hub_y = canvas.cy
    for _ in range(spec.n_vessels):
        heading = rng.uniform(-math.pi, math.pi)
        half_width = rng.uniform(spec.vessel_half_width.min, spec.vessel_half_width.max)
        x, y = hub_x, hub_y
        centreline = np.zeros_like(vessels)
        for _ in range(_VESSEL_STEPS):
            if not canvas.inside(x, y, 0.0):
                break
            centreline[int(round(y)), int(round(x))] = True
            heading += rng.normal(0.0, _VESSEL_TURN_SIGMA)
            x += math.cos(heading)
            y += math.sin(heading)
        se = morphology.disk(int(round(half_width)))
        vessels |= morphology.dilate_mask(BinaryMask(pixels=centreline), se).pixels
    return vessels & canvas.field


def _ellipse_pixels(cx: float, cy: float, a: float, b: float, angle: float) -> Tuple[np.ndarray, np.ndarray]:
    reach = int(math.ceil(max(a, b)))
    x0, y0 = int(round(cx)) - reach, int(round(cy)) - reach
    ys, xs = np.mgrid[y0:y0 + 2 * reach + 1, x0:x0 + 2 * reach + 1]
    dx, dy = xs - cx, ys - cy
    u = dx * math.cos(angle) + dy * math.sin(angle)
    v = -dx * math.sin(angle) + dy * math.cos(angle)
    inside = (u / a) ** 2 + (v / b) ** 2 <= 1.0
    return xs[inside].astype(np.int64), ys[inside].astype(np.int64)


def _is_free(canvas: _Canvas, xs: np.ndarray, ys: np.ndarray) -> bool:
    """True if no occupied pixel lies within ``lesion_margin`` of the candidate pixels."""
    margin = canvas.spec.lesion_margin
    x0, y0 = int(xs.min()) - margin, int(ys.min()) - margin
    x1, y1 = int(xs.max()) + margin, int(ys.max()) + margin
    if x0 < 0 or y0 < 0 or x1 >= canvas.spec.width or y1 >= canvas.spec.height:
        return False
    local = np.zeros((y1 - y0 + 1, x1 - x0 + 1), dtype=bool)
    local[ys - y0, xs - x0] = True
    if margin:
        local = ndimage.binary_dilation(local, structure=morphology.disk(margin).footprint())
    return not np.any(local & canvas.occupied[y0:y1 + 1, x0:x1 + 1])


def _place(canvas: _Canvas, rng: np.random.Generator, kind: str) -> Optional[Tuple[np.ndarray, np.ndarray]]:
    spec = canvas.spec
    if kind == 'exudate':
        extent = spec.exudate_axes.max
    else:
        extent = spec.haemorrhage_radius.max
    inset = extent + 2 * spec.lesion_margin
    if spec.width - 1 - inset < inset or spec.height - 1 - inset < inset:
        return None
    for _ in range(spec.placement_attempts):
        cx = rng.uniform(inset, spec.width - 1 - inset)
        cy = rng.uniform(inset, spec.height - 1 - inset)
        if kind == 'exudate':
            a = rng.uniform(spec.exudate_axes.min, spec.exudate_axes.max)
            b = rng.uniform(spec.exudate_axes.min, a)
            xs, ys = _ellipse_pixels(cx, cy, a, b, rng.uniform(-math.pi / 2, math.pi / 2))
        else:
            r = rng.uniform(spec.haemorrhage_radius.min, spec.haemorrhage_radius.max)
            xs, ys = _ellipse_pixels(cx, cy, r, r, 0.0)
        if not canvas.inside(cx, cy, inset) or xs.size == 0:
            continue
        if _is_free(canvas, xs, ys):
            canvas.occupied[ys, xs] = True
            return xs, ys
    return None


def synthesize_fundus(seed: int, spec: Optional[SynthSpec] = None) -> Tuple[ColorImage, GroundTruth]:
    """
    Draws a synthetic fundus frame and its lesion ground truth, deterministically from ``seed``.

    A dark-orange circular field on black with a radial illumination falloff, dark curvilinear vessels, bright
    yellowish elliptical exudates and dark reddish round haemorrhages, plus Gaussian pixel noise. Lesions never
    touch vessels or each other: each keeps ``lesion_margin`` pixels of clearance. The ground truth is the exact
    union of the planted lesion pixels.

    :param seed: Random seed.
    :type seed: int
    :param spec: Generator settings, defaults to ``SynthSpec()``.
    :type spec: Optional[SynthSpec]
    :return: The colour image and its ground truth.
    :rtype: Tuple[ColorImage, GroundTruth]
    """
    spec = spec or SynthSpec()
    rng = np.random.default_rng(seed)
    canvas = _Canvas(spec)

    vessels = _vessel_mask(canvas, rng)
    canvas.occupied |= vessels

    lesions: List[PlantedLesion] = []
    truth = np.zeros_like(vessels)
    painted = []
    for kind, count, color in (('exudate', spec.n_exudates, spec.exudate_color),
                               ('haemorrhage', spec.n_haemorrhages, spec.haemorrhage_color)):
        for _ in range(count):
            placed = _place(canvas, rng, kind)
            if placed is None:
                logger.warning('no room for another %s after %d attempts (seed %d)', kind,
                               spec.placement_attempts, seed)
                break
            xs, ys = placed
            truth[ys, xs] = True
            painted.append((xs, ys, color))
            lesions.append(PlantedLesion(kind=kind, area=int(xs.size),
                                         center=(float(xs.mean()), float(ys.mean()))))

    rgb = np.empty((spec.height, spec.width, 3), dtype=np.float64)
    rgb[...] = spec.fundus_color
    rgb[vessels] = spec.vessel_color
    for xs, ys, color in painted:
        rgb[ys, xs] = color
    illumination = 1.0 - spec.illumination_falloff * (canvas.rr / canvas.radius) ** 2
    rgb *= illumination[..., None]
    if spec.noise_sigma > 0:
        rgb += rng.normal(0.0, spec.noise_sigma, size=rgb.shape)
    rgb[~canvas.field] = 0.0

    pixels = np.clip(np.rint(rgb), 0, 255).astype(np.uint8)
    logger.debug('synthesized seed %d: %d lesions, %d lesion pixels', seed, len(lesions), int(truth.sum()))
    return ColorImage(pixels=pixels), GroundTruth(mask=BinaryMask(pixels=truth), lesions=lesions)
