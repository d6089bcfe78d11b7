from typing import Literal, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..constants import (DEFAULT_STANDARD_WIDTH, DEFAULT_STANDARD_HEIGHT, DEFAULT_CLAHE_TILES_X,
                         DEFAULT_CLAHE_TILES_Y, DEFAULT_CLAHE_CLIP_LIMIT, DEFAULT_STRETCH_LOW_FRAC,
                         DEFAULT_STRETCH_HIGH_FRAC, DEFAULT_SE_RADIUS, DEFAULT_CLEANUP_RADIUS, DEFAULT_CLEANUP_ORDER,
                         DEFAULT_DESPECKLE, DEFAULT_SCORING)
from .cascade import CascadeConfig, Interval

CleanupOrder = Literal['close_open', 'open_close']
Scoring = Literal['blob_pixels', 'ellipse_interior']
RGB = Tuple[int, int, int]


class StandardSize(BaseModel):
    model_config = ConfigDict(extra='forbid')

    width: int = Field(DEFAULT_STANDARD_WIDTH, ge=1)
    height: int = Field(DEFAULT_STANDARD_HEIGHT, ge=1)


class ClaheParams(BaseModel):
    """
    CLAHE tile grid and clip limit (a multiple of the uniform bin height).
    """
    model_config = ConfigDict(extra='forbid')

    tiles_x: int = Field(DEFAULT_CLAHE_TILES_X, ge=1)
    tiles_y: int = Field(DEFAULT_CLAHE_TILES_Y, ge=1)
    clip_limit: float = Field(DEFAULT_CLAHE_CLIP_LIMIT, gt=1.0)


class StretchParams(BaseModel):
    """
    Fractions of pixels saturated at each end by the linear contrast stretch.
    """
    model_config = ConfigDict(extra='forbid')

    low_frac: float = Field(DEFAULT_STRETCH_LOW_FRAC, ge=0.0, lt=0.5)
    high_frac: float = Field(DEFAULT_STRETCH_HIGH_FRAC, ge=0.0, lt=0.5)


class SegmentationParams(BaseModel):
    model_config = ConfigDict(extra='forbid')

    se_radius: int = Field(DEFAULT_SE_RADIUS, ge=1)
    cleanup_radius: int = Field(DEFAULT_CLEANUP_RADIUS, ge=0)
    cleanup_order: CleanupOrder = DEFAULT_CLEANUP_ORDER
    despeckle: bool = DEFAULT_DESPECKLE


class SynthSpec(BaseModel):
    """
    Knobs of the synthetic fundus generator. Colours are RGB before illumination and noise.
    """
    model_config = ConfigDict(extra='forbid')

    width: int = Field(DEFAULT_STANDARD_WIDTH, ge=32)
    height: int = Field(DEFAULT_STANDARD_HEIGHT, ge=32)
    n_exudates: int = Field(8, ge=0)
    n_haemorrhages: int = Field(8, ge=0)
    n_vessels: int = Field(6, ge=0)
    noise_sigma: float = Field(4.0, ge=0.0)
    exudate_axes: Interval = Field(default_factory=lambda: Interval(min=3.0, max=8.0))
    haemorrhage_radius: Interval = Field(default_factory=lambda: Interval(min=1.3, max=10.0))
    vessel_half_width: Interval = Field(default_factory=lambda: Interval(min=1.0, max=3.0))
    lesion_margin: int = Field(8, ge=0)
    fundus_color: RGB = (190, 120, 35)
    exudate_color: RGB = (250, 235, 70)
    haemorrhage_color: RGB = (100, 60, 15)
    vessel_color: RGB = (120, 45, 25)
    illumination_falloff: float = Field(0.15, ge=0.0, lt=1.0)
    placement_attempts: int = Field(400, ge=1)

    @model_validator(mode='after')
    def check_sizes(self) -> 'SynthSpec':
        if self.exudate_axes.min < 1.0 or self.haemorrhage_radius.min < 1.0:
            raise ValueError('lesion sizes must be at least one pixel')
        for name in ('fundus_color', 'exudate_color', 'haemorrhage_color', 'vessel_color'):
            if any(not 0 <= c <= 255 for c in getattr(self, name)):
                raise ValueError(f'{name} channels must lie in [0, 255]')
        return self


class PipelineConfig(BaseModel):
    """
    Every tunable of the pipeline. An empty config file gives these defaults.
    """
    model_config = ConfigDict(extra='forbid')

    standard_size: StandardSize = Field(default_factory=StandardSize)
    clahe: ClaheParams = Field(default_factory=ClaheParams)
    stretch: StretchParams = Field(default_factory=StretchParams)
    segmentation: SegmentationParams = Field(default_factory=SegmentationParams)
    cascade: CascadeConfig = Field(default_factory=CascadeConfig)
    scoring: Scoring = DEFAULT_SCORING
    synth: SynthSpec = Field(default_factory=SynthSpec)

    @model_validator(mode='after')
    def check_stretch(self) -> 'PipelineConfig':
        if self.stretch.low_frac + self.stretch.high_frac >= 1.0:
            raise ValueError('stretch.low_frac + stretch.high_frac must be below 1')
        return self

    @property
    def se_radius(self) -> int:
        return self.segmentation.se_radius

    @property
    def cleanup_radius(self) -> int:
        return self.segmentation.cleanup_radius
