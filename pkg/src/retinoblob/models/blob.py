import math
from typing import Any, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

BlobSource = Literal['SEI', 'SHI']


class Blob(BaseModel):
    """
    One labelled connected component of the SEI or SHI mask and its measured features.
    ``xs``/``ys`` hold the pixel coordinates (x to the right, y down).
    """
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    id: int = Field(gt=0)
    source: BlobSource
    xs: np.ndarray
    ys: np.ndarray
    area: int = Field(ge=1)
    perimeter: int = Field(ge=0)
    compactness: float = Field(ge=0)
    intensity_mid: float = Field(ge=0, le=255)
    mean_hue: Optional[float] = Field(default=None, ge=0, lt=1)
    centroid: Tuple[float, float]
    orientation: float

    @field_validator('xs', 'ys', mode='before')
    @classmethod
    def check_coordinates(cls, v: Any) -> np.ndarray:
        arr = np.array(v, dtype=np.int64, copy=True).reshape(-1)
        if arr.size == 0:
            raise ValueError('a blob needs at least one pixel')
        arr.setflags(write=False)
        return arr

    @field_validator('orientation')
    @classmethod
    def check_orientation(cls, v: float) -> float:
        if not -math.pi / 2 < v <= math.pi / 2:
            raise ValueError(f'orientation {v} outside (-pi/2, pi/2]')
        return v

    @model_validator(mode='after')
    def check_pixels(self) -> 'Blob':
        if self.xs.shape != self.ys.shape:
            raise ValueError('xs and ys must have the same length')
        return self
