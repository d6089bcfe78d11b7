from typing import Any, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator


def _frozen_copy(array: np.ndarray, dtype: Any) -> np.ndarray:
    out = np.array(array, dtype=dtype, copy=True)
    out.setflags(write=False)
    return out


def _as_intensities(value: Any, ndim: int, what: str) -> np.ndarray:
    arr = np.asarray(value)
    if arr.ndim != ndim:
        raise ValueError(f'{what} pixels must have {ndim} dimensions, got shape {arr.shape}')
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f'{what} must be at least 1x1, got shape {arr.shape}')
    if arr.dtype != np.uint8:
        if arr.dtype.kind not in 'iuf' or arr.min() < 0 or arr.max() > 255:
            raise ValueError(f'{what} pixels must be 8-bit intensities in [0, 255]')
    return _frozen_copy(arr, np.uint8)


class Raster(BaseModel):
    """
    Base for the immutable row-major pixel containers. ``pixels`` is indexed ``[y, x]``.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    pixels: np.ndarray

    @property
    def width(self) -> int:
        return int(self.pixels.shape[1])

    @property
    def height(self) -> int:
        return int(self.pixels.shape[0])

    @property
    def dims(self) -> Tuple[int, int]:
        """(width, height)"""
        return self.width, self.height


class ColorImage(Raster):
    """
    RGB raster, 8 bits per channel, shape (height, width, 3).
    """

    @field_validator('pixels', mode='before')
    @classmethod
    def check_pixels(cls, v: Any) -> np.ndarray:
        arr = np.asarray(v)
        if arr.ndim != 3 or arr.shape[2] != 3:
            raise ValueError(f'ColorImage pixels must have shape (height, width, 3), got {arr.shape}')
        return _as_intensities(arr, 3, 'ColorImage')


class GrayImage(Raster):
    """
    Single channel 8-bit raster, shape (height, width).
    """

    @field_validator('pixels', mode='before')
    @classmethod
    def check_pixels(cls, v: Any) -> np.ndarray:
        return _as_intensities(v, 2, 'GrayImage')


class BinaryMask(Raster):
    """
    Boolean raster, True is foreground.
    """

    @field_validator('pixels', mode='before')
    @classmethod
    def check_pixels(cls, v: Any) -> np.ndarray:
        arr = np.asarray(v)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError(f'BinaryMask pixels must be a non-empty 2D array, got shape {arr.shape}')
        return _frozen_copy(arr != 0, bool)

    @classmethod
    def empty(cls, width: int, height: int) -> 'BinaryMask':
        return cls(pixels=np.zeros((height, width), dtype=bool))

    def count(self) -> int:
        return int(np.count_nonzero(self.pixels))


class HueMap(BaseModel):
    """
    Per-pixel HSV hue in [0, 1). ``defined`` is False where the pixel is achromatic; ``values`` is 0 there.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    values: np.ndarray
    defined: np.ndarray

    @field_validator('values', mode='before')
    @classmethod
    def check_values(cls, v: Any) -> np.ndarray:
        arr = np.asarray(v, dtype=np.float64)
        if arr.ndim != 2:
            raise ValueError(f'HueMap values must be 2D, got shape {arr.shape}')
        return _frozen_copy(arr, np.float64)

    @field_validator('defined', mode='before')
    @classmethod
    def check_defined(cls, v: Any) -> np.ndarray:
        return _frozen_copy(np.asarray(v) != 0, bool)

    @model_validator(mode='after')
    def check_ranges(self) -> 'HueMap':
        if self.values.shape != self.defined.shape:
            raise ValueError('HueMap values and defined flags must share a shape')
        hues = self.values[self.defined]
        if hues.size and (hues.min() < 0.0 or hues.max() >= 1.0):
            raise ValueError('defined hue values must lie in [0, 1)')
        return self

    @property
    def width(self) -> int:
        return int(self.values.shape[1])

    @property
    def height(self) -> int:
        return int(self.values.shape[0])

    @property
    def dims(self) -> Tuple[int, int]:
        return self.width, self.height
