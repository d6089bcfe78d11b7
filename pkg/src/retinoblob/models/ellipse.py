from typing import Tuple

from pydantic import BaseModel, ConfigDict, model_validator

from .blob import BlobSource


class EllipseAnnotation(BaseModel):
    """
    Oriented ellipse drawn around a candidate blob. ``angle`` is the direction of the major axis in radians.
    """
    model_config = ConfigDict(frozen=True)

    center: Tuple[float, float]
    semi_major: float
    semi_minor: float
    angle: float
    source: BlobSource

    @model_validator(mode='after')
    def check_axes(self) -> 'EllipseAnnotation':
        if not self.semi_major >= self.semi_minor >= 0.5:
            raise ValueError(f'axes must satisfy semi_major >= semi_minor >= 0.5, '
                             f'got {self.semi_major}, {self.semi_minor}')
        return self
