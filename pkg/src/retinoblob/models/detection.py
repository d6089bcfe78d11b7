from typing import List

from pydantic import BaseModel, ConfigDict

from .blob import Blob
from .cascade import CascadeTrace
from .ellipse import EllipseAnnotation
from .preprocess import PreprocessStages
from .raster import ColorImage


class DetectionResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    stages: PreprocessStages
    blobs: List[Blob]
    candidates: List[Blob]
    trace: CascadeTrace
    annotations: List[EllipseAnnotation]
    annotated: ColorImage
