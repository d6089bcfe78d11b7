from typing import List, Literal, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..constants import STAGES, MEAN_ROW_NAME
from .cascade import StageName
from .raster import BinaryMask


class PlantedLesion(BaseModel):
    kind: Literal['exudate', 'haemorrhage']
    area: int = Field(ge=1)
    center: Tuple[float, float]


class GroundTruth(BaseModel):
    """
    Lesion pixels of one image, all lesion types in one foreground class.
    """
    model_config = ConfigDict(frozen=True)

    mask: BinaryMask
    lesions: List[PlantedLesion] = Field(default_factory=list)


class StageRecord(BaseModel):
    stage: StageName
    blob_count: float = Field(ge=0)
    recall: float = Field(ge=0.0, le=1.0)


class ImageEvaluation(BaseModel):
    """
    One row of the per-stage table: blob count and pixel recall after each stage.
    """
    image: str
    stages: List[StageRecord]

    @model_validator(mode='after')
    def check_stages(self) -> 'ImageEvaluation':
        names = tuple(s.stage for s in self.stages)
        if names != STAGES:
            raise ValueError(f'stages must be {STAGES}, got {names}')
        return self

    def recall(self, stage: str) -> float:
        return next(s.recall for s in self.stages if s.stage == stage)

    def blob_count(self, stage: str) -> float:
        return next(s.blob_count for s in self.stages if s.stage == stage)


class EvaluationReport(BaseModel):
    images: List[ImageEvaluation] = Field(default_factory=list)

    def mean_row(self) -> ImageEvaluation:
        """
        Arithmetic mean of the image rows, stage by stage. An empty report gives zero counts and recalls.
        """
        n = len(self.images)
        records = []
        for position, stage in enumerate(STAGES):
            counts = [image.stages[position].blob_count for image in self.images]
            recalls = [image.stages[position].recall for image in self.images]
            records.append(StageRecord(stage=stage,
                                       blob_count=sum(counts) / n if n else 0.0,
                                       recall=min(1.0, sum(recalls) / n) if n else 0.0))
        return ImageEvaluation(image=MEAN_ROW_NAME, stages=records)
