from typing import Dict, List, Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..constants import (DEFAULT_AREA_MIN, DEFAULT_AREA_MAX, DEFAULT_COMPACT_SEI, DEFAULT_COMPACT_SHI,
                         DEFAULT_INTENSITY_SEI_MIN, DEFAULT_INTENSITY_SHI_MAX, DEFAULT_HUE_SEI, DEFAULT_HUE_SHI,
                         STAGES)

StageName = Literal['preprocessing', 'area', 'compactness', 'intensity', 'hue', 'postprocessing']


class Interval(BaseModel):
    """
    Closed keep-interval [min, max].
    """
    model_config = ConfigDict(extra='forbid')

    min: float
    max: float

    @model_validator(mode='after')
    def check_order(self) -> 'Interval':
        if self.min > self.max:
            raise ValueError(f'interval min {self.min} is larger than max {self.max}')
        return self

    def contains(self, value: float) -> bool:
        return self.min <= value <= self.max


class CascadeConfig(BaseModel):
    """
    The eight decision-tree thresholds.
    """
    model_config = ConfigDict(extra='forbid')

    area_min: int = Field(DEFAULT_AREA_MIN, ge=1)
    area_max: int = DEFAULT_AREA_MAX
    compact_sei: Interval = Field(default_factory=lambda: Interval(min=DEFAULT_COMPACT_SEI[0],
                                                                   max=DEFAULT_COMPACT_SEI[1]))
    compact_shi: Interval = Field(default_factory=lambda: Interval(min=DEFAULT_COMPACT_SHI[0],
                                                                   max=DEFAULT_COMPACT_SHI[1]))
    intensity_sei_min: float = DEFAULT_INTENSITY_SEI_MIN
    intensity_shi_max: float = DEFAULT_INTENSITY_SHI_MAX
    hue_sei: Interval = Field(default_factory=lambda: Interval(min=DEFAULT_HUE_SEI[0], max=DEFAULT_HUE_SEI[1]))
    hue_shi: Interval = Field(default_factory=lambda: Interval(min=DEFAULT_HUE_SHI[0], max=DEFAULT_HUE_SHI[1]))

    @model_validator(mode='after')
    def check_area(self) -> 'CascadeConfig':
        if self.area_min > self.area_max:
            raise ValueError(f'area_min {self.area_min} is larger than area_max {self.area_max}')
        return self


class StageSurvivors(BaseModel):
    stage: StageName
    count: int = Field(ge=0)
    blob_ids: List[int]


class CascadeTrace(BaseModel):
    """
    Per-stage survivors and the outcome of every blob. ``groups`` lists the merged candidate regions.
    """
    stages: List[StageSurvivors]
    outcomes: Dict[int, str]
    groups: List[List[int]] = Field(default_factory=list)

    @model_validator(mode='after')
    def check_attrition(self) -> 'CascadeTrace':
        names = tuple(s.stage for s in self.stages)
        if names != STAGES:
            raise ValueError(f'trace stages must be {STAGES}, got {names}')
        counts = [s.count for s in self.stages]
        for before, after in zip(counts, counts[1:]):
            if after > before:
                raise ValueError(f'survivor counts must be non-increasing, got {counts}')
        return self

    def survivors(self, stage: str) -> List[int]:
        for record in self.stages:
            if record.stage == stage:
                return list(record.blob_ids)
        raise KeyError(stage)

    def count(self, stage: str) -> int:
        for record in self.stages:
            if record.stage == stage:
                return record.count
        raise KeyError(stage)

    def outcome(self, blob_id: int) -> str:
        return self.outcomes[blob_id]
