"""
The cascading decision tree: area, compactness, intensity and hue filters applied in that order.

Every keep-interval is closed, so boundary values survive.
"""
import logging
from typing import Callable, List, Optional, Sequence, Tuple

from .constants import (FILTER_STAGES, OUTCOME_CANDIDATE, SOURCE_SEI, STAGE_AREA, STAGE_COMPACTNESS, STAGE_HUE,
                        STAGE_INTENSITY, STAGE_POSTPROCESSING, STAGE_PREPROCESSING, STAGES_CSV_HEADER)
from .exceptions import InvalidParameterError
from .models import Blob, CascadeConfig, CascadeTrace, StageSurvivors
from .postprocess import merge_candidates
from .utils import open_csv_writer

logger = logging.getLogger(__name__)


def keep_area(blob: Blob, cfg: CascadeConfig) -> bool:
    return cfg.area_min <= blob.area <= cfg.area_max


def keep_compactness(blob: Blob, cfg: CascadeConfig) -> bool:
    interval = cfg.compact_sei if blob.source == SOURCE_SEI else cfg.compact_shi
    return interval.contains(blob.compactness)


def keep_intensity(blob: Blob, cfg: CascadeConfig) -> bool:
    if blob.source == SOURCE_SEI:
        return blob.intensity_mid >= cfg.intensity_sei_min
    return blob.intensity_mid <= cfg.intensity_shi_max


def keep_hue(blob: Blob, cfg: CascadeConfig) -> bool:
    if blob.mean_hue is None:
        return False
    interval = cfg.hue_sei if blob.source == SOURCE_SEI else cfg.hue_shi
    return interval.contains(blob.mean_hue)


FILTERS: Tuple[Tuple[str, Callable[[Blob, CascadeConfig], bool]], ...] = (
    (STAGE_AREA, keep_area),
    (STAGE_COMPACTNESS, keep_compactness),
    (STAGE_INTENSITY, keep_intensity),
    (STAGE_HUE, keep_hue),
)
assert tuple(stage for stage, _ in FILTERS) == FILTER_STAGES


def passes_all(blob: Blob, cfg: CascadeConfig) -> bool:
    return all(keep(blob, cfg) for _, keep in FILTERS)


def run_cascade(blobs: Sequence[Blob], cfg: CascadeConfig) -> Tuple[List[Blob], CascadeTrace]:
    """
    Runs the four filters in order. A blob rejected by a stage is not shown to later stages.

    :param blobs: Measured blobs with unique ids.
    :type blobs: Sequence[Blob]
    :param cfg: Thresholds.
    :type cfg: CascadeConfig
    :return: Candidates in id order, and the per-stage trace.
    :rtype: Tuple[List[Blob], CascadeTrace]
    :raises InvalidParameterError: If blob ids repeat.
    """
    survivors = sorted(blobs, key=lambda blob: blob.id)
    ids = [blob.id for blob in survivors]
    if len(set(ids)) != len(ids):
        raise InvalidParameterError('blob ids must be unique within a cascade run')

    stages = [StageSurvivors(stage=STAGE_PREPROCESSING, count=len(survivors), blob_ids=ids)]
    outcomes = {}
    for stage, keep in FILTERS:
        kept = []
        for blob in survivors:
            if keep(blob, cfg):
                kept.append(blob)
            else:
                outcomes[blob.id] = stage
        survivors = kept
        stages.append(StageSurvivors(stage=stage, count=len(survivors), blob_ids=[blob.id for blob in survivors]))

    for blob in survivors:
        outcomes[blob.id] = OUTCOME_CANDIDATE
    groups = merge_candidates(survivors)
    stages.append(StageSurvivors(stage=STAGE_POSTPROCESSING, count=len(groups),
                                 blob_ids=[blob.id for blob in survivors]))
    trace = CascadeTrace(stages=stages, outcomes=outcomes, groups=groups)
    logger.debug('cascade: %s', ' -> '.join(str(count) for _, count in stage_survivor_counts(trace)))
    return survivors, trace


def stage_survivor_counts(trace: CascadeTrace) -> List[Tuple[str, int]]:
    """
    (stage, count) pairs in pipeline order.
    """
    return [(record.stage, record.count) for record in trace.stages]


def write_stage_table(image: str, trace: CascadeTrace, path, recalls: Optional[Sequence[float]] = None) -> None:
    """
    Writes ``image,stage,blob_count,recall`` rows, one per stage. The recall column is left empty without
    ground truth.
    """
    with open_csv_writer(path) as writer:
        writer.writerow(STAGES_CSV_HEADER)
        for position, (stage, count) in enumerate(stage_survivor_counts(trace)):
            writer.writerow([image, stage, count, '' if recalls is None else f'{recalls[position]:.4f}'])
