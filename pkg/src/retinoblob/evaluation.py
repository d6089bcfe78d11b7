"""
Pixel-to-pixel evaluation against ground truth and the per-stage report.
"""
import csv
import logging
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .constants import MEAN_ROW_NAME, REPORT_CSV_HEADER, STAGE_POSTPROCESSING, STAGES
from .exceptions import DataError, DimensionMismatchError, IOFailure
from .models import (BinaryMask, Blob, CascadeTrace, EvaluationReport, GroundTruth, ImageEvaluation, StageRecord)
from .postprocess import blob_to_ellipse, candidate_mask, ellipse_interior_mask
from .synthesis import synthesize_fundus  # noqa: F401  pylint: disable=unused-import
from .utils import open_csv_writer

logger = logging.getLogger(__name__)


def recall(pred: BinaryMask, gt: GroundTruth) -> float:
    """
    Sensitivity TP / (TP + FN) over pixels. False positives do not enter; an empty ground truth gives 1.0.

    :param pred: Predicted lesion pixels.
    :type pred: BinaryMask
    :param gt: Ground truth.
    :type gt: GroundTruth
    :return: Recall in [0, 1].
    :rtype: float
    :raises DimensionMismatchError: If the rasters differ in size.
    """
    if pred.dims != gt.mask.dims:
        raise DimensionMismatchError(f'prediction is {pred.dims[0]}x{pred.dims[1]} but ground truth is '
                                     f'{gt.mask.dims[0]}x{gt.mask.dims[1]}')
    positives = int(np.count_nonzero(gt.mask.pixels))
    if positives == 0:
        return 1.0
    true_positives = int(np.count_nonzero(pred.pixels & gt.mask.pixels))
    return true_positives / positives


def stage_recalls(trace: CascadeTrace, blobs: Sequence[Blob], gt: GroundTruth, dims: Tuple[int, int],
                  scoring: str = 'blob_pixels') -> List[StageRecord]:
    """
    Blob count and recall after every stage, scored on the union of the stage's surviving blobs.

    With ``ellipse_interior`` scoring the post-processing stage is scored on the filled ellipses of the candidates;
    every earlier stage always scores blob pixels.

    :param trace: Cascade trace of the run.
    :type trace: CascadeTrace
    :param blobs: All blobs of the same run.
    :type blobs: Sequence[Blob]
    :param gt: Ground truth on the standard geometry.
    :type gt: GroundTruth
    :param dims: (width, height) of the standard geometry.
    :type dims: Tuple[int, int]
    :param scoring: ``blob_pixels`` or ``ellipse_interior``.
    :type scoring: str
    :return: One record per stage in pipeline order.
    :rtype: List[StageRecord]
    """
    by_id: Dict[int, Blob] = {blob.id: blob for blob in blobs}
    records = []
    for survivors in trace.stages:
        kept = [by_id[blob_id] for blob_id in survivors.blob_ids]
        if survivors.stage == STAGE_POSTPROCESSING and scoring == 'ellipse_interior':
            pred = ellipse_interior_mask([blob_to_ellipse(blob) for blob in kept], dims)
        else:
            pred = candidate_mask(kept, dims)
        records.append(StageRecord(stage=survivors.stage, blob_count=survivors.count, recall=recall(pred, gt)))
    return records


def _format_count(count: float, mean: bool) -> str:
    return f'{count:.1f}' if mean else str(int(count))


def write_report(report: EvaluationReport, path) -> None:
    """
    Writes ``image,stage,blob_count,recall_pct`` rows for every image followed by the ``mean`` rows.
    Recall is printed as a percentage with two decimals.

    :param report: The report.
    :type report: EvaluationReport
    :param path: Destination CSV.
    :raises ReportWriteError: If the file cannot be written.
    """
    with open_csv_writer(path) as writer:
        writer.writerow(REPORT_CSV_HEADER)
        for row in list(report.images) + [report.mean_row()]:
            mean = row.image == MEAN_ROW_NAME
            for record in row.stages:
                writer.writerow([row.image, record.stage, _format_count(record.blob_count, mean),
                                 f'{100.0 * record.recall:.2f}'])
    logger.info('wrote report for %d images to %s', len(report.images), path)


def read_report(path) -> EvaluationReport:
    """
    Parses a CSV written by ``write_report``. The ``mean`` rows are dropped since they are derived.

    :raises IOFailure: If the file cannot be read.
    :raises DataError: If the rows do not form complete stage sequences.
    """
    try:
        with open(path, newline='', encoding='utf-8') as handle:
            rows = list(csv.DictReader(handle))
    except OSError as exc:
        raise IOFailure(f'cannot read report {path}: {exc}') from exc

    grouped: Dict[str, List[StageRecord]] = {}
    try:
        for row in rows:
            if row['image'] == MEAN_ROW_NAME:
                continue
            grouped.setdefault(row['image'], []).append(
                StageRecord(stage=row['stage'], blob_count=float(row['blob_count']),
                            recall=float(row['recall_pct']) / 100.0))
        images = [ImageEvaluation(image=name, stages=records) for name, records in grouped.items()]
    except (KeyError, ValueError) as exc:
        raise DataError(f'malformed report {path}: {exc}') from exc
    return EvaluationReport(images=images)


def final_recall(row: ImageEvaluation) -> float:
    return row.recall(STAGES[-1])
