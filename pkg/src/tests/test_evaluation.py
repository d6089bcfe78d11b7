import csv

import numpy as np
import pytest

from retinoblob import cascade_tree, evaluation
from retinoblob.constants import STAGES
from retinoblob.exceptions import DataError, DimensionMismatchError, IOFailure
from retinoblob.models import (BinaryMask, CascadeConfig, EvaluationReport, GroundTruth, ImageEvaluation,
                               StageRecord)

from .helpers import mask, near


def _truth(bits):
    return GroundTruth(mask=mask(bits))


def _row(name, counts, recalls):
    return ImageEvaluation(image=name, stages=[StageRecord(stage=stage, blob_count=count, recall=value)
                                               for stage, count, value in zip(STAGES, counts, recalls)])


def test_recall_perfect_and_empty_prediction():
    gt = _truth([[1, 1, 0], [0, 0, 0]])
    assert evaluation.recall(mask([[1, 1, 0], [0, 0, 0]]), gt) == 1.0
    assert evaluation.recall(BinaryMask.empty(3, 2), gt) == 0.0


def test_recall_half():
    gt = _truth([[1, 1, 0, 0]])
    assert evaluation.recall(mask([[1, 0, 1, 1]]), gt) == 0.5


def test_false_positives_do_not_lower_recall():
    gt = _truth([[1, 0, 0, 0]])
    assert evaluation.recall(mask([[1, 1, 1, 1]]), gt) == 1.0


def test_empty_ground_truth_scores_one():
    assert evaluation.recall(mask([[1, 0]]), _truth([[0, 0]])) == 1.0
    assert evaluation.recall(BinaryMask.empty(2, 1), _truth([[0, 0]])) == 1.0


def test_recall_size_mismatch():
    with pytest.raises(DimensionMismatchError, match='3x2'):
        evaluation.recall(BinaryMask.empty(3, 2), _truth(np.zeros((3, 3))))


def test_recall_grows_with_prediction():
    rng = np.random.default_rng(4)
    gt = _truth(rng.random((20, 20)) < 0.3)
    smaller = rng.random((20, 20)) < 0.4
    larger = smaller | (rng.random((20, 20)) < 0.3)
    assert evaluation.recall(mask(smaller), gt) <= evaluation.recall(mask(larger), gt)


def test_stage_recalls_follow_the_cascade(make_blob):
    lesion = make_blob(blob_id=1, area=6, xs=[2, 3, 4], ys=[2, 2, 2])
    elongated = make_blob(blob_id=2, compactness=30.0, xs=[10, 11, 12], ys=[8, 8, 8])
    bits = np.zeros((12, 16), dtype=bool)
    bits[2, 2:5] = True
    bits[8, 10:13] = True
    blobs = [lesion, elongated]
    _, trace = cascade_tree.run_cascade(blobs, CascadeConfig())
    records = evaluation.stage_recalls(trace, blobs, _truth(bits), (16, 12))
    assert [record.stage for record in records] == list(STAGES)
    assert [record.blob_count for record in records] == [2, 2, 1, 1, 1, 1]
    assert [record.recall for record in records] == [1.0, 1.0, 0.5, 0.5, 0.5, 0.5]


def test_stage_recalls_when_everything_survives(make_blob):
    blobs = [make_blob(blob_id=1, xs=[1], ys=[1]), make_blob(blob_id=2, xs=[5], ys=[5])]
    bits = np.zeros((8, 8), dtype=bool)
    bits[1, 1] = bits[5, 5] = True
    _, trace = cascade_tree.run_cascade(blobs, CascadeConfig())
    records = evaluation.stage_recalls(trace, blobs, _truth(bits), (8, 8))
    assert all(record.recall == 1.0 for record in records)
    assert records[-1].blob_count == 2


def test_ellipse_scoring_only_changes_the_final_stage(make_blob):
    blob = make_blob(blob_id=1, xs=[6], ys=[6])
    bits = np.zeros((14, 14), dtype=bool)
    bits[5:8, 5:8] = True
    _, trace = cascade_tree.run_cascade([blob], CascadeConfig())
    pixels = evaluation.stage_recalls(trace, [blob], _truth(bits), (14, 14))
    ellipses = evaluation.stage_recalls(trace, [blob], _truth(bits), (14, 14), scoring='ellipse_interior')
    assert near(pixels[-1].recall, 1 / 9)
    assert ellipses[-1].recall == 1.0
    assert [r.recall for r in pixels[:-1]] == [r.recall for r in ellipses[:-1]]


def test_report_round_trip(tmp_path):
    report = EvaluationReport(images=[
        _row('img_000', [10, 8, 6, 5, 4, 3], [1.0, 0.9, 0.8, 0.8, 0.75, 0.75]),
        _row('img_001', [4, 4, 3, 3, 2, 2], [0.5, 0.5, 0.5, 0.4, 0.25, 0.25]),
    ])
    path = tmp_path / 'report.csv'
    evaluation.write_report(report, path)
    rows = list(csv.reader(path.open()))
    assert rows[0] == ['image', 'stage', 'blob_count', 'recall_pct']
    assert len(rows) == 1 + 6 * 3
    assert rows[1] == ['img_000', 'preprocessing', '10', '100.00']
    assert rows[-1] == ['mean', 'postprocessing', '2.5', '50.00']

    back = evaluation.read_report(path)
    assert [row.image for row in back.images] == ['img_000', 'img_001']
    assert back.images[1].blob_count('hue') == 2
    assert near(back.images[0].recall('hue'), 0.75)
    assert near(evaluation.final_recall(back.images[1]), 0.25)


def test_report_for_ten_images_has_sixty_six_rows(tmp_path):
    report = EvaluationReport(images=[_row(f'img_{i:03d}', [5] * 6, [0.5] * 6) for i in range(10)])
    path = tmp_path / 'report.csv'
    evaluation.write_report(report, path)
    assert len(list(csv.reader(path.open()))) == 1 + 66


def test_read_report_missing(tmp_path):
    with pytest.raises(IOFailure):
        evaluation.read_report(tmp_path / 'nope.csv')


def test_read_report_malformed(tmp_path):
    path = tmp_path / 'bad.csv'
    path.write_text('image,stage,blob_count,recall_pct\nimg_000,area,many,50\n')
    with pytest.raises(DataError):
        evaluation.read_report(path)


def test_read_report_incomplete_stages(tmp_path):
    path = tmp_path / 'short.csv'
    path.write_text('image,stage,blob_count,recall_pct\nimg_000,preprocessing,3,50.00\n')
    with pytest.raises(DataError):
        evaluation.read_report(path)
