import math

import numpy as np
import pytest
from pydantic import ValidationError

from retinoblob import models
from retinoblob.constants import STAGES


def test_color_image_is_read_only_copy():
    source = np.zeros((2, 3, 3), dtype=np.uint8)
    img = models.ColorImage(pixels=source)
    source[0, 0, 0] = 9
    assert img.pixels[0, 0, 0] == 0
    assert img.dims == (3, 2)
    with pytest.raises(ValueError):
        img.pixels[0, 0, 0] = 1


def test_color_image_rejects_wrong_shape():
    with pytest.raises(ValidationError):
        models.ColorImage(pixels=np.zeros((2, 3), dtype=np.uint8))


def test_gray_image_rejects_out_of_range_values():
    with pytest.raises(ValidationError):
        models.GrayImage(pixels=np.array([[0, 256]]))
    with pytest.raises(ValidationError):
        models.GrayImage(pixels=np.zeros((0, 4), dtype=np.uint8))


def test_binary_mask_empty_and_count():
    empty = models.BinaryMask.empty(4, 3)
    assert empty.dims == (4, 3)
    assert empty.count() == 0
    assert models.BinaryMask(pixels=[[1, 0], [0, 255]]).count() == 2


def test_hue_map_range_is_checked_on_defined_pixels_only():
    models.HueMap(values=[[5.0]], defined=[[False]])
    with pytest.raises(ValidationError):
        models.HueMap(values=[[1.0]], defined=[[True]])


def test_structuring_element_requires_origin_and_symmetry():
    with pytest.raises(ValidationError):
        models.StructuringElement(offsets=[(1, 0), (-1, 0)])
    with pytest.raises(ValidationError):
        models.StructuringElement(offsets=[(0, 0), (1, 0)])
    se = models.StructuringElement(offsets=[(0, 0), (1, 0), (-1, 0)])
    assert len(se) == 3
    assert se.reach == (1, 0)
    assert se.footprint().tolist() == [[True, True, True]]
    assert se.row_spans() == [(0, 1)]


def test_row_spans_none_for_hollow_rows():
    se = models.StructuringElement(offsets=[(0, 0), (2, 0), (-2, 0)])
    assert se.row_spans() is None


def test_interval_closed():
    interval = models.Interval(min=0.5, max=1.0)
    assert interval.contains(0.5)
    assert interval.contains(1.0)
    assert not interval.contains(1.0000001)
    with pytest.raises(ValidationError):
        models.Interval(min=2, max=1)


def test_cascade_config_defaults():
    cfg = models.CascadeConfig()
    assert (cfg.area_min, cfg.area_max) == (5, 5000)
    assert (cfg.compact_sei.min, cfg.compact_sei.max) == (0.55, 9.0)
    assert (cfg.compact_shi.min, cfg.compact_shi.max) == (0.7, 4.0)
    assert cfg.intensity_sei_min == 90
    assert cfg.intensity_shi_max == 200
    assert (cfg.hue_sei.min, cfg.hue_sei.max) == (0.125, 0.165)
    assert (cfg.hue_shi.min, cfg.hue_shi.max) == (0.06, 0.125)
    with pytest.raises(ValidationError):
        models.CascadeConfig(area_min=10, area_max=5)
    with pytest.raises(ValidationError):
        models.CascadeConfig(area_min=0)


def test_cascade_trace_rejects_growing_counts():
    stages = [models.StageSurvivors(stage=stage, count=count, blob_ids=[])
              for stage, count in zip(STAGES, [3, 2, 2, 3, 1, 1])]
    with pytest.raises(ValidationError):
        models.CascadeTrace(stages=stages, outcomes={})


def test_cascade_trace_rejects_wrong_stage_order():
    stages = [models.StageSurvivors(stage=stage, count=0, blob_ids=[]) for stage in reversed(STAGES)]
    with pytest.raises(ValidationError):
        models.CascadeTrace(stages=stages, outcomes={})


def test_blob_orientation_range(make_blob):
    make_blob(orientation=math.pi / 2)
    with pytest.raises(ValidationError):
        make_blob(orientation=-math.pi / 2)
    with pytest.raises(ValidationError):
        make_blob(mean_hue=1.0)


def test_ellipse_axes_order():
    models.EllipseAnnotation(center=(0, 0), semi_major=2.5, semi_minor=2.5, angle=0, source='SEI')
    with pytest.raises(ValidationError):
        models.EllipseAnnotation(center=(0, 0), semi_major=1, semi_minor=2, angle=0, source='SEI')
    with pytest.raises(ValidationError):
        models.EllipseAnnotation(center=(0, 0), semi_major=1, semi_minor=0.4, angle=0, source='SHI')


def test_pipeline_config_defaults_and_checks():
    cfg = models.PipelineConfig()
    assert cfg.standard_size.width == 752
    assert cfg.standard_size.height == 500
    assert cfg.se_radius == 12
    assert cfg.cleanup_radius == 1
    assert cfg.scoring == 'blob_pixels'
    assert cfg.clahe.tiles_x == 8 and cfg.clahe.clip_limit == 3.0
    with pytest.raises(ValidationError):
        models.PipelineConfig(segmentation={'se_radius': 0})
    with pytest.raises(ValidationError):
        models.PipelineConfig(clahe={'clip_limit': 1.0})
    with pytest.raises(ValidationError):
        models.PipelineConfig(unknown=1)


def test_synth_spec_defaults():
    spec = models.SynthSpec()
    assert (spec.width, spec.height) == (752, 500)
    assert (spec.n_exudates, spec.n_haemorrhages) == (8, 8)
    assert spec.noise_sigma == 4.0
    # a radius of 1.3 px draws blobs of about five pixels, the area floor
    assert (spec.haemorrhage_radius.min, spec.haemorrhage_radius.max) == (1.3, 10.0)
    with pytest.raises(ValidationError):
        models.SynthSpec(n_exudates=-1)


def _row(name, counts, recalls):
    return models.ImageEvaluation(image=name, stages=[
        models.StageRecord(stage=stage, blob_count=count, recall=value)
        for stage, count, value in zip(STAGES, counts, recalls)])


def test_mean_row_is_arithmetic_mean():
    report = models.EvaluationReport(images=[
        _row('a', [10, 8, 6, 4, 2, 2], [1.0, 1.0, 0.8, 0.8, 0.6, 0.6]),
        _row('b', [20, 10, 8, 6, 4, 3], [0.5, 0.5, 0.4, 0.4, 0.2, 0.2]),
    ])
    mean = report.mean_row()
    assert mean.image == 'mean'
    assert mean.blob_count('preprocessing') == 15
    assert mean.blob_count('postprocessing') == 2.5
    assert math.isclose(mean.recall('hue'), 0.4)


def test_image_evaluation_requires_all_stages():
    with pytest.raises(ValidationError):
        models.ImageEvaluation(image='x', stages=[models.StageRecord(stage='area', blob_count=1, recall=1.0)])
