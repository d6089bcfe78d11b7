import csv
import math

import numpy as np
import pytest

from retinoblob import blob_analysis, postprocess
from retinoblob.constants import SEI_COLOR, SHI_COLOR
from retinoblob.models import EllipseAnnotation

from .helpers import color, gray, hue_map, near


def _blob(xs, ys, source='SEI', size=32, blob_id=1):
    return blob_analysis.measure_blob(np.asarray(xs), np.asarray(ys), source, gray(np.full((size, size), 100)),
                                      hue_map(size, size), blob_id=blob_id)


def _ellipse(cx, cy, a, b, angle=0.0, source='SEI'):
    return EllipseAnnotation(center=(cx, cy), semi_major=a, semi_minor=b, angle=angle, source=source)


def test_single_pixel_gets_padded_circle():
    ann = postprocess.blob_to_ellipse(_blob([5], [7]))
    assert ann.center == (5.0, 7.0)
    assert near(ann.semi_major, 2.5) and near(ann.semi_minor, 2.5)


def test_horizontal_bar_is_wide():
    ann = postprocess.blob_to_ellipse(_blob(list(range(0, 9)), [5] * 9))
    assert ann.angle == 0.0
    assert ann.semi_major > ann.semi_minor
    assert near(ann.semi_major, 2 * math.sqrt(80 / 12) + 2)
    assert near(ann.semi_minor, 2.5)


def test_vertical_bar_points_down():
    ann = postprocess.blob_to_ellipse(_blob([5] * 9, list(range(0, 9))))
    assert near(ann.angle, math.pi / 2)
    assert ann.semi_major > ann.semi_minor


def test_ellipse_encloses_every_blob_pixel():
    rng = np.random.default_rng(0)
    for _ in range(500):
        bits = rng.random((12, 12)) < rng.uniform(0.05, 0.6)
        bits[rng.integers(0, 12), rng.integers(0, 12)] = True
        ys, xs = np.nonzero(bits)
        blob = _blob(xs + 10, ys + 10)
        ann = postprocess.blob_to_ellipse(blob)
        inside = postprocess.ellipse_interior_mask([ann], (32, 32))
        assert inside.pixels[blob.ys, blob.xs].all()
        assert ann.semi_major >= ann.semi_minor >= 2.5


def test_outline_stays_near_the_curve():
    ann = _ellipse(20.0, 15.0, 9.0, 4.0, angle=0.6)
    out = postprocess.render_annotations(color(np.zeros((32, 40, 3))), [ann])
    ys, xs = np.nonzero(out.pixels.any(axis=2))
    assert xs.size > 0
    t = np.linspace(0.0, 2.0 * math.pi, 4000)
    curve_x = 20.0 + 9.0 * np.cos(t) * math.cos(0.6) - 4.0 * np.sin(t) * math.sin(0.6)
    curve_y = 15.0 + 9.0 * np.cos(t) * math.sin(0.6) + 4.0 * np.sin(t) * math.cos(0.6)
    for x, y in zip(xs, ys):
        assert np.min(np.hypot(curve_x - x, curve_y - y)) <= 1.0


def test_outline_is_closed_without_gaps():
    xs, ys = postprocess.ellipse_outline(_ellipse(30.0, 30.0, 12.0, 5.0, angle=-0.3))
    steps = np.maximum(np.abs(np.diff(np.append(xs, xs[0]))), np.abs(np.diff(np.append(ys, ys[0]))))
    assert steps.max() <= 1


def test_render_without_annotations_copies():
    img = color(np.random.default_rng(1).integers(0, 256, size=(8, 8, 3)))
    out = postprocess.render_annotations(img, [])
    assert out is not img
    assert np.array_equal(out.pixels, img.pixels)


def test_render_leaves_input_untouched():
    img = color(np.zeros((20, 20, 3)))
    postprocess.render_annotations(img, [_ellipse(10.0, 10.0, 4.0, 3.0)])
    assert not img.pixels.any()


def test_render_colours_and_order():
    img = color(np.zeros((30, 30, 3)))
    sei = postprocess.render_annotations(img, [_ellipse(15.0, 15.0, 6.0, 4.0)])
    assert {tuple(p) for p in sei.pixels.reshape(-1, 3).tolist()} == {(0, 0, 0), SEI_COLOR}

    same = [_ellipse(15.0, 15.0, 6.0, 4.0, source='SHI'), _ellipse(15.0, 15.0, 6.0, 4.0, source='SEI')]
    both = postprocess.render_annotations(img, same)
    assert {tuple(p) for p in both.pixels.reshape(-1, 3).tolist()} == {(0, 0, 0), SHI_COLOR}


@pytest.mark.parametrize('center', [(-50.0, -50.0), (0.0, 0.0), (19.0, 3.0)])
def test_render_clips_to_raster(center):
    img = color(np.zeros((10, 20, 3)))
    out = postprocess.render_annotations(img, [_ellipse(center[0], center[1], 6.0, 6.0)])
    assert out.dims == (20, 10)
    if center == (-50.0, -50.0):
        assert not out.pixels.any()
    else:
        assert out.pixels.any()


def test_candidate_mask_is_union():
    blobs = [_blob([1, 2], [1, 1]), _blob([2, 3], [1, 2], source='SHI', blob_id=2)]
    out = postprocess.candidate_mask(blobs, (5, 4))
    assert out.count() == 3
    assert out.pixels[1, 1] and out.pixels[1, 2] and out.pixels[2, 3]


def test_ellipse_interior_of_padded_circle():
    inside = postprocess.ellipse_interior_mask([_ellipse(5.0, 5.0, 2.5, 2.5)], (11, 11))
    assert inside.count() == 21
    assert postprocess.ellipse_interior_mask([], (4, 4)).count() == 0


def test_ellipse_interior_outside_raster():
    assert postprocess.ellipse_interior_mask([_ellipse(-20.0, 3.0, 4.0, 2.0)], (8, 8)).count() == 0


def test_merge_touching_and_overlapping():
    blobs = [
        _blob([2, 3], [2, 2], blob_id=1),
        _blob([4], [3], source='SHI', blob_id=2),
        _blob([10], [10], blob_id=3),
        _blob([10, 11], [10, 10], source='SHI', blob_id=4),
        _blob([20], [2], blob_id=5),
        _blob([22], [2], source='SHI', blob_id=6),
    ]
    assert postprocess.merge_candidates(blobs) == [[1, 2], [3, 4], [5], [6]]
    assert postprocess.merge_candidates([]) == []


def test_write_annotations(tmp_path):
    path = tmp_path / 'annotations.csv'
    postprocess.write_annotations([_ellipse(3.0, 4.0, 5.5, 2.5, 0.25, 'SHI'), _ellipse(1.0, 2.0, 2.5, 2.5)], path)
    rows = list(csv.reader(path.open()))
    assert rows[0] == ['cx', 'cy', 'a', 'b', 'angle', 'source']
    assert rows[1] == ['1.000', '2.000', '2.500', '2.500', '0.000000', 'SEI']
    assert rows[2] == ['3.000', '4.000', '5.500', '2.500', '0.250000', 'SHI']
