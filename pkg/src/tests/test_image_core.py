import numpy as np
import pytest
from PIL import Image

from retinoblob import image_core
from retinoblob.exceptions import ImageReadError, ImageWriteError, InvalidParameterError

from .helpers import color, gray, mask


def test_load_color_png(tmp_path):
    path = tmp_path / 'two.png'
    Image.fromarray(np.array([[[255, 0, 0], [0, 0, 255]]], dtype=np.uint8)).save(path)
    img = image_core.load_color(path)
    assert img.dims == (2, 1)
    assert img.pixels.tolist() == [[[255, 0, 0], [0, 0, 255]]]


def test_load_color_drops_alpha(tmp_path):
    path = tmp_path / 'rgba.png'
    Image.fromarray(np.array([[[10, 20, 30, 0]]], dtype=np.uint8)).save(path)
    assert image_core.load_color(path).pixels.tolist() == [[[10, 20, 30]]]


def test_load_missing_file(tmp_path):
    with pytest.raises(ImageReadError, match='missing.png'):
        image_core.load_color(tmp_path / 'missing.png')


def test_load_text_file_with_png_name(tmp_path):
    path = tmp_path / 'fake.png'
    path.write_text('not an image')
    with pytest.raises(ImageReadError, match='fake.png'):
        image_core.load_color(path)


@pytest.mark.parametrize('suffix', ['.png', '.pgm'])
def test_gray_round_trip(tmp_path, suffix):
    img = gray(np.arange(12).reshape(3, 4) * 20)
    path = tmp_path / f'g{suffix}'
    image_core.save_gray(img, path)
    assert np.array_equal(image_core.load_gray(path).pixels, img.pixels)


@pytest.mark.parametrize('suffix', ['.png', '.ppm'])
def test_color_round_trip(tmp_path, suffix):
    rng = np.random.default_rng(1)
    img = color(rng.integers(0, 256, size=(5, 7, 3)))
    path = tmp_path / f'c{suffix}'
    image_core.save_color(img, path)
    assert np.array_equal(image_core.load_color(path).pixels, img.pixels)


def test_mask_saved_as_0_255(tmp_path):
    path = tmp_path / 'm.png'
    image_core.save_mask(mask([[True, False]]), path)
    assert np.asarray(Image.open(path)).tolist() == [[255, 0]]
    assert image_core.load_mask(path).pixels.tolist() == [[True, False]]


def test_load_mask_threshold(tmp_path):
    path = tmp_path / 'm.png'
    Image.fromarray(np.array([[127, 128, 0, 255]], dtype=np.uint8)).save(path)
    assert image_core.load_mask(path).pixels.tolist() == [[False, True, False, True]]


def test_save_unsupported_suffix(tmp_path):
    with pytest.raises(ImageWriteError):
        image_core.save_gray(gray([[1]]), tmp_path / 'x.jpg')


def test_save_into_missing_directory(tmp_path):
    with pytest.raises(ImageWriteError):
        image_core.save_gray(gray([[1]]), tmp_path / 'nope' / 'x.png')


def test_resize_identity():
    img = color(np.random.default_rng(0).integers(0, 256, size=(4, 6, 3)))
    assert image_core.resize_to_standard(img, 6, 4) is img


def test_resize_constant():
    img = color(np.full((2, 2, 3), 77))
    out = image_core.resize_to_standard(img, 4, 4)
    assert out.dims == (4, 4)
    assert np.all(out.pixels == 77)


def test_resize_midpoint():
    img = color([[[0, 0, 0], [255, 255, 255]]])
    out = image_core.resize_to_standard(img, 3, 1)
    assert np.all(np.abs(out.pixels[0, 1].astype(int) - 128) <= 1)


def test_resize_zero_target():
    with pytest.raises(InvalidParameterError):
        image_core.resize_to_standard(color([[[0, 0, 0]]]), 0, 5)


def test_to_gray_examples():
    img = color([[[255, 255, 255], [0, 0, 0], [255, 0, 0]]])
    assert image_core.to_gray(img).pixels.tolist() == [[255, 0, 76]]


def test_to_gray_equal_channels():
    levels = np.arange(256, dtype=np.uint8)
    img = color(np.repeat(levels[None, :, None], 3, axis=2))
    assert np.array_equal(image_core.to_gray(img).pixels[0], levels)


def test_to_hue_examples():
    hue = image_core.to_hue(color([[[255, 0, 0], [0, 255, 0], [255, 128, 0], [9, 9, 9]]]))
    assert hue.values[0, 0] == 0.0
    assert abs(hue.values[0, 1] - 1 / 3) < 1e-12
    assert abs(hue.values[0, 2] - 0.0837) < 1e-3
    assert hue.defined.tolist() == [[True, True, True, False]]


def test_to_hue_range_on_random_pixels():
    hue = image_core.to_hue(color(np.random.default_rng(3).integers(0, 256, size=(32, 32, 3))))
    values = hue.values[hue.defined]
    assert values.min() >= 0.0
    assert values.max() < 1.0
