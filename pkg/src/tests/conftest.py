
import numpy as np
import pytest

from retinoblob import models


def _blob(blob_id=1, source='SEI', area=100, compactness=1.2, intensity_mid=150.0, mean_hue=0.14,
          xs=None, ys=None, perimeter=40, orientation=0.0):
    if xs is None:
        xs, ys = [blob_id * 4], [0]
    return models.Blob(id=blob_id, source=source, xs=xs, ys=ys, area=area, perimeter=perimeter,
                       compactness=compactness, intensity_mid=intensity_mid, mean_hue=mean_hue,
                       centroid=(float(np.mean(xs)), float(np.mean(ys))), orientation=orientation)


@pytest.fixture
def make_blob():
    """Factory for feature records; pixels default to one pixel spaced apart from other ids."""
    return _blob


@pytest.fixture
def small_config():
    """Pipeline settings for small hand-built frames: no resize, one CLAHE tile."""
    def build(width, height, **segmentation):
        return models.PipelineConfig(standard_size=models.StandardSize(width=width, height=height),
                                     clahe=models.ClaheParams(tiles_x=1, tiles_y=1),
                                     segmentation=models.SegmentationParams(**segmentation))
    return build

