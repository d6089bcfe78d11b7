"""
The Detector class runs the lesion-detection pipeline step by step on one image.
"""
import logging
from typing import List, Optional, Tuple

from . import models
from .blob_analysis import extract_blobs
from .cascade_tree import run_cascade
from .constants import STAGE_POSTPROCESSING
from .evaluation import stage_recalls
from .exceptions import PipelineStageError, RetinoblobError
from .postprocess import blob_to_ellipse, render_annotations
from .segmentation import preprocess_stages

logger = logging.getLogger(__name__)


def _step(stage: str, source: Optional[str], func, *args):
    """
    Runs one pipeline step, re-raising any failure as PipelineStageError naming the step and the input.
    """
    try:
        return func(*args)
    except PipelineStageError:
        raise
    except RetinoblobError as exc:
        raise PipelineStageError(stage, source, str(exc), exit_code=exc.exit_code) from exc
    except (ValueError, ArithmeticError, IndexError, MemoryError) as exc:
        raise PipelineStageError(stage, source, str(exc)) from exc


class Detector:
    """
    Exudate and haemorrhage detector.

    :param config: Pipeline configuration. Defaults to PipelineConfig().
    :type config: models.PipelineConfig | None
    """

    def __init__(self, config: Optional[models.PipelineConfig] = None):
        self.config = config or models.PipelineConfig()

    @property
    def dims(self) -> Tuple[int, int]:
        return self.config.standard_size.width, self.config.standard_size.height

    def preprocess(self, image: models.ColorImage, source: Optional[str] = None) -> models.PreprocessStages:
        """
        Resize, CLAHE, top/bottom-hat and binarisation into SEI and SHI.

        :param image: Raw colour image.
        :type image: models.ColorImage
        :param source: Name of the input, for error messages.
        :type source: str | None
        :return: All intermediate rasters.
        :rtype: models.PreprocessStages
        """
        return _step('preprocess', source, preprocess_stages, image, self.config)

    def find_blobs(self, stages: models.PreprocessStages, source: Optional[str] = None) -> List[models.Blob]:
        """
        Labels and measures the blobs of both masks.

        :param stages: Pre-processing result.
        :type stages: models.PreprocessStages
        :param source: Name of the input, for error messages.
        :type source: str | None
        :return: All blobs, SEI first.
        :rtype: List[models.Blob]
        """
        return _step('blob analysis', source, extract_blobs, stages.output())

    def classify(self, blobs: List[models.Blob],
                 source: Optional[str] = None) -> Tuple[List[models.Blob], models.CascadeTrace]:
        """
        Runs the cascading decision tree.

        :param blobs: Measured blobs.
        :type blobs: List[models.Blob]
        :param source: Name of the input, for error messages.
        :type source: str | None
        :return: The candidates and the cascade trace.
        :rtype: Tuple[List[models.Blob], models.CascadeTrace]
        """
        return _step('cascade', source, run_cascade, blobs, self.config.cascade)

    def annotate(self, image: models.ColorImage, candidates: List[models.Blob],
                 source: Optional[str] = None) -> Tuple[List[models.EllipseAnnotation], models.ColorImage]:
        """
        Fits one ellipse per candidate and draws them on ``image``.

        :param image: The resized colour image.
        :type image: models.ColorImage
        :param candidates: Cascade survivors.
        :type candidates: List[models.Blob]
        :param source: Name of the input, for error messages.
        :type source: str | None
        :return: The annotations and the annotated copy.
        :rtype: Tuple[List[models.EllipseAnnotation], models.ColorImage]
        """
        def draw():
            annotations = [blob_to_ellipse(blob) for blob in candidates]
            return annotations, render_annotations(image, annotations)

        return _step('postprocess', source, draw)

    def detect(self, image: models.ColorImage, source: Optional[str] = None) -> models.DetectionResult:
        """
        The whole pipeline on one image.

        :param image: Raw colour image.
        :type image: models.ColorImage
        :param source: Name of the input, for error messages.
        :type source: str | None
        :return: Every intermediate and final product.
        :rtype: models.DetectionResult
        """
        stages = self.preprocess(image, source)
        blobs = self.find_blobs(stages, source)
        candidates, trace = self.classify(blobs, source)
        annotations, annotated = self.annotate(stages.resized, candidates, source)
        logger.info('%s: %d blobs, %d candidates in %d regions', source or 'image', len(blobs), len(candidates),
                    trace.count(STAGE_POSTPROCESSING))
        return models.DetectionResult(stages=stages, blobs=blobs, candidates=candidates, trace=trace,
                                      annotations=annotations, annotated=annotated)

    def evaluate(self, image: models.ColorImage, gt: models.GroundTruth, name: str,
                 result: Optional[models.DetectionResult] = None) -> models.ImageEvaluation:
        """
        Detects lesions and scores every stage against the ground truth.

        :param image: Raw colour image.
        :type image: models.ColorImage
        :param gt: Ground truth on the standard geometry.
        :type gt: models.GroundTruth
        :param name: Row label, usually the file name.
        :type name: str
        :param result: An existing detection of ``image`` to score instead of running the pipeline again.
        :type result: models.DetectionResult | None
        :return: The per-stage evaluation.
        :rtype: models.ImageEvaluation
        """
        result = result or self.detect(image, name)
        records = _step('evaluation', name, stage_recalls, result.trace, result.blobs, gt, self.dims,
                        self.config.scoring)
        return models.ImageEvaluation(image=name, stages=records)
