from .raster import ColorImage, GrayImage, BinaryMask, HueMap
from .structuring_element import StructuringElement
from .blob import Blob, BlobSource
from .cascade import Interval, CascadeConfig, StageSurvivors, CascadeTrace
from .ellipse import EllipseAnnotation
from .config import (StandardSize, ClaheParams, StretchParams, SegmentationParams, SynthSpec, PipelineConfig)
from .evaluation import PlantedLesion, GroundTruth, StageRecord, ImageEvaluation, EvaluationReport
from .preprocess import PreprocessOutput, PreprocessStages
from .detection import DetectionResult
