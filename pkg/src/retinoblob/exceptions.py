"""
Errors raised by retinoblob. Each carries the CLI exit code it maps to.
"""
from typing import Optional

from .constants import EXIT_DATA, EXIT_IO


class RetinoblobError(Exception):
    exit_code = EXIT_DATA


class DataError(RetinoblobError):
    exit_code = EXIT_DATA


class InvalidParameterError(DataError):
    pass


class ConfigError(DataError):
    pass


class DimensionMismatchError(DataError):
    pass


class MissingGroundTruthError(DataError):
    pass


class EmptyDatasetError(DataError):
    pass


class PipelineStageError(DataError):
    """
    A pipeline step failed for one input.

    :param stage: Name of the failing step.
    :type stage: str
    :param source: The file (or label) being processed.
    :type source: Optional[str]
    :param reason: Description of the failure.
    :type reason: str
    :param exit_code: Exit code to report instead of the data-error default.
    :type exit_code: Optional[int]
    """

    def __init__(self, stage: str, source: Optional[str], reason: str, exit_code: Optional[int] = None):
        self.stage = stage
        self.source = source
        self.reason = reason
        self._exit_override = exit_code
        if exit_code is not None:
            self.exit_code = exit_code
        where = f' for {source}' if source else ''
        super().__init__(f'{stage} failed{where}: {reason}')

    def __reduce__(self):
        # rebuilt from its fields when raised in a worker process
        return self.__class__, (self.stage, self.source, self.reason, self._exit_override)


class IOFailure(RetinoblobError):
    exit_code = EXIT_IO


class ImageReadError(IOFailure):
    pass


class ImageWriteError(IOFailure):
    pass


class ConfigNotFoundError(IOFailure):
    pass


class ReportWriteError(IOFailure):
    pass
