import csv
import os
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, List, Union

from .constants import GROUND_TRUTH_PREFIX, IMAGE_PREFIX, IMAGE_SUFFIXES
from .exceptions import ReportWriteError

PathLike = Union[str, os.PathLike]


@contextmanager
def open_csv_writer(path: PathLike) -> Iterator:
    """
    Opens ``path`` for writing and yields a comma separated, LF terminated csv writer.

    :param path: Output file.
    :type path: PathLike
    :raises ReportWriteError: If the file cannot be written.
    """
    try:
        with open(path, 'w', newline='', encoding='utf-8') as handle:
            yield csv.writer(handle, lineterminator='\n')
    except OSError as exc:
        raise ReportWriteError(f'Cannot write {path}: {exc}') from exc


def ensure_dir(path: PathLike) -> Path:
    """
    Creates ``path`` (and parents) if needed.

    :raises ReportWriteError: If the directory cannot be created.
    """
    directory = Path(path)
    try:
        directory.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ReportWriteError(f'Cannot create directory {directory}: {exc}') from exc
    return directory


def list_images(directory: PathLike) -> List[Path]:
    """
    Image files of ``directory`` in name order. Ground-truth files (``gt_`` prefix) are skipped.
    """
    return sorted(p for p in Path(directory).iterdir()
                  if p.is_file() and p.suffix.lower() in IMAGE_SUFFIXES and not p.name.startswith(GROUND_TRUTH_PREFIX))


def ground_truth_path(image_path: PathLike, gt_dir: PathLike) -> Path:
    """
    The mask matching ``image_path`` in ``gt_dir``: ``gt_`` plus the name without its ``img_`` prefix, else the
    same file name there. The image itself never counts as its own mask; ``eye.png`` then looks for
    ``gt_eye.png``. The returned path may not exist.
    """
    image = Path(image_path)
    same = Path(gt_dir) / image.name
    stem = image.name[len(IMAGE_PREFIX):] if image.name.startswith(IMAGE_PREFIX) else image.name
    prefixed = Path(gt_dir) / (GROUND_TRUTH_PREFIX + stem)
    if prefixed.is_file() or same.resolve() == image.resolve():
        return prefixed
    if same.is_file() or not image.name.startswith(IMAGE_PREFIX):
        return same
    return prefixed
