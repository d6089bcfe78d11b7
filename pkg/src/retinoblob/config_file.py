"""
The flat config format: one ``dotted.key = value`` per line, ``#`` comments, blank lines ignored.

Keys are paths into ``PipelineConfig``; comma-separated values become lists (RGB colours). Omitted keys keep
their defaults, so an empty file gives the default pipeline.
"""
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from pydantic import ValidationError

from .exceptions import ConfigError, ConfigNotFoundError, IOFailure
from .models import PipelineConfig

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

# top-level spellings of keys that live in a section
KEY_ALIASES = {
    'se_radius': 'segmentation.se_radius',
    'cleanup_radius': 'segmentation.cleanup_radius',
}


def _parse_value(raw: str) -> Union[str, List[str]]:
    if ',' in raw:
        return [part.strip() for part in raw.split(',')]
    return raw


def _insert(tree: Dict[str, Any], key: str, value: Any, source: str) -> None:
    *parents, leaf = key.split('.')
    node = tree
    for part in parents:
        child = node.setdefault(part, {})
        if not isinstance(child, dict):
            raise ConfigError(f'{source}: key {key} conflicts with scalar key {part}')
        node = child
    if leaf in node:
        raise ConfigError(f'{source}: key {key} is set twice or conflicts with a section')
    node[leaf] = value


def _merge(base: Dict[str, Any], overrides: Dict[str, Any]) -> Dict[str, Any]:
    merged = dict(base)
    for key, value in overrides.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def parse_config(text: str, source: str = '<string>') -> PipelineConfig:
    """
    Parses config text into a validated ``PipelineConfig``.

    :param text: The config text.
    :type text: str
    :param source: Name used in error messages, usually the file path.
    :type source: str
    :return: The configuration, defaults filled in.
    :rtype: PipelineConfig
    :raises ConfigError: On a malformed line, an unknown key or an invalid value.
    """
    tree: Dict[str, Any] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split('#', 1)[0].strip()
        if not line:
            continue
        key, sep, raw = line.partition('=')
        key = KEY_ALIASES.get(key.strip(), key.strip())
        if not sep or not key or any(not part for part in key.split('.')):
            raise ConfigError(f'{source}:{lineno}: expected "key = value", got {line!r}')
        _insert(tree, key, _parse_value(raw.strip()), f'{source}:{lineno}')

    try:
        return PipelineConfig.model_validate(_merge(PipelineConfig().model_dump(), tree))
    except ValidationError as exc:
        problems = '; '.join(f"{'.'.join(str(p) for p in err['loc']) or '<root>'}: {err['msg']}"
                             for err in exc.errors())
        raise ConfigError(f'{source}: {problems}') from exc


def load_config(path: Optional[PathLike] = None) -> PipelineConfig:
    """
    Reads a config file, or returns the defaults when ``path`` is None.

    :raises ConfigNotFoundError: If the file does not exist.
    :raises ConfigError: If the file content is invalid.
    """
    if path is None:
        return PipelineConfig()
    try:
        text = Path(path).read_text(encoding='utf-8')
    except FileNotFoundError as exc:
        raise ConfigNotFoundError(f'config file not found: {path}') from exc
    except OSError as exc:
        raise IOFailure(f'cannot read config file {path}: {exc}') from exc
    cfg = parse_config(text, source=str(path))
    logger.debug('loaded config from %s', path)
    return cfg


def _flatten(prefix: str, value: Any) -> List[Tuple[str, Any]]:
    if isinstance(value, dict):
        items = []
        for key, child in value.items():
            items.extend(_flatten(f'{prefix}.{key}' if prefix else key, child))
        return items
    return [(prefix, value)]


def _format_value(value: Any) -> str:
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, (list, tuple)):
        return ', '.join(_format_value(v) for v in value)
    return str(value)


def dump_config(cfg: PipelineConfig) -> str:
    """
    Every key of ``cfg`` in the flat format; ``parse_config`` of the result gives back ``cfg``.
    """
    return ''.join(f'{key} = {_format_value(value)}\n' for key, value in _flatten('', cfg.model_dump()))


def save_config(cfg: PipelineConfig, path: PathLike) -> None:
    try:
        Path(path).write_text(dump_config(cfg), encoding='utf-8')
    except OSError as exc:
        raise IOFailure(f'cannot write config file {path}: {exc}') from exc
