"""
retinoblob: exudate and haemorrhage detection in colour fundus images.
"""
__version__ = "0.1.0"

from .detector import Detector
from .config_file import load_config, parse_config, dump_config, save_config
from .synthesis import synthesize_fundus
from . import models
