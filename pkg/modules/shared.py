import os
from typing import *

from lib.mediatrix.config import MediatrixConfig
from lib.mediatrix.errors import UsageError

ROOT_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
CONFIGS_DIR = os.path.join(ROOT_DIR, "configs")
DEFAULT_CONFIG_PATH = os.path.join(CONFIGS_DIR, "default.json")

EXACT_CAP_ENV = "MEDIATRIX_EXACT_CAP"


def load_config(path: Optional[str] = None) -> MediatrixConfig:
    path = path or DEFAULT_CONFIG_PATH
    try:
        config = MediatrixConfig.parse_file(path)
    except OSError as e:
        raise UsageError(f"cannot read config {path}: {e}")
    except ValueError as e:
        raise UsageError(f"invalid config {path}: {e}")

    cap = os.environ.get(EXACT_CAP_ENV, "")
    if cap != "":
        try:
            config.exact.max_n = int(cap)
        except ValueError:
            raise UsageError(f"{EXACT_CAP_ENV} must be an integer, got {cap!r}")
    return config
