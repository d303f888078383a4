"""Vector-field feedback planning on triangulated free space."""
import os
from pathlib import Path

_data = Path(__file__).resolve().parent / "data"
if _data.is_dir():
    os.environ.setdefault("CURVAFIELD_DATA", str(_data))

from ._core import *  # noqa: E402,F401,F403
from ._core import CurvafieldError, Method, Outcome  # noqa: E402,F401

__version__ = "0.1.0"
