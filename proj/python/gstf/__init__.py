"""Short-time Fourier transforms and Gelfand-Shilov envelope classification."""

from ._core import *  # noqa: F401,F403
from ._core import GstfError, __doc__  # noqa: F401

__version__ = "0.1.0"
