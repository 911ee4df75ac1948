"""Structured L-BFGS with diagonal seed scaling."""

from ._rose import *  # noqa: F401,F403
from ._rose import __doc__  # noqa: F401

__version__ = "0.1.0"
