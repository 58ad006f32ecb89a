"""Waiting-time laws for non-homogeneous Poisson processes, with a C++ core."""

from ._core import *  # noqa: F401,F403
from ._core import IntensityModel, InputError

__all__ = [name for name in dir() if not name.startswith("_")]
