"""Squeezing gain of photon-subtracted squeezed vacuum."""

from ._sqgain import *  # noqa: F401,F403
from ._sqgain import __version__  # noqa: F401
