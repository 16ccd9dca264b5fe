"""Frequency-converted photon-pair correlation and interference simulator."""

from ._biphoton import *  # noqa: F401,F403
from ._biphoton import closed  # noqa: F401
