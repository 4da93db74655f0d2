"""Spectral tools for planar Pauli operators with radial magnetic fields."""

from ._radpauli import *  # noqa: F401,F403
from ._radpauli import specfun  # noqa: F401

UPPER = +1
LOWER = -1
