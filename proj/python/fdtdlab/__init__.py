"""Numerical-dispersion laboratory for explicit FDTD schemes.

The compiled core exposes the dispersion-relation solver, angle scans, the
optimal-time-step search, spectral peak extraction and the scripted
validation experiments (1-D pulse propagation, 2-D/3-D cavity resonances).
"""

from fdtdlab._core import *  # noqa: F401,F403
from fdtdlab._core import __doc__ as _core_doc  # noqa: F401

__version__ = "0.1.0"
