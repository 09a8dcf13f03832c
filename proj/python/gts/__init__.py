"""Generating-cycle analysis for the cubic Hamiltonian family."""

from ._gts import *  # noqa: F401,F403
from ._gts import __doc__ as _doc

__doc__ = _doc
