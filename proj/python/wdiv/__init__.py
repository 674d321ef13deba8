"""Weighted divisor sums, congruence divisor problems and their moments."""

from ._wdiv import *  # noqa: F401,F403
from ._wdiv import __version__  # noqa: F401
