"""Numerical experiments on moments of zeta sums."""

from ._zetalab import *  # noqa: F401,F403
from ._zetalab import __version__  # noqa: F401
