"""Edgeworth expansion engine for Ito integral discretization error."""

from ._edgeworth import *  # noqa: F401,F403
from ._edgeworth import __doc__  # noqa: F401
