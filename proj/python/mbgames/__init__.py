"""Maker-Breaker games on random uniform hypergraphs.

Python bindings over the C++ core: board construction and analysis,
reproducible H_{n,s,p} sampling, the exact game solver, constructive
strategies with an arena, the max-flow shrunken-system extraction, and the
Monte Carlo threshold lab.
"""

from mbgames._core import *  # noqa: F401,F403
from mbgames._core import __doc__ as _core_doc

__all__ = [name for name in dir() if not name.startswith("_")]
__doc__ = _core_doc or __doc__
