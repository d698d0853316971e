"""Combinators for finite observables and instruments, with a randomized
theorem harness. Labels are strings; pair labels read "(x,y)"."""

from ._qop import *  # noqa: F401,F403
from ._qop import QopError

__all__ = [name for name in dir() if not name.startswith("_")]
