"""Igusa-Todorov phi/psi, syzygies of modules and 3-periodic complexes."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401
