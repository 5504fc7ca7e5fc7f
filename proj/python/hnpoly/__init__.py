"""Exact rational polygon calculus for Newton, Hodge and Harder-Narasimhan
invariants of p-divisible groups with EL/PEL structure."""

from ._hnpoly import *  # noqa: F401,F403
from ._hnpoly import __doc__ as _core_doc  # noqa: F401

__version__ = "0.1.0"
