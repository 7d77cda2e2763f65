"""Klyachko filtrations, equivariant Chern classes and framed moduli of toric vector bundles."""

from ._torvec import *  # noqa: F401,F403
from ._torvec import (  # noqa: F401
    BudgetExceeded,
    InputError,
    MathError,
)

__version__ = "0.1.0"
