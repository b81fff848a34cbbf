"""Exact discriminants, resultants and eliminations, plus numeric cone-membership scans."""

from .constraints import ConstraintSet
from .errors import BudgetExceeded, DisclabError
from .poly import NEG_INF, Polynomial, VarSet, evaluate, parse, to_string

__version__ = "0.1.0"

__all__ = ["BudgetExceeded", "ConstraintSet", "DisclabError", "NEG_INF", "Polynomial", "VarSet",
           "evaluate", "parse", "to_string", "__version__"]
