"""Least fixpoints of step-indexed functionals, and a while-language built on them."""

from ._report import CheckReport
from .fixpoint import Converged, Exhausted, eval_fuel, eval_lfp
from .imp import MachineState, execute, parse, pretty_print, run_fuel
from .order import BOTTOM, Defined

__all__ = [
    "BOTTOM",
    "CheckReport",
    "Converged",
    "Defined",
    "Exhausted",
    "MachineState",
    "eval_fuel",
    "eval_lfp",
    "execute",
    "parse",
    "pretty_print",
    "run_fuel",
]
