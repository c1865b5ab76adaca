"""
Rewriting: simp and dsimp over attribute-selected rule sets, norm_cast, and
rule orientation checks.
"""

from .norm_cast import CAST_NUMERAL, NUMERAL_CAST, norm_cast
from .rules import DEFAULT_SIMPSET, OrientResult, loop_risk, orient_check, select_rules, usable_rules
from .simp import DEFAULT_FUEL, dsimp, resolver_discharger, simp
from .simplifier import Simplifier

__all__ = [
    "Simplifier",
    "simp",
    "dsimp",
    "norm_cast",
    "orient_check",
    "OrientResult",
    "loop_risk",
    "select_rules",
    "usable_rules",
    "resolver_discharger",
    "DEFAULT_FUEL",
    "DEFAULT_SIMPSET",
    "CAST_NUMERAL",
    "NUMERAL_CAST",
]
