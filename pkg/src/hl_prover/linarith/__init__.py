"""
Linear arithmetic: constraint systems, Fourier-Motzkin elimination with
certificates, integer bound tightening and the linarith goal procedure.
"""

from .fourier_motzkin import VAR_LIMIT, Certificate, Feasible, Infeasible, check_cert, combine, fm_decide
from .linarith import (
    LinarithEvidence,
    Unknown,
    build_systems,
    linarith_constraints,
    linarith_goal,
    linarith_system,
)
from .omega import int_tighten, tighten
from .solver import Linarith
from .system import EQ, LE, LT, Constraint, LinearSystem

__all__ = [
    "Linarith",
    "LinearSystem",
    "Constraint",
    "Certificate",
    "Feasible",
    "Infeasible",
    "LinarithEvidence",
    "Unknown",
    "fm_decide",
    "check_cert",
    "combine",
    "int_tighten",
    "tighten",
    "linarith_goal",
    "linarith_constraints",
    "linarith_system",
    "build_systems",
    "VAR_LIMIT",
    "LT",
    "LE",
    "EQ",
]
