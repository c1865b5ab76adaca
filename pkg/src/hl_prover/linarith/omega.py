"""Integer bound tightening (the real shadow of the omega test, nothing more)"""

import logging
import math
from fractions import Fraction
from functools import reduce

from ..core.exceptions import NonIntegralError
from .system import EQ, LE, Constraint, LinearSystem

logger = logging.getLogger(__name__)


def _ceil(value: Fraction) -> int:
    return -((-value.numerator) // value.denominator)


def _floor(value: Fraction) -> int:
    return value.numerator // value.denominator


def tighten(constraint: Constraint) -> Constraint:
    """
    Same integer solutions, coprime coefficients, non-strict or equality.

    ``Σ a·x + c REL 0`` with ``g = gcd(a)`` becomes ``Σ (a/g)·x ≤ t`` where
    ``t`` is ``-c/g`` rounded down (``≤``) or ``ceil(-c/g) - 1`` (``<``).
    """
    if not constraint.coeffs:
        return constraint
    for var, c in constraint.coeffs:
        if c.denominator != 1:
            raise NonIntegralError(f"coefficient {c} of x{var} is not an integer")
    g = reduce(math.gcd, (abs(c.numerator) for _, c in constraint.coeffs))
    coeffs = {v: c / g for v, c in constraint.coeffs}
    bound = -constraint.constant / g
    if constraint.rel == EQ:
        if bound.denominator != 1:
            logger.debug(f"{constraint.render()} has no integer solutions")
            return Constraint.of({}, 1, EQ)
        return Constraint.of(coeffs, -bound, EQ)
    limit = _floor(bound) if constraint.rel == LE else _ceil(bound) - 1
    return Constraint.of(coeffs, -limit, LE)


def int_tighten(system: LinearSystem) -> LinearSystem:
    return system.with_constraints(tighten(c) for c in system.constraints)

