"""Which algebraic structure a carrier sort has, asked of the instance graph"""

import logging
from typing import Optional, Sequence

from ..core.exceptions import ResolutionError
from ..hierarchy import Env
from ..resolver import Query, SearchConfig, resolve_backward
from ..syntax import INT, NAT, RAT, REAL, ClassAtom, Sort, format_sort

logger = logging.getLogger(__name__)

RING = "ring"
SEMIRING = "semiring"

NUMBER_MODES = {NAT: SEMIRING, INT: RING, RAT: RING, REAL: RING}

CAPABILITY_DEPTH = 8


def has_class(env: Optional[Env], cls: str, sort: Sort) -> bool:
    if env is None or cls not in env.symbols.classes:
        return False
    query = Query(ClassAtom(cls, (sort,)), SearchConfig(max_depth=CAPABILITY_DEPTH))
    result = resolve_backward(query, env)
    logger.debug(f"{cls}({format_sort(sort)}): {result.metrics.outcome.value}")
    return result.success


def carrier_mode(sort: Sort, env: Optional[Env], ring_classes: Sequence[str], semiring_classes: Sequence[str]) -> str:
    """RING or SEMIRING; numeric prelude sorts are answered without a query"""
    if sort in NUMBER_MODES:
        return NUMBER_MODES[sort]
    if any(has_class(env, cls, sort) for cls in ring_classes):
        return RING
    if any(has_class(env, cls, sort) for cls in semiring_classes):
        return SEMIRING
    wanted = " or ".join(f"{cls}({format_sort(sort)})" for cls in (*ring_classes, *semiring_classes))
    raise ResolutionError(f"no instance of {wanted}")
