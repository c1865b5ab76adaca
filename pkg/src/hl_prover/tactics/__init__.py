"""
Goal tactics, tried in priority order (lower first) when a goal names none
"""

from typing import Dict, List, Type

from .arithmetic import AbelTactic, LinarithTactic, NormNumTactic, RingTactic
from .base import Tactic, TacticContext, TacticResult, is_reflexive
from .rewriting import DsimpTactic, NormCastTactic, RewritingTactic, SimpTactic
from .search import DecTrivialTactic, ResolveTactic


def get_default_tactics() -> Dict[str, Type[Tactic]]:
    """Get available goal tactics"""
    return {
        "resolve": ResolveTactic,
        "dec_trivial": DecTrivialTactic,
        "dsimp": DsimpTactic,
        "norm_num": NormNumTactic,
        "simp": SimpTactic,
        "norm_cast": NormCastTactic,
        "ring": RingTactic,
        "abel": AbelTactic,
        "linarith": LinarithTactic,
    }


def tactics_for(goal) -> List[Tactic]:
    """Instances of every tactic that applies to ``goal``, by priority"""
    tactics = [cls() for cls in get_default_tactics().values()]
    return sorted((t for t in tactics if t.supports(goal)), key=lambda t: t.priority)


__all__ = [
    "Tactic",
    "TacticContext",
    "TacticResult",
    "RewritingTactic",
    "ResolveTactic",
    "DecTrivialTactic",
    "DsimpTactic",
    "NormNumTactic",
    "SimpTactic",
    "NormCastTactic",
    "RingTactic",
    "AbelTactic",
    "LinarithTactic",
    "get_default_tactics",
    "tactics_for",
    "is_reflexive",
]
