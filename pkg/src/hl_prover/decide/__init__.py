"""Decidable propositions: evaluation, evidence and replay."""

from .decide import NONCOMPUTABLE, UNBOUNDED, Refuted, as_prop, check_decidable, decide, decide_goal, ite_eval
from .decider import Decider
from .evidence import Evidence, replay

__all__ = [
    "Decider",
    "decide",
    "decide_goal",
    "ite_eval",
    "check_decidable",
    "as_prop",
    "replay",
    "Evidence",
    "Refuted",
    "UNBOUNDED",
    "NONCOMPUTABLE",
]
