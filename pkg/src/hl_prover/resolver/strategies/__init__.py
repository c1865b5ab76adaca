"""
Instance search strategies
"""

from .backward import BackwardStrategy
from .base import ResolutionStrategy
from .bidir import BidirectionalStrategy


def get_default_strategies():
    """Get available resolution strategies"""
    return {
        "backward": BackwardStrategy,
        "bidir": BidirectionalStrategy,
    }


__all__ = [
    "ResolutionStrategy",
    "BackwardStrategy",
    "BidirectionalStrategy",
    "get_default_strategies",
]
