from .checker import CheckResult, check_derivation
from .query import Derivation, Outcome, Query, ResolutionResult, SearchConfig, SearchMetrics
from .resolver import Resolver, resolve, resolve_backward, resolve_bidir
from .strategies import get_default_strategies

__all__ = [
    "Resolver",
    "Query",
    "SearchConfig",
    "Derivation",
    "SearchMetrics",
    "Outcome",
    "ResolutionResult",
    "resolve",
    "resolve_backward",
    "resolve_bidir",
    "check_derivation",
    "CheckResult",
    "get_default_strategies",
]
