from abc import abstractmethod
from typing import Any

from ...core.base import Strategy
from ...hierarchy import Env
from ..query import Query, ResolutionResult


class ResolutionStrategy(Strategy):
    """Base class for instance-search strategies"""

    @abstractmethod
    def search(self, query: Query, env: Env) -> ResolutionResult:
        """
        Search for a derivation of ``query.atom``.

        Args:
            query: Ground class atom plus search limits
            env: Sealed environment

        Returns:
            Derivation (or None) with the search metrics
        """
        pass

    def apply(self, query: Query, env: Env, *args: Any, **kwargs: Any) -> ResolutionResult:
        return self.search(query, env)

    def supports(self, env: Env) -> bool:
        """Check if this strategy can search the environment"""
        return True
