from typing import Any, Dict, Optional, Union

from ..core import ConfigurableModule, ExecutionResult, ModuleInfo, ModuleStatus
from ..core.exceptions import ResolutionError
from ..hierarchy import Env
from ..syntax import ClassAtom, parse_class_atom
from .checker import check_derivation
from .query import STRATEGIES, Query, ResolutionResult, SearchConfig
from .strategies import BackwardStrategy, BidirectionalStrategy, get_default_strategies


def resolve_backward(query: Query, env: Env) -> ResolutionResult:
    return BackwardStrategy().search(query, env)


def resolve_bidir(query: Query, env: Env) -> ResolutionResult:
    return BidirectionalStrategy().search(query, env)


def resolve(query: Query, env: Env) -> ResolutionResult:
    """Run the strategy named by ``query.config.strategy``"""
    strategy_class = get_default_strategies()[query.config.strategy]
    return strategy_class().search(query, env)


class Resolver(ConfigurableModule):
    """
    Answers class queries against a sealed environment.

    Example:
        resolver = Resolver({"strategy": "bidir"})
        result = resolver.resolve("monoid(Z)", env)
        if result.success:
            print("\\n".join(result.derivation.render()))
    """

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        self.strategies = {}
        super().__init__(config)

    def _initialize(self) -> None:
        self.logger.info("Initializing Resolver")
        try:
            self.strategies = {name: cls() for name, cls in get_default_strategies().items()}
            self.status = ModuleStatus.READY if self.validate() else ModuleStatus.ERROR
        except Exception as e:
            self.logger.error(f"Failed to initialize: {e}")
            self.status = ModuleStatus.ERROR

    def _get_default_config(self) -> Dict[str, Any]:
        return {
            "max_depth": 32,
            "strategy": "backward",
            "cache": True,
            "condition_depth": 8,
            "max_atoms": 100000,
        }

    def validate(self) -> bool:
        if self.config.get("strategy") not in STRATEGIES:
            self.logger.error(f"Unknown strategy: {self.config.get('strategy')}")
            return False
        if int(self.config.get("max_depth", 0)) < 1:
            self.logger.error("max_depth must be at least 1")
            return False
        return True

    def search_config(self, **overrides: Any) -> SearchConfig:
        merged = {**self.config, **{k: v for k, v in overrides.items() if v is not None}}
        return SearchConfig.from_dict(merged)

    def resolve(self, atom: Union[str, ClassAtom], env: Env, **overrides: Any) -> ResolutionResult:
        """
        Resolve a class atom.

        Args:
            atom: Ground class atom, or its source text
            env: Sealed environment
            **overrides: max_depth, strategy, cache or max_atoms for this query

        Returns:
            ResolutionResult with the derivation (or None) and metrics
        """
        if isinstance(atom, str):
            atom = parse_class_atom(atom, env)
        query = Query(atom, self.search_config(**overrides))
        result = self.strategies[query.config.strategy].search(query, env)
        self.logger.info(
            f"{atom}: {result.metrics.outcome.value} via {query.config.strategy} "
            f"({result.metrics.nodes_expanded} nodes)"
        )
        return result

    def discharge(self, atom: ClassAtom, env: Env) -> bool:
        """Side-condition check used by conditional rewriting"""
        if not atom.is_ground:
            return False
        result = self.resolve(atom, env, strategy="backward", max_depth=self.config["condition_depth"])
        return result.success

    def execute(self, input_data: Any) -> ExecutionResult:
        if not isinstance(input_data, dict) or "atom" not in input_data or "env" not in input_data:
            return ExecutionResult(
                success=False,
                data=None,
                error="Input must be a dictionary with 'atom' and 'env'",
            )
        overrides = {k: input_data.get(k) for k in ("max_depth", "strategy", "cache")}
        try:
            result = self.resolve(input_data["atom"], input_data["env"], **overrides)
        except ResolutionError as e:
            return ExecutionResult(success=False, data=None, error=str(e))
        checked = None
        if result.derivation is not None:
            atom = input_data["atom"]
            if isinstance(atom, str):
                atom = parse_class_atom(atom, input_data["env"])
            checked = bool(check_derivation(result.derivation, atom, input_data["env"]))
        return ExecutionResult(
            success=result.success,
            data=result.derivation,
            error=None if result.success else result.metrics.outcome.value,
            metadata={"metrics": result.metrics.model_dump(mode="json"), "checked": checked},
        )

    def get_info(self) -> ModuleInfo:
        return ModuleInfo(
            name="Resolver",
            version="0.1.0",
            description="Type-class instance resolution by backward or bidirectional search",
            config_keys=self.config_keys,
            emits_traces=True,
        )
