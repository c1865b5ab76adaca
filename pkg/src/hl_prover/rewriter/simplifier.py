from typing import Any, Dict, Optional, Sequence, Tuple

from ..core import ConfigurableModule, ExecutionResult, ModuleInfo, ModuleStatus
from ..core.exceptions import FuelExhaustedError, RewriteError
from ..hierarchy import Env
from ..prooftrace import RewriteTrace
from ..resolver import Resolver
from ..syntax import Rel, RewriteRule, RuleKind, Term, parse_term
from .norm_cast import norm_cast
from .rules import select_rules
from .simp import simp

MODES = ("simp", "dsimp", "norm_cast")


class Simplifier(ConfigurableModule):
    """
    Rewriting engine: simp, dsimp and norm_cast behind one configuration.

    Example:
        simplifier = Simplifier({"fuel": 500})
        term, trace = simplifier.simp("(a * 1) * 1", env)
    """

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        self.resolver: Optional[Resolver] = None
        super().__init__(config)

    def _initialize(self) -> None:
        self.logger.info("Initializing Simplifier")
        try:
            self.resolver = Resolver({"condition_depth": self.config["condition_depth"]})
            self.status = ModuleStatus.READY if self.validate() else ModuleStatus.ERROR
        except Exception as e:
            self.logger.error(f"Failed to initialize: {e}")
            self.status = ModuleStatus.ERROR

    def _get_default_config(self) -> Dict[str, Any]:
        return {
            "fuel": 10000,
            "simpset": "default",
            "condition_depth": 8,
        }

    def validate(self) -> bool:
        if int(self.config.get("fuel", 0)) <= 0:
            self.logger.error("fuel must be positive")
            return False
        return True

    def _term(self, term, env: Env) -> Term:
        return parse_term(term, env) if isinstance(term, str) else term

    def simp(
        self,
        term,
        env: Env,
        rules: Optional[Sequence[RewriteRule]] = None,
        fuel: Optional[int] = None,
    ) -> Tuple[Term, RewriteTrace]:
        if rules is None:
            rules = select_rules(env, self.config.get("simpset"))
        return simp(
            self._term(term, env),
            rules,
            env,
            fuel or self.config["fuel"],
            discharge=lambda atom: self.resolver.discharge(atom, env),
        )

    def dsimp(self, term, env: Env, fuel: Optional[int] = None) -> Term:
        result, _ = self.simp(term, env, env.rules_of_kind(RuleKind.DEF), fuel)
        return result

    def norm_cast(self, formula, env: Env, fuel: Optional[int] = None) -> Tuple[Rel, RewriteTrace]:
        return norm_cast(self._term(formula, env), env, fuel or self.config["fuel"])

    def execute(self, input_data: Any) -> ExecutionResult:
        if not isinstance(input_data, dict) or "term" not in input_data or "env" not in input_data:
            return ExecutionResult(
                success=False,
                data=None,
                error="Input must be a dictionary with 'term' and 'env'",
            )
        mode = input_data.get("mode", "simp")
        if mode not in MODES:
            return ExecutionResult(success=False, data=None, error=f"Unknown mode: {mode}")
        env = input_data["env"]
        fuel = input_data.get("fuel")
        try:
            if mode == "dsimp":
                return ExecutionResult(success=True, data=self.dsimp(input_data["term"], env, fuel))
            if mode == "norm_cast":
                result, trace = self.norm_cast(input_data["term"], env, fuel)
            else:
                result, trace = self.simp(input_data["term"], env, fuel=fuel)
        except FuelExhaustedError as e:
            return ExecutionResult(
                success=False,
                data=e.trace,
                error=str(e),
                metadata={"looping_rules": e.looping_rules},
            )
        except RewriteError as e:
            return ExecutionResult(success=False, data=None, error=str(e))
        return ExecutionResult(
            success=True,
            data=result,
            metadata={"trace": trace, "rules_used": trace.rules_used(), "steps": len(trace.steps)},
        )

    def get_info(self) -> ModuleInfo:
        return ModuleInfo(
            name="Simplifier",
            version="0.1.0",
            description="Directional rewriting (simp, dsimp) and coercion normalization (norm_cast)",
            config_keys=self.config_keys,
            uses=["Resolver"],
            emits_traces=True,
        )
