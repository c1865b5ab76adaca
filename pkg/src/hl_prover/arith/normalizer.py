from typing import Any, Dict, Optional

from ..core import ConfigurableModule, ExecutionResult, ModuleInfo, ModuleStatus
from ..core.exceptions import HLProverError
from ..hierarchy import Env
from ..syntax import Rel, Term, parse_sort, parse_term
from .abel import AbelEngine
from .norm_num import norm_num_eval, norm_num_prove
from .ring import EXPONENT_LIMIT, RingEngine

MODES = ("ring", "abel", "norm_num")


class RingNormalizer(ConfigurableModule):
    """
    Normal forms for arithmetic: ring, abel and norm_num.

    Given a term, ``execute`` returns its canonical form; given an equation
    (or, for norm_num, any of = < ≤ ≠) it returns the proof trace, or a
    failure carrying the two differing normal forms.

    Example:
        normalizer = RingNormalizer({"exponent_limit": 1024})
        result = normalizer.execute({"term": "(a + b)^2", "env": env, "mode": "ring"})
    """

    def _initialize(self) -> None:
        self.logger.info("Initializing RingNormalizer")
        self.status = ModuleStatus.READY if self.validate() else ModuleStatus.ERROR

    def _get_default_config(self) -> Dict[str, Any]:
        return {
            "exponent_limit": EXPONENT_LIMIT,
            "semiring": False,
            "sort": "int",
        }

    def validate(self) -> bool:
        if int(self.config.get("exponent_limit", 0)) < 1:
            self.logger.error("exponent_limit must be positive")
            return False
        return True

    def ring(self, env: Optional[Env] = None) -> RingEngine:
        return RingEngine(env, int(self.config["exponent_limit"]), bool(self.config.get("semiring")))

    def abel(self, env: Optional[Env] = None) -> AbelEngine:
        return AbelEngine(env)

    def _parse(self, source, env: Optional[Env]) -> Term:
        if not isinstance(source, str):
            return source
        return parse_term(source, env, sort=parse_sort(self.config.get("sort", "int"), env))

    def execute(self, input_data: Any) -> ExecutionResult:
        if not isinstance(input_data, dict) or "term" not in input_data:
            return ExecutionResult(success=False, data=None, error="Input must be a dictionary with 'term'")
        mode = input_data.get("mode", "ring")
        if mode not in MODES:
            return ExecutionResult(success=False, data=None, error=f"Unknown mode: {mode}")
        env = input_data.get("env")
        try:
            term = self._parse(input_data["term"], env)
            if isinstance(term, Rel):
                return self._prove(mode, term, env)
            if mode == "norm_num":
                value, facts = norm_num_eval(term, int(self.config["exponent_limit"]))
                return ExecutionResult(success=True, data=value, metadata={"facts": len(facts.steps)})
            normalizer = self.ring(env) if mode == "ring" else self.abel(env)
            canonical, form, trace = normalizer.normalize(term)
        except HLProverError as e:
            return ExecutionResult(success=False, data=None, error=str(e))
        return ExecutionResult(success=True, data=canonical, metadata={"form": form, "trace": trace})

    def _prove(self, mode: str, relation: Rel, env: Optional[Env]) -> ExecutionResult:
        if mode == "norm_num":
            outcome = norm_num_prove(relation, int(self.config["exponent_limit"]))
        elif mode == "ring":
            outcome = self.ring(env).prove_eq(relation)
        else:
            outcome = self.abel(env).prove_eq(relation)
        if hasattr(outcome, "steps"):
            return ExecutionResult(success=True, data=outcome, metadata={"steps": len(outcome.steps)})
        return ExecutionResult(success=False, data=outcome, error=str(outcome))

    def get_info(self) -> ModuleInfo:
        return ModuleInfo(
            name="RingNormalizer",
            version="0.1.0",
            description="Ring and abelian-group normal forms and literal arithmetic",
            config_keys=self.config_keys,
            emits_traces=True,
        )
