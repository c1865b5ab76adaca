from typing import Any, Dict, List, Optional

from ..core import ConfigurableModule, ExecutionResult, ModuleInfo, ModuleStatus
from ..core.exceptions import HLProverError
from ..hierarchy import Env
from ..syntax import Rel, parse_sort, parse_term
from .fourier_motzkin import VAR_LIMIT, Infeasible, fm_decide
from .linarith import Unknown, linarith_goal
from .system import LinearSystem


class Linarith(ConfigurableModule):
    """
    Linear arithmetic over ordered fields, with integer tightening on nat and int.

    ``execute`` accepts either a goal with hypotheses (strings or relations)
    or a ready ``LinearSystem`` to decide.

    Example:
        linarith = Linarith({"var_limit": 8})
        result = linarith.execute({"goal": "a <= c", "hyps": ["a <= b", "b <= c"]})
    """

    def _initialize(self) -> None:
        self.logger.info("Initializing Linarith")
        self.status = ModuleStatus.READY if self.validate() else ModuleStatus.ERROR

    def _get_default_config(self) -> Dict[str, Any]:
        return {
            "var_limit": VAR_LIMIT,
            "sort": "rat",
        }

    def validate(self) -> bool:
        if int(self.config.get("var_limit", 0)) < 1:
            self.logger.error("var_limit must be positive")
            return False
        return True

    def _relation(self, source, env: Optional[Env], sort: str) -> Rel:
        if not isinstance(source, str):
            return source
        relation = parse_term(source, env, sort=parse_sort(sort, env))
        if not isinstance(relation, Rel):
            raise HLProverError(f"'{source}' is not a relation")
        return relation

    def prove(self, goal, hyps: Optional[List[Any]] = None, env: Optional[Env] = None, sort: Optional[str] = None):
        sort = sort or self.config.get("sort", "rat")
        hypotheses = [self._relation(h, env, sort) for h in hyps or []]
        return linarith_goal(hypotheses, self._relation(goal, env, sort), env, int(self.config["var_limit"]))

    def execute(self, input_data: Any) -> ExecutionResult:
        if not isinstance(input_data, dict) or not ("goal" in input_data or "system" in input_data):
            return ExecutionResult(
                success=False,
                data=None,
                error="Input must be a dictionary with 'goal' or 'system'",
            )
        try:
            if "system" in input_data:
                return self._decide(input_data["system"])
            outcome = self.prove(input_data["goal"], input_data.get("hyps"), input_data.get("env"), input_data.get("sort"))
        except HLProverError as e:
            return ExecutionResult(success=False, data=None, error=str(e))
        if isinstance(outcome, Unknown):
            return ExecutionResult(success=False, data=outcome, error=str(outcome), metadata={"witness": outcome.witness})
        return ExecutionResult(
            success=True,
            data=outcome,
            metadata={"certificates": [c.to_dict() for c in outcome.evidence.certificates]},
        )

    def _decide(self, system: LinearSystem) -> ExecutionResult:
        result = fm_decide(system, var_limit=int(self.config["var_limit"]))
        if isinstance(result, Infeasible):
            return ExecutionResult(success=True, data=result, metadata={"feasible": False})
        return ExecutionResult(success=True, data=result, metadata={"feasible": True, "witness": result.witness})

    def get_info(self) -> ModuleInfo:
        return ModuleInfo(
            name="Linarith",
            version="0.1.0",
            description="Fourier-Motzkin elimination with certificates and integer bound tightening",
            config_keys=self.config_keys,
            uses=["RingNormalizer"],
            emits_traces=True,
        )
