from typing import Any, Dict

from ..core import ConfigurableModule, ExecutionResult, ModuleInfo, ModuleStatus
from ..core.exceptions import HLProverError, UndecidableError
from ..arith.ring import EXPONENT_LIMIT
from ..syntax import parse_statement
from .decide import decide, ite_eval


class Decider(ConfigurableModule):
    """
    Evaluates decidable propositions.

    Input is a proposition (string or parsed), optionally with ``then`` and
    ``else`` terms to select between.

    Example:
        decider = Decider()
        result = decider.execute({"prop": "forall x < 3, x * x < 9"})
    """

    def _initialize(self) -> None:
        self.logger.info("Initializing Decider")
        self.status = ModuleStatus.READY if self.validate() else ModuleStatus.ERROR

    def _get_default_config(self) -> Dict[str, Any]:
        return {
            "exponent_limit": EXPONENT_LIMIT,
        }

    def validate(self) -> bool:
        if int(self.config.get("exponent_limit", 0)) < 1:
            self.logger.error("exponent_limit must be positive")
            return False
        return True

    def execute(self, input_data: Any) -> ExecutionResult:
        if not isinstance(input_data, dict) or "prop" not in input_data:
            return ExecutionResult(success=False, data=None, error="Input must be a dictionary with 'prop'")
        prop = input_data["prop"]
        try:
            if isinstance(prop, str):
                prop, _ = parse_statement(prop, input_data.get("env"))
            if "then" in input_data and "else" in input_data:
                return ExecutionResult(success=True, data=ite_eval(prop, input_data["then"], input_data["else"]))
            value, evidence = decide(prop, int(self.config["exponent_limit"]))
        except UndecidableError as e:
            return ExecutionResult(success=False, data=None, error=str(e), metadata={"reason": e.reason})
        except HLProverError as e:
            return ExecutionResult(success=False, data=None, error=str(e))
        return ExecutionResult(success=True, data=value, metadata={"evidence": evidence, "nodes": evidence.size()})

    def get_info(self) -> ModuleInfo:
        return ModuleInfo(
            name="Decider",
            version="0.1.0",
            description="Evaluation of decidable propositions with bounded quantifiers",
            config_keys=self.config_keys,
            emits_traces=True,
        )
