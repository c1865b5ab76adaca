"""
Engine framework: configurable engine modules with a status life cycle,
and the prioritized strategies that resolver search and goal tactics build on.
"""

import logging
import time
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from datetime import datetime
from enum import Enum
from typing import Any, Dict, List, Optional

from .exceptions import HLProverError


class ModuleStatus(Enum):
    """Status of an engine module"""
    NOT_INITIALIZED = "not_initialized"
    READY = "ready"
    RUNNING = "running"
    ERROR = "error"


@dataclass
class ModuleInfo:
    """Information about an engine module"""
    name: str
    version: str
    description: str
    config_keys: List[str]
    uses: List[str] = field(default_factory=list)
    emits_traces: bool = False


@dataclass
class ExecutionResult:
    """Standard result format for all engine modules"""
    success: bool
    data: Any
    error: Optional[str] = None
    timestamp: datetime = field(default_factory=datetime.now)
    duration: float = 0.0
    metadata: Dict[str, Any] = field(default_factory=dict)


class EngineModule(ABC):
    """Base class for all hl-prover engine modules"""

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        self.config = config or {}
        self.logger = logging.getLogger(self.__class__.__name__)
        self._status = ModuleStatus.NOT_INITIALIZED
        self._initialize()

    @abstractmethod
    def _initialize(self) -> None:
        """Validate the configuration and set ``status``"""
        pass

    @abstractmethod
    def execute(self, input_data: Any) -> ExecutionResult:
        """Run the engine on one input"""
        pass

    @abstractmethod
    def validate(self) -> bool:
        """Validate module configuration"""
        pass

    @abstractmethod
    def get_info(self) -> ModuleInfo:
        pass

    @property
    def status(self) -> ModuleStatus:
        return self._status

    @status.setter
    def status(self, value: ModuleStatus) -> None:
        self.logger.debug(f"Status changed from {self._status} to {value}")
        self._status = value

    def run(self, input_data: Any) -> ExecutionResult:
        """
        Execute with timing.

        A module whose configuration did not validate refuses to run. Domain
        errors raised by execute() become failed results; anything else
        propagates.
        """
        if self._status == ModuleStatus.ERROR:
            return ExecutionResult(
                success=False,
                data=None,
                error=f"{self.__class__.__name__} has an invalid configuration",
                metadata={"error_type": "ModuleError"},
            )
        start = time.perf_counter()
        self.status = ModuleStatus.RUNNING
        try:
            result = self.execute(input_data)
        except HLProverError as e:
            self.logger.warning(f"{type(e).__name__}: {e}")
            result = ExecutionResult(
                success=False,
                data=None,
                error=str(e),
                metadata={"error_type": type(e).__name__},
            )
        finally:
            self.status = ModuleStatus.READY
        result.duration = time.perf_counter() - start
        return result


class Strategy(ABC):
    """Base class for strategies used within modules"""

    @abstractmethod
    def apply(self, *args, **kwargs) -> Any:
        pass

    @property
    @abstractmethod
    def name(self) -> str:
        """Registry name"""
        pass

    @property
    @abstractmethod
    def priority(self) -> int:
        """Strategy priority (lower = tried first)"""
        pass

    def supports(self, target: Any) -> bool:
        return True


class ConfigurableModule(EngineModule):
    """Engine module whose configuration is merged over its defaults"""

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        self._default_config = self._get_default_config()
        config = {**self._default_config, **(config or {})}
        super().__init__(config)

    @abstractmethod
    def _get_default_config(self) -> Dict[str, Any]:
        pass

    @property
    def config_keys(self) -> List[str]:
        return list(self._default_config)

    def update_config(self, updates: Dict[str, Any]) -> None:
        """Apply ``updates`` and re-validate; keys the module does not know are ignored"""
        unknown = sorted(set(updates) - set(self._default_config))
        if unknown:
            self.logger.warning(f"Ignoring unknown settings: {', '.join(unknown)}")
        self.config.update({k: v for k, v in updates.items() if k in self._default_config})
        self.logger.info(f"Configuration updated: {updates}")
        self._initialize()
