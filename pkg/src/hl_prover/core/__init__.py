from .base import (
    EngineModule,
    ModuleStatus,
    ModuleInfo,
    ExecutionResult,
    Strategy,
    ConfigurableModule,
)
from .config import ConfigManager
from .exceptions import (
    HLProverError,
    ConfigurationError,
    ModuleError,
    ParseError,
    RedeclarationError,
    UnknownSymbolError,
    SortMismatchError,
    HierarchyError,
    ReassocError,
    ResolutionError,
    RewriteError,
    FuelExhaustedError,
    UnsupportedSymbolError,
    ExponentLimitError,
    NonLiteralError,
    VariableLimitError,
    NonIntegralError,
    UndecidableError,
    TraceError,
)

__all__ = [
    # Base classes
    "EngineModule",
    "ModuleStatus",
    "ModuleInfo",
    "ExecutionResult",
    "Strategy",
    "ConfigurableModule",

    # Configuration
    "ConfigManager",

    # Exceptions
    "HLProverError",
    "ConfigurationError",
    "ModuleError",
    "ParseError",
    "RedeclarationError",
    "UnknownSymbolError",
    "SortMismatchError",
    "HierarchyError",
    "ReassocError",
    "ResolutionError",
    "RewriteError",
    "FuelExhaustedError",
    "UnsupportedSymbolError",
    "ExponentLimitError",
    "NonLiteralError",
    "VariableLimitError",
    "NonIntegralError",
    "UndecidableError",
    "TraceError",
]
