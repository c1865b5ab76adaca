"""
hl-prover - type-class resolution and proof automation over a small
algebraic hierarchy language
"""

__version__ = "0.1.0"
__author__ = "hl-prover Contributors"

from .core import ConfigManager, EngineModule, ExecutionResult, ModuleInfo

_modules = {}

try:
    from .resolver import Resolver
    _modules["resolver"] = Resolver
except ImportError:
    pass

try:
    from .rewriter import Simplifier
    _modules["simplifier"] = Simplifier
except ImportError:
    pass

try:
    from .arith import RingNormalizer
    _modules["ring"] = RingNormalizer
except ImportError:
    pass

try:
    from .linarith import Linarith
    _modules["linarith"] = Linarith
except ImportError:
    pass

try:
    from .decide import Decider
    _modules["decide"] = Decider
except ImportError:
    pass


def get_available_modules():
    """Get list of available engine modules"""
    return list(_modules.keys())


CONFIG_SECTIONS = {
    "resolver": "resolver",
    "simplifier": "simp",
    "ring": "ring",
    "linarith": "linarith",
    "decide": "decide",
}


def load_module(module_name: str, config=None):
    """
    Instantiate an engine module by name.

    ``config`` is the module's settings dict, or a ConfigManager whose
    section for the module is used.
    """
    if module_name not in _modules:
        raise ImportError(f"Module '{module_name}' not available")
    if isinstance(config, ConfigManager):
        config = config.get_module_config(CONFIG_SECTIONS[module_name])
    return _modules[module_name](config)


__all__ = [
    "EngineModule",
    "ModuleInfo",
    "ExecutionResult",
    "ConfigManager",
    "get_available_modules",
    "load_module",
]
