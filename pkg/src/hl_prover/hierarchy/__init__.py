from .derive import PiInstance, pi_instance, pointwise_rules, reassoc, register_pi_instance
from .env import Env, EnvBuilder, empty_env, load_env, load_env_file
from .graph import (
    CycleReport,
    Diamond,
    HierarchyStats,
    check_acyclic,
    diamond_report,
    instance_graph,
    reachable_classes,
    stats,
)
from .shapes import SHAPES, GeneratedShape, chain, diamond_ladder, generate

__all__ = [
    "Env",
    "EnvBuilder",
    "load_env",
    "load_env_file",
    "empty_env",
    "CycleReport",
    "Diamond",
    "HierarchyStats",
    "check_acyclic",
    "diamond_report",
    "instance_graph",
    "reachable_classes",
    "stats",
    "PiInstance",
    "pi_instance",
    "pointwise_rules",
    "register_pi_instance",
    "reassoc",
    "SHAPES",
    "GeneratedShape",
    "chain",
    "diamond_ladder",
    "generate",
]
