from pathlib import Path
from typing import Union

from ..hierarchy import Env, check_acyclic, diamond_report, load_env_file, stats
from .reports import StatsReport


def env_stats(env: Env, file: str = "<input>") -> StatsReport:
    """Hierarchy statistics plus declaration counts"""
    summary = stats(env)
    cycles = check_acyclic(env)
    return StatsReport(
        file=file,
        **summary.model_dump(),
        acyclic=cycles.acyclic,
        cycles=cycles.cycles,
        diamonds=[d.model_dump() for d in diamond_report(env)] if cycles.acyclic else [],
        rewrite_rules=len(env.rewrite_rules),
        lemmas=len(env.lemmas),
        goals=len(env.goals),
    )


def file_stats(path: Union[str, Path]) -> StatsReport:
    return env_stats(load_env_file(path), str(path))
