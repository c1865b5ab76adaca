"""Resolution benchmarks over generated hierarchies"""

import csv
import io
import json
import logging
from typing import List, Optional, Sequence

from ..hierarchy import generate
from ..resolver import Query, SearchConfig, resolve
from .render import ReportRenderer
from .reports import BenchRow

logger = logging.getLogger(__name__)

FORMATS = ("csv", "json", "text")
DEFAULT_STRATEGIES = ("backward", "bidir")


def bench(
    shape: str,
    n: int,
    strategies: Sequence[str] = DEFAULT_STRATEGIES,
    n_min: int = 1,
    cache: bool = False,
    max_depth: Optional[int] = None,
    seed: Optional[int] = None,
) -> List[BenchRow]:
    """
    One row per ``(n, strategy)`` for sizes ``n_min .. n``.

    ``max_depth`` defaults to a bound the deepest generated chain fits in;
    ``n = 0`` gives no rows.
    """
    rows: List[BenchRow] = []
    for size in range(max(n_min, 1), n + 1):
        generated = generate(shape, size, seed)
        env = generated.env()
        atom = generated.query_atom(env)
        depth = max_depth or 2 * size + 8
        for strategy in strategies:
            config = SearchConfig(max_depth=depth, strategy=strategy, cache=cache)
            metrics = resolve(Query(atom, config), env).metrics
            logger.debug(f"bench {shape} n={size} {strategy}: {metrics.outcome.value}, {metrics.nodes_expanded} nodes")
            rows.append(
                BenchRow(
                    shape=shape,
                    n=size,
                    strategy=strategy,
                    cache=cache,
                    outcome=metrics.outcome.value,
                    nodes_expanded=metrics.nodes_expanded,
                    cache_hits=metrics.cache_hits,
                    max_depth_reached=metrics.max_depth_reached,
                    elapsed_ns=metrics.elapsed_ns,
                )
            )
    return rows


def format_rows(rows: Sequence[BenchRow], fmt: str = "csv", renderer: Optional[ReportRenderer] = None) -> str:
    if fmt == "json":
        return json.dumps([row.model_dump(mode="json") for row in rows], indent=2)
    if fmt == "text":
        return (renderer or ReportRenderer()).bench(rows)
    if fmt != "csv":
        raise ValueError(f"unknown bench format '{fmt}', expected one of {', '.join(FORMATS)}")
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=list(BenchRow.model_fields), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row.model_dump(mode="json"))
    return buffer.getvalue()
