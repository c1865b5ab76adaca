import json
import logging
import sys
from pathlib import Path
from typing import Dict, Optional, Tuple

import click

from . import __version__, get_available_modules
from .core import ConfigManager, HLProverError, ParseError, TraceError
from .driver import (
    EXIT_FAILURE,
    EXIT_OK,
    EXIT_USAGE,
    FORMATS,
    ReportRenderer,
    Severity,
    bench as run_bench,
    check_file,
    file_stats,
    format_rows,
    lint as run_lint,
    prove_goal,
    tactic_options,
)
from .hierarchy import SHAPES, Env, empty_env, generate, load_env_file
from .prooftrace import ProofTrace
from .prooftrace.verify import verify as verify_trace
from .resolver.query import STRATEGIES
from .syntax import Binder, Goal, Hypothesis, Rel, Sort, parse_class_atom, parse_sort, parse_statement
from .tactics import get_default_tactics

search_options = [
    click.option("--strategy", type=click.Choice(STRATEGIES), help="Resolution strategy"),
    click.option("--max-depth", type=click.IntRange(min=1), help="Resolution depth bound"),
    click.option("--fuel", type=click.IntRange(min=0), help="Rewrite step limit"),
]


def with_search_options(command):
    for option in reversed(search_options):
        command = option(command)
    return command


def _load(path: Optional[str]) -> Env:
    if path is None:
        return empty_env()
    try:
        return load_env_file(path)
    except (HLProverError, OSError) as e:
        click.echo(f"Error: {path}: {e}", err=True)
        sys.exit(EXIT_USAGE)


@click.group()
@click.option("--config", "-c", type=click.Path(), help="Configuration file path")
@click.option("--verbose", "-v", is_flag=True, help="Enable verbose logging")
@click.pass_context
def cli(ctx, config, verbose):
    """hl-prover - type-class resolution and proof automation"""
    config_path = Path(config) if config else None
    ctx.obj = ConfigManager(config_path)

    # Logs go to stderr so JSON on stdout stays parseable
    level = logging.DEBUG if verbose else ctx.obj.get("general.log_level", "INFO")
    logging.basicConfig(
        level=level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )


@cli.command()
def version():
    """Show version information"""
    click.echo(f"hl-prover v{__version__}")
    click.echo(f"Available modules: {', '.join(get_available_modules())}")
    click.echo(f"Available tactics: {', '.join(get_default_tactics())}")


@cli.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--json", "as_json", is_flag=True, help="Print the report as JSON")
@click.option("--strict", is_flag=True, help="Treat simp loop risks as errors")
@with_search_options
@click.pass_obj
def check(config, file, as_json, strict, strategy, max_depth, fuel):
    """Check a declaration file and prove its goals"""
    strict = strict or bool(config.get("lint.strict", False))
    report = check_file(file, config, strict, strategy=strategy, max_depth=max_depth, fuel=fuel)
    if as_json:
        click.echo(report.model_dump_json(indent=2))
    else:
        click.echo(ReportRenderer().check(report), nl=False)
    sys.exit(report.exit_code)


def _hypothesis(text: str, index: int, env: Env, sort: Optional[Sort], variables: Dict[str, Sort]) -> Hypothesis:
    name, sep, body = text.partition(":")
    if not sep or not name.strip().isidentifier():
        name, body = f"h{index}", text
    statement, found = parse_statement(body.strip(), env, sort, variables)
    if not isinstance(statement, Rel):
        raise click.BadParameter(f"hypothesis '{text}' is not a relation", param_hint="--hyp")
    variables.update(found)
    return Hypothesis(name.strip(), statement)


def _goal(
    env: Env, atom: Optional[str], tactic: Optional[str], term: Optional[str], hyps: Tuple[str, ...], sort: Optional[Sort]
) -> Goal:
    if atom is not None:
        return Goal(name="cli_goal", statement=parse_class_atom(atom, env))
    statement, variables = parse_statement(term, env, sort)
    hypotheses = [_hypothesis(h, i, env, sort, variables) for i, h in enumerate(hyps, 1)]
    binders = tuple(Binder(name, s) for name, s in variables.items())
    return Goal(
        name="cli_goal",
        statement=statement,
        binders=binders,
        hypotheses=tuple(hypotheses),
        tactic=tactic,
        default_sort=sort,
    )


def _print_stats(metadata: Dict, fmt: str) -> None:
    if fmt == "json":
        click.echo(json.dumps(metadata, indent=2, default=str))
        return
    for key, value in metadata.items():
        if isinstance(value, dict):
            for inner, v in value.items():
                click.echo(f"  {key}.{inner}: {v}")
        else:
            click.echo(f"  {key}: {value}")


@cli.command()
@click.argument("file", required=False)
@click.option("--class", "atom", help="Ground class atom to resolve, e.g. 'monoid(Z)'")
@click.option("--tactic", "-t", type=click.Choice(list(get_default_tactics())), help="Tactic for TERM")
@click.argument("term", required=False)
@click.option("--hyp", "hyps", multiple=True, help="Hypothesis 'name: relation' (repeatable)")
@click.option("--sort", "sort_name", help="Default sort for numerals and variables")
@with_search_options
@click.option("--stats", "stats_format", type=click.Choice(["json", "text"]), help="Print search metrics")
@click.option("--trace", "trace_out", type=click.Path(dir_okay=False), help="Write the proof trace as JSON")
@click.option("--simpset", help="'default' or a comma-separated list of rule names")
@click.option("--json", "as_json", is_flag=True, help="Print the result as JSON")
@click.pass_obj
def prove(
    config, file, atom, tactic, term, hyps, sort_name, strategy, max_depth, fuel, stats_format, trace_out, simpset, as_json
):
    """Prove one goal: a class atom with --class, or TERM with --tactic"""
    if file is not None and term is None and atom is None and not Path(file).is_file():
        file, term = None, file
    if (atom is None) == (term is None):
        click.echo("Error: give either --class ATOM or --tactic T TERM", err=True)
        sys.exit(EXIT_USAGE)

    env = _load(file)
    try:
        sort = parse_sort(sort_name, env) if sort_name else None
        goal = _goal(env, atom, tactic, term, hyps, sort)
    except ParseError as e:
        click.echo(f"Error: {e}", err=True)
        sys.exit(EXIT_USAGE)

    options = tactic_options(config, strategy=strategy, max_depth=max_depth, fuel=fuel, simpset=simpset)
    outcome = prove_goal(goal, env, options, tactic)

    if trace_out and outcome.trace is not None:
        Path(trace_out).write_text(outcome.trace.to_json(), encoding="utf-8")

    if as_json:
        payload = outcome.to_report().model_dump(mode="json")
        payload["metadata"] = outcome.metadata
        click.echo(json.dumps(payload, indent=2, default=str))
    elif outcome.proved:
        click.echo(f"✓ proved by {outcome.tactic}")
        if trace_out:
            click.echo(f"  trace written to {trace_out}")
    else:
        click.echo(f"✗ not proved: {outcome.message}")

    if stats_format:
        _print_stats(outcome.metadata, stats_format)
    sys.exit(EXIT_OK if outcome.proved else EXIT_FAILURE)


@cli.command()
@click.argument("trace_file", type=click.Path(exists=True, dir_okay=False))
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
def verify(trace_file, file):
    """Re-check a proof trace against a declaration file"""
    env = _load(file)
    try:
        trace = ProofTrace.from_json(Path(trace_file).read_text(encoding="utf-8"))
    except TraceError as e:
        click.echo(f"Error: {trace_file}: {e}", err=True)
        sys.exit(EXIT_USAGE)
    verdict = verify_trace(trace, env)
    click.echo(str(verdict))
    sys.exit(EXIT_OK if verdict else EXIT_FAILURE)


@cli.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--json", "as_json", is_flag=True, help="Print findings as JSON")
@click.option("--strict", is_flag=True, help="Treat simp loop risks as errors")
@click.pass_obj
def lint(config, file, as_json, strict):
    """Lint the declarations of a file"""
    env = _load(file)
    strict = strict or bool(config.get("lint.strict", False))
    findings = run_lint(env, config.get("lint.checks"))
    if as_json:
        payload = [dict(f.model_dump(), severity=f.to_diagnostic(strict).severity.value) for f in findings]
        click.echo(json.dumps(payload, indent=2))
    else:
        click.echo(ReportRenderer().lint(findings), nl=False)
    errors = [f for f in findings if f.to_diagnostic(strict).severity == Severity.ERROR]
    sys.exit(EXIT_FAILURE if errors else EXIT_OK)


@cli.command()
@click.option("--shape", type=click.Choice(SHAPES), required=True, help="Hierarchy shape")
@click.option("--n", "size", type=click.IntRange(min=0), required=True, help="Shape size")
@click.option("--out", "-o", type=click.Path(dir_okay=False), help="Output file (stdout when omitted)")
@click.option("--seed", type=int, help="Shuffle instance order deterministically")
def gen(shape, size, out, seed):
    """Generate a benchmark hierarchy"""
    generated = generate(shape, size, seed)
    if out:
        Path(out).write_text(generated.source, encoding="utf-8")
        click.echo(f"✅ Wrote {shape} n={size} to {out} (query: {generated.query})")
    else:
        click.echo(generated.source, nl=False)


@cli.command()
@click.option("--shape", type=click.Choice(SHAPES), required=True, help="Hierarchy shape")
@click.option("--n", "size", type=click.IntRange(min=0), required=True, help="Largest shape size")
@click.option("--n-min", type=click.IntRange(min=1), default=1, help="Smallest shape size")
@click.option("--strategy", "strategies", multiple=True, type=click.Choice(STRATEGIES), help="Strategies to run")
@click.option("--cache/--no-cache", default=None, help="Memoize solved atoms")
@click.option("--max-depth", type=click.IntRange(min=1), help="Resolution depth bound")
@click.option("--seed", type=int, help="Shuffle instance order deterministically")
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="csv", help="Output format")
@click.pass_obj
def bench(config, shape, size, n_min, strategies, cache, max_depth, seed, fmt):
    """Benchmark resolution on generated hierarchies"""
    strategies = strategies or tuple(config.get("bench.strategies", STRATEGIES))
    if cache is None:
        cache = bool(config.get("bench.cache", False))
    rows = run_bench(shape, size, strategies, n_min, cache, max_depth, seed)
    click.echo(format_rows(rows, fmt), nl=fmt == "json")


@cli.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--json", "as_json", is_flag=True, help="Print statistics as JSON")
def stats(file, as_json):
    """Instance-graph statistics of a file"""
    try:
        report = file_stats(file)
    except HLProverError as e:
        click.echo(f"Error: {file}: {e}", err=True)
        sys.exit(EXIT_USAGE)
    if as_json:
        click.echo(report.model_dump_json(indent=2))
    else:
        click.echo(ReportRenderer().stats(report), nl=False)


def main():
    cli()


if __name__ == "__main__":
    main()
