#!/usr/bin/env python3
"""
Command-line surface: one click group, one subcommand per pipeline.

Instances come either from an instance file or from a family name plus
integer parameters and --profile. Every random draw flows from --seed.
Exit codes are listed in config.py and README.md.
"""
import functools
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence, Tuple

import click

import config
import game
import storage
from construct import construct_equilibrium, verify_certificate
from dynamics import PolicyTag, ResponsePolicy, Status, replay, run_dynamics, search_irc
from errors import FailedBoundError, InvalidParameterError, JumpGameError
from game import Instance, TypeProfile
from graph import Graph, make_family, make_random_connected, make_random_regular
from oracle import (
    Objective,
    analyze_objectives,
    check_known_bounds,
    default_experiment,
    pos_gadget_report,
    random_irc_experiment,
    require_bounds,
    run_sweep,
)

log = logging.getLogger(__name__)

budget_option = click.option(
    "--budget", type=click.IntRange(min=1), default=None,
    help="Maximum number of labelings to enumerate (default: VJG_BUDGET or 10,000,000).",
)
seed_option = click.option(
    "--seed", type=click.IntRange(min=0), default=config.DEFAULT_SEED, show_default=True,
    help="Seed for every random draw.",
)
profile_option = click.option(
    "--profile", default=None, help="Agents per type, e.g. 3,2,2 (required with a family)."
)
edge_prob_option = click.option(
    "--edge-prob", type=float, default=0.5, show_default=True,
    help="Edge probability for the 'random' family.",
)


def _reports_errors(fn):
    """Turn library errors into a one-paragraph message and their exit code."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except JumpGameError as e:
            click.echo(f"ERROR: {e}", err=True)
            raise click.exceptions.Exit(e.exit_code)

    return wrapper


def _int_params(family: str, params: Sequence[str]) -> Tuple[int, ...]:
    try:
        return tuple(int(p) for p in params)
    except ValueError:
        raise InvalidParameterError(f"{family} parameters must be integers, got {list(params)}")


def _build_graph(family: str, params: Sequence[str], seed: int, edge_prob: float) -> Graph:
    values = _int_params(family, params)
    if family == "random":
        if len(values) != 1:
            raise InvalidParameterError("random takes 1 parameter: num_nodes")
        return make_random_connected(values[0], edge_prob, seed)
    if family == "random-regular":
        if len(values) != 2:
            raise InvalidParameterError("random-regular takes 2 parameters: degree num_nodes")
        return make_random_regular(values[0], values[1], seed)
    if family == "tree" and len(values) == 1:
        values += (seed,)
    return make_family(family, values)


def _resolve_instance(
    source: Sequence[str], profile: Optional[str], seed: int, edge_prob: float = 0.5
) -> Instance:
    """An instance file path, or FAMILY PARAMS... with --profile."""
    if not source:
        raise InvalidParameterError(
            "No instance given.\nFix: pass an instance file or a family with parameters, "
            "e.g. `cylinder 6 --profile 3,2,2`."
        )
    if len(source) == 1 and Path(source[0]).is_file():
        instance = storage.load_instance(source[0])
        if profile:
            instance = Instance(instance.graph, TypeProfile.parse(profile))
        return instance
    if not profile:
        raise InvalidParameterError(
            f"{source[0]!r} is not a file, so it is read as a family name.\n"
            "Fix: add --profile a,b,c to say how many agents of each type to place."
        )
    graph = _build_graph(source[0], source[1:], seed, edge_prob)
    log.info("built %s with %d nodes, %d edges", graph.family, graph.node_count, graph.edge_count)
    return Instance(graph, TypeProfile.parse(profile))


def _echo_lines(lines: Sequence[str]) -> None:
    for line in lines:
        click.echo(line)


def _setup_logging(verbose: int) -> None:
    if verbose >= 2:
        level = "DEBUG"
    elif verbose == 1:
        level = "INFO"
    else:
        level = config.log_level()
    logging.basicConfig(level=level, format=config.LOG_FORMAT, stream=sys.stderr)


@click.group()
@click.version_option(config.__version__, prog_name="variety-jump")
@click.option("-v", "--verbose", count=True, help="-v for progress, -vv for debug output.")
def cli(verbose: int):
    """Variety-seeking jump games: dynamics, equilibria and price of anarchy."""
    _setup_logging(verbose)


@cli.command()
@click.argument("family")
@click.argument("params", nargs=-1)
@profile_option
@seed_option
@edge_prob_option
@click.option("-o", "--output", type=click.Path(dir_okay=False), help="Instance file to write.")
@click.option(
    "--assignment", "assignment_path", type=click.Path(dir_okay=False),
    help="Also write a random assignment drawn from --seed.",
)
@_reports_errors
def gen(family, params, profile, seed, edge_prob, output, assignment_path):
    """Generate an instance from FAMILY and its integer PARAMS."""
    instance = _resolve_instance((family,) + tuple(params), profile, seed, edge_prob)
    if output:
        storage.save_instance(output, instance)
        click.echo(
            f"wrote {output}: {instance.graph.family}, {instance.graph.node_count} nodes, "
            f"profile {instance.profile}"
        )
    else:
        click.echo(storage.document_text("instance", storage.instance_to_dict(instance)), nl=False)
    if assignment_path:
        storage.save_assignment(assignment_path, game.random_assignment(instance, seed))
        click.echo(f"wrote {assignment_path}")


@cli.command()
@click.argument("instance_file", type=click.Path(exists=True, dir_okay=False))
@click.argument("assignment_file", type=click.Path(exists=True, dir_okay=False))
@click.option(
    "--trace", "trace_file", type=click.Path(exists=True, dir_okay=False),
    help="Replay this trace from the assignment and check every step.",
)
@_reports_errors
def check(instance_file, assignment_file, trace_file):
    """Print metrics and the equilibrium verdict for an assignment."""
    instance = storage.load_instance(instance_file)
    assignment = storage.load_assignment(assignment_file, instance)
    if trace_file:
        states = replay(instance, assignment, storage.load_trace(trace_file))
        click.echo(f"trace replays: {len(states) - 1} improving jumps")
        assignment = states[-1]
    m = game.metrics(instance, assignment)
    click.echo(f"assignment: {assignment}")
    click.echo(f"SW={m.sw} CE={m.ce} mono={m.mono} c={m.c_count}")
    if m.te is not None:
        click.echo(f"TE={m.te} B={m.b}")
    verdict = game.is_equilibrium(instance, assignment)
    if verdict:
        click.echo("equilibrium: yes")
    else:
        click.echo(f"equilibrium: no (improving jump {verdict.witness})")


@cli.command()
@click.argument("source", nargs=-1, required=True)
@profile_option
@seed_option
@edge_prob_option
@click.option(
    "--initial", type=click.Path(exists=True, dir_okay=False),
    help="Initial assignment file (default: random from --seed).",
)
@click.option(
    "--policy", type=click.Choice([p.value for p in PolicyTag]),
    default=PolicyTag.FIRST_IMPROVING.value, show_default=True,
)
@click.option("--step-limit", type=click.IntRange(min=1), default=None)
@click.option("-o", "--output", type=click.Path(dir_okay=False), help="Trace file to write.")
@click.option("--final", type=click.Path(dir_okay=False), help="Write the final assignment here.")
@_reports_errors
def dynamics(source, profile, seed, edge_prob, initial, policy, step_limit, output, final):
    """Run improving-response dynamics and report how they stopped."""
    instance = _resolve_instance(source, profile, seed, edge_prob)
    start = (
        storage.load_assignment(initial, instance)
        if initial
        else game.random_assignment(instance, seed)
    )
    outcome = run_dynamics(instance, start, ResponsePolicy(PolicyTag(policy), seed), step_limit)
    click.echo(f"start: {start}")
    click.echo(f"status: {outcome.status.value} after {len(outcome.trace)} jumps")
    if outcome.status is Status.STATE_REVISITED:
        click.echo(f"cycle of {len(outcome.cycle())} jumps from step {outcome.revisit_index}")
    click.echo(f"final: {outcome.final}")
    if output:
        storage.save_trace(output, outcome.trace)
    else:
        click.echo(storage.format_trace(outcome.trace), nl=False)
    if final:
        storage.save_assignment(final, outcome.final)


@cli.command("irc-search")
@click.argument("source", nargs=-1, required=True)
@profile_option
@seed_option
@budget_option
@click.option("-o", "--output", type=click.Path(dir_okay=False), help="Write the cycle trace here.")
@click.option("--start", "start_path", type=click.Path(dir_okay=False),
              help="Write the cycle's first assignment here.")
@_reports_errors
def irc_search(source, profile, seed, budget, output, start_path):
    """Search every labeling for an improving-response cycle; prints ACYCLIC if none."""
    instance = _resolve_instance(source, profile, seed)
    result = search_irc(instance, budget)
    if result.cycle is None:
        click.echo(f"ACYCLIC ({result.states_explored} states)")
        return
    click.echo(f"CYCLE of {len(result.cycle)} jumps from [{result.start}]")
    if output:
        storage.save_trace(output, result.cycle)
    else:
        click.echo(storage.format_trace(result.cycle), nl=False)
    if start_path:
        storage.save_assignment(start_path, result.start)


@cli.command()
@click.argument("source", nargs=-1, required=True)
@profile_option
@seed_option
@click.option("--explain", is_flag=True, help="Print the construction case and notes.")
@click.option("-o", "--output", type=click.Path(dir_okay=False), help="Assignment file to write.")
@_reports_errors
def construct(source, profile, seed, explain, output):
    """Build an equilibrium on a tree, cylinder or torus."""
    instance = _resolve_instance(source, profile, seed)
    result = construct_equilibrium(instance)
    verified = bool(game.is_equilibrium(instance, result.assignment)) and verify_certificate(
        instance, result.assignment, result.certificate
    )
    click.echo(f"assignment: {result.assignment}")
    click.echo(f"certificate: {result.certificate}")
    click.echo(f"verified: {'yes' if verified else 'NO'}")
    if explain:
        _echo_lines(result.explain())
    if output:
        storage.save_assignment(
            output,
            result.assignment,
            {"case": result.case, "certificate": str(result.certificate), "verified": verified},
        )


@cli.command()
@click.argument("source", nargs=-1, required=True)
@profile_option
@seed_option
@budget_option
@click.option("--jobs", type=click.IntRange(min=1), default=config.DEFAULT_JOBS, show_default=True)
@click.option(
    "--objective", type=click.Choice(["sw", "ce", "both"]), default="both", show_default=True
)
@click.option("--bounds", "with_bounds", is_flag=True, help="Also check the known bounds.")
@click.option("--json", "json_path", type=click.Path(dir_okay=False),
              help="Machine-readable copy of the analysis.")
@_reports_errors
def analyze(source, profile, seed, budget, jobs, objective, with_bounds, json_path):
    """Exact optimum, equilibria, PoA and PoS by exhaustive enumeration."""
    instance = _resolve_instance(source, profile, seed)
    objectives = list(Objective) if objective == "both" else [Objective(objective)]
    analyses = analyze_objectives(instance, objectives, budget, jobs)
    for analysis in analyses.values():
        _echo_lines(analysis.summary())
    report = None
    if with_bounds:
        report = check_known_bounds(instance, analyses)
        _echo_lines(report.summary())
    if json_path:
        storage.save_report(json_path, "analysis", {"analyses": analyses, "bounds": report})
    if report is not None:
        require_bounds([report])


@cli.command()
@click.option("--sweep", default="small", show_default=True, help="Named instance sweep.")
@click.option("--gadget", "gadgets", type=click.IntRange(min=1), multiple=True,
              help="Also analyse the price-of-stability gadget with this x (repeatable).")
@budget_option
@click.option("--jobs", type=click.IntRange(min=1), default=config.DEFAULT_JOBS, show_default=True)
@click.option("--json", "json_path", type=click.Path(dir_okay=False))
@_reports_errors
def bounds(sweep, gadgets, budget, jobs, json_path):
    """Check the known bounds over a sweep; exits 4 when any bound fails."""
    reports = run_sweep(sweep, budget, jobs)
    for report in reports:
        _echo_lines(report.summary())
    gadget_reports = [pos_gadget_report(x, budget, jobs) for x in gadgets]
    for gadget in gadget_reports:
        _echo_lines(gadget.summary())
    failed = sum(1 for r in reports if not r.passed)
    click.echo(f"{len(reports)} instances, {failed} with failed bounds")
    if json_path:
        storage.save_report(json_path, "bounds", {"sweep": reports, "gadgets": gadget_reports})
    require_bounds(reports)


@cli.command()
@click.argument("config_file", required=False, type=click.Path(exists=True, dir_okay=False))
@budget_option
@click.option("-o", "--output", type=click.Path(dir_okay=False), help="Tab-separated report.")
@_reports_errors
def experiment(config_file, budget, output):
    """Search seeded random graphs for improving-response cycles."""
    configs, seeds = (
        storage.load_experiment_config(config_file) if config_file else default_experiment()
    )
    report = random_irc_experiment(configs, seeds, budget)
    header = "num_nodes\tn\tk\tempty_count\tseed\tgraph\tirc_found\tstates_explored\tcycle_length"
    rows = [header] + [
        "\t".join(
            str(v)
            for v in (
                r.num_nodes, r.n, r.k, r.empty_count, r.seed, r.graph_kind,
                "budget" if r.irc_found is None else str(r.irc_found).lower(),
                r.states_explored, r.cycle_length,
            )
        )
        for r in report.rows
    ]
    if output:
        Path(output).write_text("\n".join(rows) + "\n", encoding="utf-8")
    else:
        _echo_lines(rows)
    for empty_count, (searched, found) in report.by_empty_count().items():
        click.echo(f"empty_count={empty_count}: {found} of {searched} samples have a cycle")
    if any(r.irc_found for r in report.rows if r.empty_count == 1):
        raise FailedBoundError("an improving-response cycle was found with a single empty node")


@cli.command("export-dot")
@click.argument("source", nargs=-1, required=True)
@profile_option
@seed_option
@click.option("--assignment", "assignment_path", type=click.Path(exists=True, dir_okay=False))
@click.option("-o", "--output", type=click.Path(dir_okay=False), help="DOT file to write.")
@_reports_errors
def export_dot(source, profile, seed, assignment_path, output):
    """Write the graph as DOT, coloured by type when an assignment is given."""
    instance = _resolve_instance(source, profile, seed)
    assignment = (
        storage.load_assignment(assignment_path, instance) if assignment_path else None
    )
    text = storage.to_dot(instance, assignment)
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        click.echo(text, nl=False)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Entry point; returns the process exit code."""
    try:
        result = cli.main(args=argv, prog_name="variety-jump", standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return config.EXIT_INVALID_INPUT
    except click.exceptions.Abort:
        click.echo("Aborted.", err=True)
        return 1
    return result if isinstance(result, int) else config.EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
