# Copyright 2023 Olivia Kinnear
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""
timed-targets: Minimum timed target sets in the non-progressive threshold model.

Graphs are read as edge lists, one `u v` pair (or a lone node label) per line.
Thresholds come from a rule (`strict` or `simple` majority) or from a `label value` file.

Run `tts --help` for more information.
"""

__author__ = "Olivia Kinnear <contact@superatomic.dev>"
__all__ = ['cli']

from collections.abc import Callable, Iterable
from functools import wraps
from os import getenv
from pathlib import Path
from typing import Any, NamedTuple, Optional, TextIO

import click
from click import (argument, echo, get_current_context, get_text_stream, group, help_option, option,
                   progressbar, version_option)
from click_help_colors import HelpColorsGroup

from timed_targets import bounds, exact, experiments, generators, ilp, transforms
from timed_targets.color import (HELP_COLORS, style_bound, style_fail, style_input, style_ok, style_path, style_size,
                                 style_task, style_value, yes_no)
from timed_targets.dynamics import Model, bit_string, configuration, positive_nodes, run_to_limit
from timed_targets.errors import InputError, NotATargetSet, SolverNotFound
from timed_targets.graph import (Graph, ThresholdAssignment, default_labels, format_edge_list, format_thresholds,
                                 read_edge_list, resolve_rule, strict_majority)
from timed_targets.greedy import ts_greedy, tts_greedy
from timed_targets.schedule import Schedule, format_schedule, is_disjoint_schedule, read_schedule, require_tts, verify_ts
from timed_targets.shell_completion import dataset_shell_complete, rule_shell_complete
from timed_targets.tree import classify_nodes, construct_tts_tree, tree_lower_bound_2A

GRAPH_PATH = click.Path(exists=True, dir_okay=False, path_type=Path)
OUTPUT_FILE = click.File('w', lazy=False)


class Instance(NamedTuple):
    """A graph read from the command line, with its node labels and thresholds."""
    graph: Graph
    labels: tuple[str, ...]
    tau: ThresholdAssignment

    def nodes(self, text: str) -> list[int]:
        index = {label: v for v, label in enumerate(self.labels)}
        try:
            return [index[label] for label in text.split()]
        except KeyError as err:
            raise InputError(f"Unknown node {style_input(err.args[0])}")


rule_option = option('--rule', default='strict', show_default=True, metavar='strict|simple|file:PATH',
                     shell_complete=rule_shell_complete,
                     help='Threshold rule, or a file of `label value` lines')

solver_option = option('--solver-cmd', metavar='TEMPLATE', envvar='TIMED_TARGETS_SOLVER_CMD',
                       help=f'ILP solver command with {{lp}} and {{sol}} placeholders [default: {ilp.DEFAULT_SOLVER_COMMAND}]')

model_option = option('--model', type=click.Choice([m.value for m in Model]), default=Model.NON_PROGRESSIVE.value,
                      show_default=True, help='Threshold dynamics')


def graph_input(func: Callable[..., None]) -> Callable[..., None]:
    """
    Add the GRAPH argument and the `--rule` option to a command.

    func(instance, ...) --> func(graph, rule, ...)
    """
    @wraps(func)
    def wrapper(*args: Any, graph: Path, rule: str, **kwargs: Any) -> None:
        labeled = read_edge_list(graph)
        tau = resolve_rule(labeled.graph, labeled.labels, rule)
        func(Instance(labeled.graph, labeled.labels, tau), *args, **kwargs)

    return rule_option(argument('graph', type=GRAPH_PATH)(wrapper))


def exit_on_interrupt(func: Callable[..., None]) -> Callable[..., None]:
    @wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> None:
        try:
            func(*args, **kwargs)
        except KeyboardInterrupt:
            get_current_context().exit(130)

    return wrapper


def echo_schedule(inst: Instance, sched: Schedule, kind: str = 'TTS') -> None:
    """Print a schedule after checking it, followed by a summary line on stderr."""
    require_tts(inst.graph, inst.tau, sched)
    echo(format_schedule(sched, inst.labels), nl=False)
    echo(style_size(kind, sched.size, k=sched.k, disjoint=yes_no(is_disjoint_schedule(sched))), err=True)


def echo_targets(inst: Instance, targets: Iterable[int], model: Model = Model.NON_PROGRESSIVE) -> None:
    chosen = sorted(targets)
    if not verify_ts(inst.graph, inst.tau, chosen, model):
        raise NotATargetSet(f"The {len(chosen)} computed node(s) do not make every node positive")
    echo(' '.join(inst.labels[v] for v in chosen))
    echo(style_size('TS', len(chosen), model=model.value), err=True)


@group(cls=HelpColorsGroup,
       **HELP_COLORS,
       context_settings={
           'color': (False if getenv('TERM') == 'dumb' or getenv('TIMED_TARGETS_NO_COLOR') or getenv('NO_COLOR')
                     else None),
       },
       no_args_is_help=True)
@version_option(None, '-v', '-V', '--version',
                message="%(prog)s %(version)s",
                help='Display the version and exit')
@help_option('-h', '--help',
             help='Show this message and exit')
def cli() -> None:
    """Compute, verify and bound minimum timed target sets"""


@cli.command()
@argument('family', type=click.Choice(['star', 'bipartite', 'cycle', 'path', 'tower', 'ba', 'er', 'tree']))
@option('-n', '--n', 'n', type=click.IntRange(min=1), default=10, show_default=True, help='Number of nodes')
@option('--a', type=click.IntRange(min=1), default=2, show_default=True, help='Left side of K_{a,b}')
@option('--b', type=click.IntRange(min=1), default=4, show_default=True, help='Right side of K_{a,b}')
@option('--kappa', type=click.IntRange(min=2), default=3, show_default=True, help='Tower layers')
@option('--avg-degree', type=click.FloatRange(min=0), default=experiments.DEFAULT_AVG_DEGREE, show_default=True,
        help='Target average degree of BA and ER graphs')
@option('--seed', type=int, default=0, show_default=True)
@option('--instance', type=click.IntRange(min=0), default=0, show_default=True, help='Instance index under the seed')
@option('-o', '--out', type=OUTPUT_FILE, default='-', help='Edge list destination')
@option('--tau-out', type=OUTPUT_FILE, help='Also write strict majority thresholds here')
@option('--schedule-out', type=OUTPUT_FILE, help='Tower only: also write the reference disjoint schedule here')
def gen(family: str, n: int, a: int, b: int, kappa: int, avg_degree: float, seed: int, instance: int,
        out: TextIO, tau_out: Optional[TextIO], schedule_out: Optional[TextIO]) -> None:
    """Generate a fixture or seeded random graph"""
    header = [f"{family} n={n} seed={seed} instance={instance}"]
    match family:
        case 'star':
            g = generators.gen_star(n)
        case 'bipartite':
            g = generators.gen_complete_bipartite(a, b)
            header = [f"K_{{{a},{b}}}"]
        case 'cycle':
            g = generators.gen_cycle(n)
        case 'path':
            g = generators.gen_path(n)
        case 'tower':
            g = generators.gen_tower(kappa)
            layers, leaves = generators.tower_layers(kappa)
            header = [f"tower kappa={kappa}"]
            header += [f"L{i}: " + ' '.join(map(str, layer)) for i, layer in enumerate(layers, start=1)]
            header += ["leaves: " + ' '.join(map(str, leaves))]
        case 'ba':
            m_attach = generators.ba_attachment(avg_degree)
            g = generators.gen_ba(n, m_attach, seed, instance)
            header = [f"ba n={n} m_attach={m_attach} avg_degree={avg_degree:g} seed={seed} instance={instance}"]
        case 'er':
            p = generators.er_probability(n, avg_degree)
            g = generators.gen_er(n, p, seed, instance)
            header = [f"er n={n} p={p:.6g} avg_degree={avg_degree:g} seed={seed} instance={instance}"]
        case _:
            g = generators.gen_random_tree(n, seed, instance)

    out.write(format_edge_list(g, header=header))
    if tau_out is not None:
        tau_out.write(format_thresholds(strict_majority(g)))
    if schedule_out is not None:
        if family != 'tower':
            raise click.UsageError("--schedule-out is only available for the tower")
        schedule_out.write(format_schedule(generators.tower_reference_dtts(kappa)))


@cli.command()
@graph_input
@option('-t', '--targets', default='', metavar='LABELS', help='Initially positive nodes, space separated')
@model_option
@option('--max-steps', type=click.IntRange(min=1), help='Step cap  [default: 4m + 2n + 4]')
@option('--bits', is_flag=True, help='Print every configuration as a bit string')
def simulate(inst: Instance, targets: str, model: str, max_steps: Optional[int], bits: bool) -> None:
    """Run the threshold dynamics from a configuration until it repeats"""
    orbit = run_to_limit(inst.graph, inst.tau, configuration(inst.nodes(targets)), max_steps, Model(model),
                         keep_trace=True)
    assert orbit.trace is not None
    for t, conf in enumerate(orbit.trace):
        shown = bit_string(conf, inst.graph.n) if bits else ' '.join(inst.labels[v] for v in positive_nodes(conf))
        echo(f"{t}: {shown}".rstrip())
    echo(f"transient={orbit.transient_length} cycle={orbit.cycle_length} "
         f"all-positive={yes_no(orbit.saw_all_positive)}", err=True)


@cli.command()
@graph_input
@argument('schedule', type=GRAPH_PATH)
def verify(inst: Instance, schedule: Path) -> None:
    """Check that SCHEDULE is a timed target set of GRAPH"""
    sched = read_schedule(schedule, inst.labels)
    require_tts(inst.graph, inst.tau, sched)
    echo(style_ok(f"TTS size={sched.size}"))
    echo(f"k={sched.k} disjoint={yes_no(is_disjoint_schedule(sched))}", err=True)


@cli.command()
@graph_input
@option('--mode', type=click.Choice(['tts', 'ts']), default='tts', show_default=True)
def greedy(inst: Instance, mode: str) -> None:
    """Greedy timed target set (S_0, S_1, ∅), or the greedy target set"""
    if mode == 'tts':
        echo_schedule(inst, tts_greedy(inst.graph, inst.tau))
    else:
        echo_targets(inst, ts_greedy(inst.graph, inst.tau))


@cli.command('exact')
@graph_input
@option('--mode', type=click.Choice(['tts', 'dtts', 'ts']), default='tts', show_default=True,
        help='Timed target set, disjoint timed target set, or target set')
@model_option
@option('--method', type=click.Choice(['oracle', 'ilp']), default='oracle', show_default=True)
@option('--node-cap', type=click.IntRange(min=0), help='Largest graph the oracles accept  [default: 20, dtts: 12]')
@option('--k-max', type=click.IntRange(min=0), default=experiments.DEFAULT_K_MAX, show_default=True,
        help='Largest ILP horizon')
@solver_option
@exit_on_interrupt
def exact_command(inst: Instance, mode: str, model: str, method: str, node_cap: Optional[int], k_max: int,
                  solver_cmd: Optional[str]) -> None:
    """Minimum timed target set or target set of a small graph"""
    g, tau, dynamics = inst.graph, inst.tau, Model(model)
    if method == 'ilp':
        if mode == 'dtts' or dynamics is Model.PROGRESSIVE:
            raise click.UsageError("The ILP covers --mode tts and non-progressive --mode ts only")
        if mode == 'tts':
            echo_schedule(inst, ilp.min_tts_via_ilp(g, tau, k_max, solver_cmd).schedule)
        else:
            echo_targets(inst, ilp.min_ts_via_ilp(g, tau, k_max, solver_cmd).targets)
        return

    match mode:
        case 'tts':
            result = exact.min_tts_exact(g, tau, node_cap if node_cap is not None else exact.TTS_NODE_CAP)
            echo_schedule(inst, result.schedule)
        case 'dtts':
            result = exact.min_dtts_exact(g, tau, node_cap if node_cap is not None else exact.DTTS_NODE_CAP)
            echo_schedule(inst, result.schedule, kind='DTTS')
        case _:
            found = exact.min_ts_exact(g, tau, dynamics, node_cap if node_cap is not None else exact.TS_NODE_CAP)
            echo_targets(inst, found.targets, dynamics)


@cli.command()
@graph_input
def tree(inst: Instance) -> None:
    """Minimum timed target set of a tree, in linear time"""
    sched = construct_tts_tree(inst.graph, inst.tau)
    echo_schedule(inst, sched)
    classes = classify_nodes(inst.graph, inst.tau)
    echo(f"root={inst.labels[classes.root]} lower-bound={tree_lower_bound_2A(inst.graph, inst.tau)}", err=True)


@cli.command('bounds')
@graph_input
def bounds_command(inst: Instance) -> None:
    """Lower bounds on the minimum timed target set size"""
    for name, value in bounds.applicable_bounds(inst.graph, inst.tau).items():
        echo(f"{name}: {style_bound(value)}")
    best = bounds.best_lower_bound(inst.graph, inst.tau)
    echo(f"best: {style_value(str(best.value))} ({best.which})")


@cli.command()
@graph_input
@option('--double-cover', 'construction', flag_value='double-cover', help='Bipartite double cover')
@option('--hardness-gadget', 'construction', flag_value='hardness-gadget',
        help='Attach triangle gadgets (thresholds are read as progressive ones)')
@option('-o', '--out', type=OUTPUT_FILE, default='-', help='Edge list destination')
@option('--tau-out', type=OUTPUT_FILE, required=True, help='Threshold file destination')
def transform(inst: Instance, construction: Optional[str], out: TextIO, tau_out: TextIO) -> None:
    """Build the double cover or the gadget graph of GRAPH"""
    if construction is None:
        raise click.UsageError("Choose one of --double-cover or --hardness-gadget")

    if construction == 'double-cover':
        cover = transforms.bipartite_double_cover(inst.graph, inst.tau)
        g, tau = cover.graph, cover.tau
        header = [f"double cover: {inst.labels[v]} -> {x} {y}" for v, (x, y) in enumerate(cover.copies)]
    else:
        gadgets = transforms.hardness_gadget(inst.graph, inst.tau)
        g, tau = gadgets.graph, gadgets.tau
        header = [f"gadget: {inst.labels[v]} -> {v}" + ''.join(f" ({a} {b})" for a, b in pairs)
                  for v, pairs in enumerate(gadgets.pairs)]

    out.write(format_edge_list(g, default_labels(g.n), header))
    tau_out.write(format_thresholds(tau))


@cli.command('ilp-export')
@graph_input
@option('--k', 'k', type=click.IntRange(min=0), required=True, help='Horizon')
@option('--ts-only', is_flag=True, help='Allow targeting at step 0 only')
@option('-o', '--out', type=OUTPUT_FILE, default='-', help='LP file destination')
def ilp_export(inst: Instance, k: int, ts_only: bool, out: TextIO) -> None:
    """Write the integer linear program of GRAPH for horizon K in LP format"""
    model = ilp.emit_ilp(inst.graph, inst.tau, k, target_set_only=ts_only)
    out.write(model.to_lp())
    echo(f"variables={model.variable_count} constraints={len(model.rows)}", err=True)


@cli.group(cls=HelpColorsGroup, **HELP_COLORS, no_args_is_help=True)
def experiment() -> None:
    """Compare greedy and optimal sizes on random and real graphs"""


@experiment.command()
@option('--model', 'models', type=click.Choice([m.value for m in experiments.GraphModel]), multiple=True,
        default=[m.value for m in experiments.GraphModel], show_default=True, help='Random graph model (repeatable)')
@option('-n', '--n', 'n_list', type=click.IntRange(min=2), multiple=True, default=[10, 15, 20], show_default=True,
        help='Graph size (repeatable)')
@option('--instances', type=click.IntRange(min=1), default=10, show_default=True)
@option('--seed', type=int, default=0, show_default=True)
@option('--avg-degree', type=click.FloatRange(min=0), default=experiments.DEFAULT_AVG_DEGREE, show_default=True)
@option('--node-cap', type=click.IntRange(min=0), default=exact.TTS_NODE_CAP, show_default=True,
        help='Largest graph solved by the oracles')
@solver_option
@option('--k-max', type=click.IntRange(min=0), default=experiments.DEFAULT_K_MAX, show_default=True)
@option('--workers', type=click.IntRange(min=1), default=1, show_default=True, help='Worker processes')
@option('-o', '--out', type=OUTPUT_FILE, default='-', help='CSV destination')
@option('--no-timing', is_flag=True, help='Leave wall_ms empty, so the output only depends on the seed')
@exit_on_interrupt
def synthetic(models: tuple[str, ...], n_list: tuple[int, ...], instances: int, seed: int, avg_degree: float,
              node_cap: int, solver_cmd: Optional[str], k_max: int, workers: int, out: TextIO,
              no_timing: bool) -> None:
    """Seeded BA and ER graphs under strict majority"""
    if solver_cmd is not None and max(n_list) > node_cap and not ilp.solver_available(solver_cmd):
        raise SolverNotFound(ilp.solver_name(solver_cmd), ilp.SOLVER_MISSING_MESSAGE)

    rows = []
    for model in models:
        config = experiments.SyntheticConfig(
            experiments.GraphModel(model), n_list, instances, seed, avg_degree, node_cap, solver_cmd, k_max,
            timing=not no_timing,
        )
        with progressbar(experiments.iter_synthetic(config, workers), length=config.task_count,
                         label=style_task(f"{model} instances"), file=get_text_stream('stderr')) as results:
            rows.extend(results)

    frame = experiments.results_frame(rows)
    experiments.write_csv(experiments.with_summary_rows(frame), out)

    seen = experiments.observe(frame)
    echo(f"TTS-OPT < TS-OPT on {seen.tts_opt_below_ts_opt} of {seen.with_optima} solved instances", err=True)
    echo(f"TTS-Greedy <= TS-Greedy on {seen.tts_greedy_at_most_ts_greedy} of {seen.instances} instances", err=True)


@experiment.command()
@argument('source', shell_complete=dataset_shell_complete)
@rule_option
@option('--no-download', is_flag=True, help='Fail instead of downloading a dataset missing from the cache')
@exit_on_interrupt
def real(source: str, rule: str, no_download: bool) -> None:
    """Greedy sizes on a large edge list, given as a path or a dataset name (facebook, twitter, twitch)"""
    report = experiments.experiment_real(source, rule, allow_download=not no_download)

    echo(f"{style_path(report.source)}: n={report.n} m={report.m}")
    echo(f"TS-Greedy:  {style_value(str(report.ts_greedy))}")
    echo(f"TTS-Greedy: {style_value(str(report.tts_greedy))}")
    echo(f"Improvement (TS-TTS)/TS: {style_value(f'{report.improvement:.1f}%')}")

    if (reference := report.reference) is not None:
        if not report.node_count_matches:
            echo(style_fail(f"Expected {reference.nodes} nodes; the comparison below may not apply"), err=True)
        echo(f"Reference: TS-Greedy {reference.ts_greedy}, TTS-Greedy {reference.tts_greedy}, "
             f"improvement {reference.improvement:.1f}%")


if __name__ == '__main__':
    cli()
