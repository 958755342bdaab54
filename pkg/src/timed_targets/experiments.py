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

"""Greedy and optimal sizes on seeded random graphs and on real networks, reported as CSV."""

from collections.abc import Iterator, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from time import perf_counter
from typing import Any, NamedTuple, Optional, TextIO

import pandas as pd

from timed_targets.datasets import DATASETS, Dataset, fetch_dataset
from timed_targets.exact import TTS_NODE_CAP, min_ts_exact, min_tts_exact
from timed_targets.generators import ba_attachment, er_probability, gen_ba, gen_er
from timed_targets.graph import Graph, read_edge_list, resolve_rule, strict_majority
from timed_targets.greedy import ts_greedy, tts_greedy
from timed_targets.ilp import min_ts_via_ilp, min_tts_via_ilp

CSV_COLUMNS = ['model', 'n', 'seed', 'instance', 'ts_greedy', 'tts_greedy', 'ts_opt', 'tts_opt', 'opt_method', 'wall_ms']
SIZE_COLUMNS = ['ts_greedy', 'tts_greedy', 'ts_opt', 'tts_opt', 'wall_ms']

DEFAULT_AVG_DEGREE = 8.0
DEFAULT_K_MAX = 8


class GraphModel(str, Enum):
    BA = 'BA'
    ER = 'ER'


@dataclass(frozen=True)
class SyntheticConfig:
    model: GraphModel
    n_list: tuple[int, ...]
    instances: int
    seed: int
    avg_degree: float = DEFAULT_AVG_DEGREE
    node_cap: int = TTS_NODE_CAP
    solver_command: Optional[str] = None
    k_max: int = DEFAULT_K_MAX
    timing: bool = True

    @property
    def task_count(self) -> int:
        return len(self.n_list) * self.instances


def synthetic_graph(model: GraphModel, n: int, avg_degree: float, seed: int, instance: int) -> Graph:
    if model is GraphModel.BA:
        return gen_ba(n, ba_attachment(avg_degree), seed, instance)
    return gen_er(n, er_probability(n, avg_degree), seed, instance)


def run_instance(config: SyntheticConfig, n: int, instance: int) -> dict[str, Any]:
    """One CSV row. Optima come from the oracles up to the node cap, else from the ILP if a solver is set."""
    started = perf_counter()
    g = synthetic_graph(config.model, n, config.avg_degree, config.seed, instance)
    tau = strict_majority(g)

    ts_opt: Optional[int] = None
    tts_opt: Optional[int] = None
    method = ''
    if n <= config.node_cap:
        ts_opt = min_ts_exact(g, tau, node_cap=config.node_cap).size
        tts_opt = min_tts_exact(g, tau, node_cap=config.node_cap).size
        method = 'oracle'
    elif config.solver_command is not None:
        ts_opt = min_ts_via_ilp(g, tau, config.k_max, config.solver_command).size
        tts_opt = min_tts_via_ilp(g, tau, config.k_max, config.solver_command).size
        method = 'ilp'

    row = {
        'model': config.model.value,
        'n': n,
        'seed': config.seed,
        'instance': instance,
        'ts_greedy': len(ts_greedy(g, tau)),
        'tts_greedy': tts_greedy(g, tau).size,
        'ts_opt': ts_opt,
        'tts_opt': tts_opt,
        'opt_method': method,
        'wall_ms': None,
    }
    if config.timing:
        row['wall_ms'] = round((perf_counter() - started) * 1000)
    return row


def _run_task(task: tuple[SyntheticConfig, int, int]) -> dict[str, Any]:
    return run_instance(*task)


def iter_synthetic(config: SyntheticConfig, workers: int = 1) -> Iterator[dict[str, Any]]:
    """Rows in (n, instance) order, however many worker processes compute them."""
    tasks = [(config, n, instance) for n in config.n_list for instance in range(config.instances)]
    if workers <= 1:
        yield from map(_run_task, tasks)
        return

    with ProcessPoolExecutor(max_workers=workers) as pool:
        try:
            yield from pool.map(_run_task, tasks)
        except:
            # Don't wait for queued instances on Ctrl-C or a failing instance.
            pool.shutdown(wait=False, cancel_futures=True)
            raise


def results_frame(rows: Sequence[dict[str, Any]]) -> pd.DataFrame:
    frame = pd.DataFrame(list(rows), columns=CSV_COLUMNS)
    return frame.astype({column: 'Int64' for column in ['n', 'seed', 'instance', *SIZE_COLUMNS]})


def with_summary_rows(results: pd.DataFrame) -> pd.DataFrame:
    """Instance rows of each (model, n) followed by a `mean` and a `std` row."""
    parts: list[pd.DataFrame] = []
    for (model, n), group in results.groupby(['model', 'n'], sort=False):
        parts.append(group.astype(object))
        for label, values in (('mean', group[SIZE_COLUMNS].mean()), ('std', group[SIZE_COLUMNS].std())):
            summary = {'model': model, 'n': n, 'seed': group['seed'].iloc[0], 'instance': label, 'opt_method': ''}
            summary.update({column: values[column] for column in SIZE_COLUMNS})
            parts.append(pd.DataFrame([summary], columns=CSV_COLUMNS, dtype=object))
    if not parts:
        return pd.DataFrame(columns=CSV_COLUMNS)
    return pd.concat(parts, ignore_index=True)


def _cell(value: Any) -> str:
    if value is None or value is pd.NA or (isinstance(value, float) and pd.isna(value)):
        return ''
    if isinstance(value, float):
        return f'{value:.3f}'
    return str(value)


def write_csv(report: pd.DataFrame, out: Path | TextIO) -> None:
    """Write with fixed number formatting, so runs with the same seed produce the same bytes."""
    report.map(_cell).to_csv(out, index=False, lineterminator='\n')


class Observations(NamedTuple):
    instances: int
    with_optima: int
    tts_opt_below_ts_opt: int
    tts_greedy_at_most_ts_greedy: int


def observe(results: pd.DataFrame) -> Observations:
    solved = results.dropna(subset=['ts_opt', 'tts_opt'])
    return Observations(
        instances=len(results),
        with_optima=len(solved),
        tts_opt_below_ts_opt=int((solved['tts_opt'] < solved['ts_opt']).sum()),
        tts_greedy_at_most_ts_greedy=int((results['tts_greedy'] <= results['ts_greedy']).sum()),
    )


class RealReport(NamedTuple):
    source: str
    n: int
    m: int
    ts_greedy: int
    tts_greedy: int
    reference: Optional[Dataset]

    @property
    def improvement(self) -> float:
        """(TS - TTS) / TS as a percentage."""
        return 100 * (self.ts_greedy - self.tts_greedy) / self.ts_greedy if self.ts_greedy else 0.0

    @property
    def node_count_matches(self) -> Optional[bool]:
        return None if self.reference is None else self.reference.nodes == self.n


def experiment_real(source: Path | str, rule: str = 'strict', *, allow_download: bool = True) -> RealReport:
    """
    Both greedy algorithms on a large edge list, read as undirected.

    `source` is a path or the name of a known dataset, which is downloaded into the cache if needed.
    """
    reference = None
    path = Path(source)
    if isinstance(source, str) and source in DATASETS and not path.exists():
        reference = DATASETS[source]
        path = fetch_dataset(source, allow_download=allow_download)

    labeled = read_edge_list(path, drop_self_loops=True)
    g = labeled.graph
    tau = resolve_rule(g, labeled.labels, rule)
    return RealReport(str(source), g.n, g.m, len(ts_greedy(g, tau)), tts_greedy(g, tau).size, reference)
