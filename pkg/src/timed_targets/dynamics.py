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

"""Progressive and non-progressive threshold dynamics over bit-mask configurations."""

from dataclasses import dataclass
from enum import Enum
from typing import Optional, TypeAlias
from collections.abc import Callable, Iterable

import numpy as np
import numpy.typing as npt

from timed_targets.errors import OrbitTooLong
from timed_targets.graph import Graph, ThresholdAssignment


class Model(str, Enum):
    PROGRESSIVE = 'progressive'
    NON_PROGRESSIVE = 'non-progressive'


# Bit v is set iff node v is positive.
Configuration: TypeAlias = int


def configuration(nodes: Iterable[int]) -> Configuration:
    conf = 0
    for v in nodes:
        conf |= 1 << v
    return conf


def positive_nodes(conf: Configuration) -> list[int]:
    nodes = []
    v = 0
    while conf:
        if conf & 1:
            nodes.append(v)
        conf >>= 1
        v += 1
    return nodes


def bit_string(conf: Configuration, n: int) -> str:
    return ''.join('1' if conf >> v & 1 else '0' for v in range(n))


def default_max_steps(g: Graph) -> int:
    return 4 * g.m + 2 * g.n + 4


def stepper(g: Graph, tau: ThresholdAssignment,
            model: Model = Model.NON_PROGRESSIVE) -> Callable[[Configuration], Configuration]:
    """Precompute the per-node rule of `step()` for repeated use on one (graph, thresholds) pair."""
    rules = [(1 << v, mask, t) for v, (mask, t) in enumerate(zip(g.neighbor_masks, tau))]

    def non_progressive(conf: Configuration) -> Configuration:
        result = 0
        for bit, mask, t in rules:
            if (conf & mask).bit_count() >= t:
                result |= bit
        return result

    if model is Model.PROGRESSIVE:
        return lambda conf: conf | non_progressive(conf)
    return non_progressive


def step(g: Graph, tau: ThresholdAssignment, conf: Configuration,
         model: Model = Model.NON_PROGRESSIVE) -> Configuration:
    return stepper(g, tau, model)(conf)


@dataclass(frozen=True)
class OrbitResult:
    transient_length: int
    cycle_length: int
    cycle_configs: tuple[Configuration, ...]
    saw_all_positive: bool
    trace: Optional[tuple[Configuration, ...]] = None


def run_to_limit(g: Graph, tau: ThresholdAssignment, conf: Configuration,
                 max_steps: Optional[int] = None,
                 model: Model = Model.NON_PROGRESSIVE,
                 keep_trace: bool = False) -> OrbitResult:
    """
    Iterate `step()` from `conf` until a configuration repeats.

    Raises `OrbitTooLong` if no configuration repeats within `max_steps` steps
    (default 4m + 2n + 4).
    """
    if max_steps is None:
        max_steps = default_max_steps(g)
    if max_steps < 1:
        raise ValueError("max_steps must be at least 1")

    advance = stepper(g, tau, model)
    seen: dict[Configuration, int] = {}
    configs: list[Configuration] = []

    for i in range(max_steps + 1):
        if conf in seen:
            start = seen[conf]
            return OrbitResult(
                transient_length=start,
                cycle_length=i - start,
                cycle_configs=tuple(configs[start:]),
                saw_all_positive=g.full_mask in seen,
                trace=tuple(configs) if keep_trace else None,
            )
        seen[conf] = i
        configs.append(conf)
        conf = advance(conf)

    raise OrbitTooLong(f"No configuration repeated within {max_steps} steps")


def reaches_all_positive(g: Graph, tau: ThresholdAssignment, conf: Configuration,
                         model: Model = Model.NON_PROGRESSIVE) -> bool:
    return run_to_limit(g, tau, conf, model=model).saw_all_positive


def adjacency_matrix(g: Graph) -> npt.NDArray[np.int32]:
    matrix = np.zeros((g.n, g.n), dtype=np.int32)
    if g.edges:
        u, v = np.array(g.edges).T
        matrix[u, v] = 1
        matrix[v, u] = 1
    return matrix


def batch_reaches_all_positive(g: Graph, tau: ThresholdAssignment, confs: npt.NDArray[np.bool_],
                               model: Model = Model.NON_PROGRESSIVE,
                               max_steps: Optional[int] = None) -> npt.NDArray[np.bool_]:
    """
    Vectorized `reaches_all_positive()` over the rows of a boolean (configurations × n) matrix.

    Stops as soon as every row has entered a cycle of length at most two.
    """
    if max_steps is None:
        max_steps = default_max_steps(g)
    adjacency = adjacency_matrix(g)
    tau_row = np.asarray(tau.tau, dtype=np.int32)

    state = confs.astype(bool, copy=True)
    reached = state.all(axis=1)
    previous = None
    for _ in range(max_steps):
        following = (state.astype(np.int32) @ adjacency) >= tau_row
        if model is Model.PROGRESSIVE:
            following |= state
        reached |= following.all(axis=1)
        if previous is not None and np.array_equal(following, previous):
            break
        previous, state = state, following
    return reached
