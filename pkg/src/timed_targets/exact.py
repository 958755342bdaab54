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

"""Exact minimum timed target sets and target sets for small graphs."""

from collections import deque
from itertools import combinations, islice
from typing import NamedTuple

import numpy as np

from timed_targets.dynamics import Model, batch_reaches_all_positive, stepper
from timed_targets.errors import NodeCapExceeded
from timed_targets.graph import Graph, ThresholdAssignment, require_valid_thresholds
from timed_targets.schedule import Schedule

TTS_NODE_CAP = 20
DTTS_NODE_CAP = 12
TS_NODE_CAP = 20

# Chunk of candidate target sets evaluated together by `min_ts_exact()`.
TS_BATCH_SIZE = 4096

_ADVANCE = -1


class ExactSchedule(NamedTuple):
    size: int
    schedule: Schedule


class ExactTargetSet(NamedTuple):
    size: int
    targets: frozenset[int]


def _check_cap(g: Graph, node_cap: int) -> None:
    if g.n > node_cap:
        raise NodeCapExceeded(g.n, node_cap)


def _shortest_schedule(g: Graph, tau: ThresholdAssignment, disjoint: bool) -> ExactSchedule:
    """
    0-1 breadth-first search over the positive set of the current step.

    Targeting a node is a cost-1 edge A -> A ∪ {v}; advancing time is a cost-0 edge
    A -> step(A). The search ends on the first settled state whose advance is V, so
    the last set of the schedule is empty. With `disjoint`, the state also carries the
    set of nodes targeted so far (in the bits above n), and those cannot be targeted again.
    """
    if g.n == 0:
        return ExactSchedule(0, Schedule.of(()))

    n, full = g.n, g.full_mask
    advance = stepper(g, tau)
    bits = [1 << v for v in range(n)]

    dist: dict[int, int] = {0: 0}
    parent: dict[int, tuple[int, int]] = {}
    settled: set[int] = set()
    queue = deque([0])

    while queue:
        state = queue.popleft()
        if state in settled:
            continue
        settled.add(state)
        cost = dist[state]
        positive, used = state & full, state >> n

        following = advance(positive)
        if following == full:
            return ExactSchedule(cost, _unwind(parent, state, n))

        successor = following | used << n
        if dist.get(successor, cost + 1) > cost:
            dist[successor] = cost
            parent[successor] = (state, _ADVANCE)
            queue.appendleft(successor)

        blocked = positive | used if disjoint else positive
        for v, bit in enumerate(bits):
            if blocked & bit:
                continue
            successor = (positive | bit) | ((used | bit) << n if disjoint else 0)
            if dist.get(successor, cost + 2) > cost + 1:
                dist[successor] = cost + 1
                parent[successor] = (state, v)
                queue.append(successor)

    raise AssertionError("Targeting every node always reaches V")


def _unwind(parent: dict[int, tuple[int, int]], state: int, n: int) -> Schedule:
    actions: list[int] = []
    while state in parent:
        state, action = parent[state]
        actions.append(action)

    sets: list[frozenset[int]] = []
    current: set[int] = set()
    for action in reversed(actions):
        if action == _ADVANCE:
            sets.append(frozenset(current))
            current = set()
        else:
            current.add(action)
    sets.append(frozenset(current))
    sets.append(frozenset())
    return Schedule(tuple(sets))


def min_tts_exact(g: Graph, tau: ThresholdAssignment, node_cap: int = TTS_NODE_CAP) -> ExactSchedule:
    """The minimum size of a timed target set, and one schedule attaining it."""
    _check_cap(g, node_cap)
    require_valid_thresholds(g, tau)
    return _shortest_schedule(g, tau, disjoint=False)


def min_dtts_exact(g: Graph, tau: ThresholdAssignment, node_cap: int = DTTS_NODE_CAP) -> ExactSchedule:
    """The minimum size of a timed target set that targets every node at most once."""
    _check_cap(g, node_cap)
    require_valid_thresholds(g, tau)
    return _shortest_schedule(g, tau, disjoint=True)


def min_ts_exact(g: Graph, tau: ThresholdAssignment, model: Model = Model.NON_PROGRESSIVE,
                 node_cap: int = TS_NODE_CAP) -> ExactTargetSet:
    """The smallest target set, by enumerating candidates in ascending size and lexicographic order."""
    _check_cap(g, node_cap)
    require_valid_thresholds(g, tau)

    for size in range(g.n + 1):
        candidates = combinations(range(g.n), size)
        while chunk := list(islice(candidates, TS_BATCH_SIZE)):
            confs = np.zeros((len(chunk), g.n), dtype=bool)
            if size:
                confs[np.arange(len(chunk))[:, None], np.array(chunk)] = True
            hits = np.flatnonzero(batch_reaches_all_positive(g, tau, confs, model))
            if hits.size:
                return ExactTargetSet(size, frozenset(chunk[hits[0]]))

    raise AssertionError("V is always a target set")
