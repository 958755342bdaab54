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

"""Greedy timed target sets and the classic greedy target set."""

from timed_targets.graph import Graph, ThresholdAssignment, require_valid_thresholds
from timed_targets.schedule import Schedule


def degree_order(g: Graph) -> list[int]:
    """Nodes by ascending degree, ties broken by ascending id."""
    return sorted(range(g.n), key=lambda v: (g.degree(v), v))


def tts_greedy(g: Graph, tau: ThresholdAssignment) -> Schedule:
    """
    Build a timed target set of the form (S_0, S_1, ∅).

    Nodes are swept by ascending degree. A neighbor u of the current node is blocked
    when its unselected neighbors already number d(u) - τ(u). A node with no blocked
    neighbor is left unselected; with several, it joins S_0. With exactly one blocked
    neighbor w of higher degree, w joins S_1 instead and stops blocking (τ(w) drops
    to 0 on a working copy); otherwise the node joins S_0.
    """
    require_valid_thresholds(g, tau)
    degrees = g.degrees
    working_tau = list(tau)
    unselected = [0] * g.n
    first: set[int] = set()
    second: set[int] = set()

    for v in degree_order(g):
        blocked = [u for u in g.adjacency[v] if unselected[u] == degrees[u] - working_tau[u]]

        if not blocked:
            for u in g.adjacency[v]:
                unselected[u] += 1
        elif len(blocked) > 1:
            first.add(v)
        elif degrees[w := blocked[0]] > degrees[v]:
            for u in g.adjacency[v]:
                unselected[u] += 1
            second.add(w)
            working_tau[w] = 0
        else:
            first.add(v)

    return Schedule((frozenset(first), frozenset(second), frozenset()))


def ts_greedy(g: Graph, tau: ThresholdAssignment) -> frozenset[int]:
    """The same sweep without S_1: any blocked neighbor puts the node in the target set."""
    require_valid_thresholds(g, tau)
    degrees = g.degrees
    unselected = [0] * g.n
    targets: set[int] = set()

    for v in degree_order(g):
        if any(unselected[u] == degrees[u] - tau[u] for u in g.adjacency[v]):
            targets.add(v)
        else:
            for u in g.adjacency[v]:
                unselected[u] += 1

    return frozenset(targets)
