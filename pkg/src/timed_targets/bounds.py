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

"""Closed-form lower bounds on the minimum timed target set size."""

from collections.abc import Callable
from typing import NamedTuple

from timed_targets.errors import BoundInapplicable
from timed_targets.graph import Graph, ThresholdAssignment, is_even_graph, is_tree, strict_majority
from timed_targets.tree import tree_lower_bound_2A


class LowerBound(NamedTuple):
    value: int
    which: str


def _require_strict_majority(g: Graph, tau: ThresholdAssignment) -> None:
    if tau != strict_majority(g):
        raise BoundInapplicable("The bound only holds for the strict majority thresholds")
    if 0 in g.degrees:
        raise BoundInapplicable("The bound only holds for graphs without isolated nodes")


def lb_strict_majority(g: Graph, tau: ThresholdAssignment) -> int:
    """⌈2n/(Δ+1)⌉"""
    _require_strict_majority(g, tau)
    return -(-2 * g.n // (g.max_degree + 1))


def lb_even(g: Graph, tau: ThresholdAssignment) -> int:
    """⌈4n/(Δ+2)⌉, for graphs where every degree is even."""
    _require_strict_majority(g, tau)
    if not is_even_graph(g):
        raise BoundInapplicable("The bound only holds for graphs where every degree is even")
    return -(-4 * g.n // (g.max_degree + 2))


def _lb_tree(g: Graph, tau: ThresholdAssignment) -> int:
    if not is_tree(g):
        raise BoundInapplicable("The bound only holds for trees")
    return tree_lower_bound_2A(g, tau)


BOUNDS: dict[str, Callable[[Graph, ThresholdAssignment], int]] = {
    'strict': lb_strict_majority,
    'even': lb_even,
    'tree-2A': _lb_tree,
}


def applicable_bounds(g: Graph, tau: ThresholdAssignment) -> dict[str, int | None]:
    """Every bound by name, with None where it does not apply."""
    values: dict[str, int | None] = {}
    for name, bound in BOUNDS.items():
        try:
            values[name] = bound(g, tau)
        except BoundInapplicable:
            values[name] = None
    return values


def best_lower_bound(g: Graph, tau: ThresholdAssignment) -> LowerBound:
    """The largest applicable bound; ties go to the bound listed first. `(0, 'none')` if none applies."""
    best = LowerBound(0, 'none')
    for name, value in applicable_bounds(g, tau).items():
        if value is not None and (best.which == 'none' or value > best.value):
            best = LowerBound(value, name)
    return best
