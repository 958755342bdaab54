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

"""Graph constructions that relate the problem variants to each other."""

from typing import NamedTuple

from timed_targets.graph import Graph, ThresholdAssignment, build_graph, require_valid_thresholds, thresholds


class DoubleCover(NamedTuple):
    """`copies[v]` is the pair (x_v, y_v) of ids in the cover."""
    graph: Graph
    tau: ThresholdAssignment
    copies: tuple[tuple[int, int], ...]


class Gadgets(NamedTuple):
    """`pairs[v]` lists the triangle pairs attached to the original node v."""
    graph: Graph
    tau: ThresholdAssignment
    pairs: tuple[tuple[tuple[int, int], ...], ...]


def bipartite_double_cover(g: Graph, tau: ThresholdAssignment) -> DoubleCover:
    """
    The cover H with x_i = i and y_i = n + i, and edges x_i y_j, x_j y_i for every edge v_i v_j.

    Both copies of v keep τ(v). The minimum timed target set of H is twice the one of G.
    """
    require_valid_thresholds(g, tau)
    n = g.n
    edges = [pair for u, v in g.edges for pair in ((u, n + v), (v, n + u))]
    return DoubleCover(build_graph(2 * n, edges), thresholds((*tau, *tau)),
                       tuple((v, n + v) for v in range(n)))


def hardness_gadget(h: Graph, tau: ThresholdAssignment) -> Gadgets:
    """
    Attach ⌈d(v)/2⌉ triangles to every node v of `h`.

    Each triangle is a new adjacent pair (a, b) with both ends joined to v. Pairs are numbered
    after the original nodes, by ascending v and then in attachment order. Original nodes keep
    their threshold and pair nodes get 1. The minimum timed target set of the result equals the
    minimum progressive target set of `h`.
    """
    require_valid_thresholds(h, tau)
    edges = list(h.edges)
    values = list(tau)
    pairs: list[tuple[tuple[int, int], ...]] = []
    next_id = h.n

    for v in range(h.n):
        attached = []
        for _ in range((h.degree(v) + 1) // 2):
            a, b = next_id, next_id + 1
            next_id += 2
            edges.extend(((a, b), (a, v), (b, v)))
            values.extend((1, 1))
            attached.append((a, b))
        pairs.append(tuple(attached))

    return Gadgets(build_graph(next_id, edges), thresholds(values), tuple(pairs))
