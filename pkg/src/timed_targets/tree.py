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

"""Exact minimum timed target sets on trees."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from timed_targets.dynamics import configuration, stepper
from timed_targets.errors import NotATree
from timed_targets.graph import Graph, ThresholdAssignment, is_tree, require_valid_thresholds
from timed_targets.schedule import Schedule, require_tts


class NodeClass(str, Enum):
    LEAF = 'leaf'
    A_PRIME = "A'"
    A_DOUBLE_PRIME = "A''"
    B = 'B'
    C = 'C'


A_CLASSES = frozenset({NodeClass.A_PRIME, NodeClass.A_DOUBLE_PRIME})


@dataclass(frozen=True)
class TreeClassification:
    root: int
    leaf_count: tuple[int, ...]
    nonleaf_count: tuple[int, ...]
    classes: tuple[NodeClass, ...]

    def members(self, *classes: NodeClass) -> frozenset[int]:
        return frozenset(v for v, cls in enumerate(self.classes) if cls in classes)

    @property
    def a(self) -> frozenset[int]:
        return self.members(*A_CLASSES)


def _require_tree(tree: Graph, tau: ThresholdAssignment) -> None:
    if not is_tree(tree):
        raise NotATree(f"Expected a tree, got a graph with {tree.n} nodes and {tree.m} edges")
    require_valid_thresholds(tree, tau)


def _classify(tau: int, degree: int, nonleaf: int) -> NodeClass:
    if tau > nonleaf:
        return NodeClass.A_DOUBLE_PRIME if tau == degree else NodeClass.A_PRIME
    return NodeClass.B if tau < nonleaf else NodeClass.C


def choose_root(tree: Graph, tau: ThresholdAssignment) -> int:
    """The lowest-id node of A'' ∪ C, else the lowest-id internal node, else node 0."""
    degrees = tree.degrees
    internal = [v for v in range(tree.n) if degrees[v] > 1]
    for v in internal:
        nonleaf = sum(1 for u in tree.adjacency[v] if degrees[u] > 1)
        if _classify(tau[v], degrees[v], nonleaf) in (NodeClass.A_DOUBLE_PRIME, NodeClass.C):
            return v
    return internal[0] if internal else 0


def classify_nodes(tree: Graph, tau: ThresholdAssignment, root: Optional[int] = None) -> TreeClassification:
    """Split the internal nodes into A', A'', B and C. The root always counts as internal."""
    _require_tree(tree, tau)
    if root is None:
        root = choose_root(tree, tau)

    def is_leaf(v: int) -> bool:
        return v != root and tree.degree(v) <= 1

    leaf_count = tuple(sum(1 for u in tree.adjacency[v] if is_leaf(u)) for v in range(tree.n))
    nonleaf_count = tuple(tree.degree(v) - leaf_count[v] for v in range(tree.n))
    classes = tuple(
        NodeClass.LEAF if is_leaf(v) else _classify(tau[v], tree.degree(v), nonleaf_count[v])
        for v in range(tree.n)
    )
    return TreeClassification(root, leaf_count, nonleaf_count, classes)


def tree_lower_bound_2A(tree: Graph, tau: ThresholdAssignment) -> int:
    """
    2|A|, where leaf neighbors with τ = 0 are first folded into their parent's threshold.

    Every node of A needs two targeted occurrences within itself and its leaves.
    """
    cls = classify_nodes(tree, tau)
    count = 0
    for v in range(tree.n):
        if cls.classes[v] is NodeClass.LEAF:
            continue
        zero_leaves = sum(1 for u in tree.adjacency[v] if cls.classes[u] is NodeClass.LEAF and tau[u] == 0)
        if tau[v] > cls.nonleaf_count[v] + zero_leaves:
            count += 1
    return 2 * count


@dataclass
class _Frozen:
    """What the schedule construction needs to know about a node once its piece is settled."""
    targeted: bool = False
    regular: list[int] = field(default_factory=list)
    after: list[int] = field(default_factory=list)
    heads: list[int] = field(default_factory=list)
    zeros: list[int] = field(default_factory=list)

    def children(self) -> list[int]:
        return self.regular + self.after + self.heads + self.zeros


class _Sweep:
    """
    The bottom-up reduction sweep over a rooted tree.

    Removed subtrees are split off in one of three ways: a zero-threshold node takes
    its subtree along and lowers its parent's threshold; an A'' node does the same and
    counts as targeted; a C node keeps its place as a threshold-one leaf of its parent.
    Every node is frozen with its class and its children at the moment its piece is cut.
    """

    def __init__(self, tree: Graph, tau: ThresholdAssignment):
        self.tree = tree
        self.root = choose_root(tree, tau)
        self.tau = list(tau)
        self.degree = list(tree.degrees)
        self.alive = [True] * tree.n
        self.heads: list[list[int]] = [[] for _ in range(tree.n)]
        self.zeros: list[list[int]] = [[] for _ in range(tree.n)]
        self.frozen: dict[int, _Frozen] = {}

        self.parent = [-1] * tree.n
        self.children: list[list[int]] = [[] for _ in range(tree.n)]
        self.levels: list[list[int]] = []
        self._root_tree()

        for level in reversed(self.levels[1:]):
            for u in level:
                if self.alive[u]:
                    self._process(u)
        self._freeze(self.root, head_targeted=None)

    def _root_tree(self) -> None:
        seen = [False] * self.tree.n
        seen[self.root] = True
        frontier = [self.root]
        while frontier:
            self.levels.append(sorted(frontier))
            following = []
            for v in frontier:
                for u in self.tree.adjacency[v]:
                    if not seen[u]:
                        seen[u] = True
                        self.parent[u] = v
                        self.children[v].append(u)
                        following.append(u)
            frontier = following

    def is_leaf(self, v: int) -> bool:
        return v != self.root and self.degree[v] <= 1

    def nonleaf_count(self, v: int) -> int:
        return sum(1 for u in self.tree.adjacency[v] if self.alive[u] and not self.is_leaf(u))

    def is_a(self, v: int) -> bool:
        return not self.is_leaf(v) and self.tau[v] > self.nonleaf_count(v)

    def _process(self, u: int) -> None:
        z = self.parent[u]
        if self.tau[u] == 0:
            self._cut(u, z, head_targeted=False)
            self.zeros[z].append(u)
        elif self.is_leaf(u):
            return
        elif self.tau[u] == self.degree[u] and self.tau[u] > self.nonleaf_count(u):
            self._cut(u, z, head_targeted=True)
            self.heads[z].append(u)
        elif self.tau[u] == self.nonleaf_count(u):
            for child in self._alive_children(u):
                self._freeze(child, head_targeted=None)
            self._record(u, targeted=False)
            for child in self._alive_children(u):
                self._remove(child)
            self.degree[u] = 1
            self.tau[u] = 1

    def _cut(self, u: int, z: int, head_targeted: bool) -> None:
        self._freeze(u, head_targeted)
        self._remove(u)
        self.degree[z] -= 1
        self.tau[z] = max(0, self.tau[z] - 1)

    def _alive_children(self, v: int) -> list[int]:
        return [c for c in self.children[v] if self.alive[c]]

    def _subtree(self, u: int) -> list[int]:
        nodes, stack = [], [u]
        while stack:
            v = stack.pop()
            nodes.append(v)
            stack.extend(self._alive_children(v))
        return nodes

    def _record(self, v: int, targeted: bool) -> None:
        children = self._alive_children(v)
        entry = self.frozen.setdefault(v, _Frozen(
            regular=[c for c in children if not self.is_leaf(c)],
            after=[c for c in children if self.is_leaf(c)],
            heads=self.heads[v],
            zeros=self.zeros[v],
        ))
        entry.targeted = targeted

    def _freeze(self, u: int, head_targeted: Optional[bool]) -> None:
        """Freeze the alive subtree of u; `head_targeted` overrides the class of u itself."""
        for v in self._subtree(u):
            targeted = head_targeted if v == u and head_targeted is not None else self.is_a(v)
            self._record(v, targeted)

    def _remove(self, u: int) -> None:
        for v in self._subtree(u):
            self.alive[v] = False

    @property
    def targeted(self) -> list[int]:
        return sorted(v for v, entry in self.frozen.items() if entry.targeted)


def min_tts_tree_size(tree: Graph, tau: ThresholdAssignment) -> int:
    _require_tree(tree, tau)
    return 2 * len(_Sweep(tree, tau).targeted)


def construct_tts_tree(tree: Graph, tau: ThresholdAssignment) -> Schedule:
    """
    Build a minimum timed target set of a tree.

    Every targeted node of the sweep is made positive at a start time and kept positive
    by targeting until the rule takes over, which costs exactly two targetings. Start
    times are laid out bottom-up so that a node's children are positive in time, then
    shifted top-down so that split-off subtrees line up with their attachment point.
    """
    _require_tree(tree, tau)
    sweep = _Sweep(tree, tau)
    frozen = sweep.frozen

    order: list[int] = []
    stack = [sweep.root]
    while stack:
        v = stack.pop()
        order.append(v)
        stack.extend(frozen[v].children())

    ready = [0] * tree.n
    for v in reversed(order):
        entry = frozen[v]
        ready[v] = max(
            [0]
            + [ready[w] + (0 if frozen[w].targeted else 1) for w in entry.regular + entry.zeros]
            + [ready[c] for c in entry.heads + entry.after]
        )

    start = [0] * tree.n
    start[sweep.root] = ready[sweep.root]
    for v in order:
        entry = frozen[v]
        for w in entry.regular + entry.zeros:
            start[w] = ready[w]
        for h in entry.heads:
            start[h] = start[v]
        for c in entry.after:
            start[c] = start[v] + (0 if entry.targeted else 1)

    starts_at: dict[int, list[int]] = {}
    for v in sweep.targeted:
        starts_at.setdefault(start[v], []).append(v)

    sched = _keep_alive(tree, tau, starts_at, limit=max(start, default=0) + 2 * tree.n + 4)
    require_tts(tree, tau, sched)
    return sched


def _keep_alive(g: Graph, tau: ThresholdAssignment, starts_at: dict[int, list[int]], limit: int) -> Schedule:
    """Target each node from its start time on for as long as the rule does not keep it positive."""
    advance = stepper(g, tau)
    sets: list[frozenset[int]] = []
    positive = 0
    for i in range(limit):
        rule = advance(positive) if i else 0
        if rule == g.full_mask:
            sets.append(frozenset())
            return Schedule(tuple(sets))
        targeted = (positive | configuration(starts_at.get(i, ()))) & ~rule
        sets.append(frozenset(v for v in range(g.n) if targeted >> v & 1))
        positive = rule | targeted
    raise AssertionError("Tree schedule did not make every node positive")
