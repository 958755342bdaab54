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

"""Graph generators: fixture constructions and seeded random models."""

from math import ceil
from typing import NamedTuple

import networkx as nx
import numpy as np

from timed_targets.dynamics import default_max_steps
from timed_targets.errors import InvalidParameter
from timed_targets.graph import Graph, build_graph, strict_majority
from timed_targets.schedule import Schedule, verify_tts


def rng_for(seed: int, instance: int = 0) -> np.random.Generator:
    """
    The random source of every seeded generator: PCG64 keyed by (seed, instance).

    Each instance index gets an independent stream, so instances can be generated in any order.
    """
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(instance,))))


def gen_star(n: int) -> Graph:
    """K_{1,n-1} with node 0 as the center."""
    if n < 2:
        raise InvalidParameter(f"A star needs at least 2 nodes, got {n}")
    return build_graph(n, ((0, leaf) for leaf in range(1, n)))


def gen_complete_bipartite(a: int, b: int) -> Graph:
    """K_{a,b} with the left side on ids 0..a-1."""
    if a < 1 or b < 1:
        raise InvalidParameter(f"Both sides of K_{{a,b}} must be non-empty, got a={a}, b={b}")
    return build_graph(a + b, ((u, a + v) for u in range(a) for v in range(b)))


def gen_cycle(n: int) -> Graph:
    if n < 3:
        raise InvalidParameter(f"A cycle needs at least 3 nodes, got {n}")
    return build_graph(n, ((v, (v + 1) % n) for v in range(n)))


def gen_path(n: int) -> Graph:
    if n < 1:
        raise InvalidParameter(f"A path needs at least 1 node, got {n}")
    return build_graph(n, ((v, v + 1) for v in range(n - 1)))


class TowerLayers(NamedTuple):
    layers: tuple[tuple[int, ...], ...]
    leaves: tuple[int, int]


def tower_layers(kappa: int) -> TowerLayers:
    """Node ids of the layers L_1..L_κ (layer L_i starts at id i(i-1)/2) and of the two leaves."""
    if kappa < 2:
        raise InvalidParameter(f"A tower needs at least 2 layers, got {kappa}")
    layers = tuple(tuple(range(i * (i - 1) // 2, i * (i + 1) // 2)) for i in range(1, kappa + 1))
    first_leaf = kappa * (kappa + 1) // 2
    return TowerLayers(layers, (first_leaf, first_leaf + 1))


def gen_tower(kappa: int) -> Graph:
    """
    Layers of sizes 1..κ with complete joins between consecutive layers,
    plus two leaves hanging off the single node of the first layer.
    """
    layers, leaves = tower_layers(kappa)
    edges = [(u, v) for upper, lower in zip(layers, layers[1:]) for u in upper for v in lower]
    edges.extend((layers[0][0], leaf) for leaf in leaves)
    return build_graph(leaves[1] + 1, edges)


def tower_reference_dtts(kappa: int) -> Schedule:
    """
    A disjoint timed target set of the tower under strict majority, of size κ + ⌈κ/2⌉ + 2.

    S_0 holds the last layer and the ⌈κ/2⌉ lowest ids of the layer before it;
    S_{κ-2} holds the first-layer node and its lower-id leaf.
    """
    if kappa < 3:
        raise InvalidParameter(f"The reference schedule needs at least 3 layers, got {kappa}")
    layers, leaves = tower_layers(kappa)

    sets: list[frozenset[int]] = [frozenset()] * kappa
    sets[0] = frozenset(layers[-1]) | frozenset(layers[-2][:ceil(kappa / 2)])
    sets[kappa - 2] = frozenset({layers[0][0], leaves[0]})
    sched = Schedule(tuple(sets))

    g = gen_tower(kappa)
    tau = strict_majority(g)
    for _ in range(default_max_steps(g)):
        if verify_tts(g, tau, sched):
            return sched
        sched = sched.extended()
    raise AssertionError(f"Tower reference schedule for kappa={kappa} never completes")


def gen_ba(n: int, m_attach: int, seed: int, instance: int = 0) -> Graph:
    """
    Barabási–Albert graph: a clique on m_attach+1 nodes, then every new node attaches
    to m_attach distinct earlier nodes drawn without replacement with probability
    proportional to their degree.
    """
    if n < 1:
        raise InvalidParameter(f"n must be at least 1, got {n}")
    if m_attach < 1:
        raise InvalidParameter(f"m_attach must be at least 1, got {m_attach}")

    rng = rng_for(seed, instance)
    core = min(n, m_attach + 1)
    edges = [(u, v) for u in range(core) for v in range(u + 1, core)]
    degrees = np.zeros(n, dtype=np.int64)
    degrees[:core] = core - 1

    for new in range(core, n):
        weights = degrees[:new] / degrees[:new].sum()
        targets = rng.choice(new, size=m_attach, replace=False, p=weights)
        for target in sorted(int(t) for t in targets):
            edges.append((target, new))
            degrees[target] += 1
        degrees[new] = m_attach

    return build_graph(n, edges)


def gen_er(n: int, p: float, seed: int, instance: int = 0) -> Graph:
    """Erdős–Rényi G(n, p): each pair (u < v), in lexicographic order, is kept with probability p."""
    if n < 1:
        raise InvalidParameter(f"n must be at least 1, got {n}")
    if not 0.0 <= p <= 1.0:
        raise InvalidParameter(f"p must lie in [0, 1], got {p}")

    rng = rng_for(seed, instance)
    rows, cols = np.triu_indices(n, k=1)
    keep = rng.random(rows.size) < p
    return build_graph(n, zip(rows[keep].tolist(), cols[keep].tolist()))


def gen_random_tree(n: int, seed: int, instance: int = 0) -> Graph:
    """A uniformly random labeled tree, decoded from a random Prüfer sequence."""
    if n < 1:
        raise InvalidParameter(f"n must be at least 1, got {n}")
    if n <= 2:
        return gen_path(n)

    rng = rng_for(seed, instance)
    sequence = rng.integers(0, n, size=n - 2).tolist()
    return Graph.from_networkx(nx.from_prufer_sequence(sequence))


def ba_attachment(avg_degree: float) -> int:
    """BA attachment count giving an average degree of about `avg_degree`."""
    return max(1, round(avg_degree / 2))


def er_probability(n: int, avg_degree: float) -> float:
    """ER edge probability giving an expected average degree of `avg_degree`."""
    return 0.0 if n < 2 else min(1.0, avg_degree / (n - 1))
