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

"""Graphs, threshold assignments, and their text formats."""

import csv
from dataclasses import dataclass
from functools import cached_property
from io import StringIO
from pathlib import Path
from typing import NamedTuple, TextIO
from collections.abc import Callable, Iterable, Iterator, Sequence

import networkx as nx
import numpy as np
import pandas

from timed_targets.errors import GraphError, InputError, ThresholdError

# Never occurs in an edge list, so `read_csv` yields whole lines.
LINE_SEPARATOR = '\x1f'


@dataclass(frozen=True)
class Graph:
    """
    An immutable simple undirected graph on the nodes 0..n-1.

    Build instances with `build_graph()`, which deduplicates and validates the edges.
    """
    n: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[int, ...], ...]

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(neighbors) for neighbors in self.adjacency)

    @cached_property
    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    @cached_property
    def neighbor_masks(self) -> tuple[int, ...]:
        """Bit masks of N(v), the representation used by the dynamics."""
        return tuple(sum(1 << u for u in neighbors) for neighbors in self.adjacency)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g

    @classmethod
    def from_networkx(cls, g: nx.Graph) -> 'Graph':
        """Convert a networkx graph, numbering its nodes in iteration order."""
        index = {node: i for i, node in enumerate(g.nodes)}
        return build_graph(len(index), ((index[u], index[v]) for u, v in g.edges))


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    if n < 0:
        raise GraphError(f"Node count must be non-negative, got {n}")

    unique_edges: set[tuple[int, int]] = set()
    for u, v in edges:
        u, v = int(u), int(v)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"Edge ({u}, {v}) has a node id outside of [0, {n})")
        if u == v:
            raise GraphError(f"Self-loop at node {u}")
        unique_edges.add((u, v) if u < v else (v, u))

    adjacency: list[list[int]] = [[] for _ in range(n)]
    for u, v in unique_edges:
        adjacency[u].append(v)
        adjacency[v].append(u)

    return Graph(
        n=n,
        edges=tuple(sorted(unique_edges)),
        adjacency=tuple(tuple(sorted(neighbors)) for neighbors in adjacency),
    )


@dataclass(frozen=True)
class ThresholdAssignment:
    """Per-node thresholds τ(v), stored by value."""
    tau: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.tau)

    def __getitem__(self, v: int) -> int:
        return self.tau[v]

    def __iter__(self) -> Iterator[int]:
        return iter(self.tau)


def thresholds(values: Iterable[int]) -> ThresholdAssignment:
    return ThresholdAssignment(tuple(int(value) for value in values))


def strict_majority(g: Graph) -> ThresholdAssignment:
    """τ(v) = ⌈(d(v)+1)/2⌉, and 0 on isolated nodes."""
    return ThresholdAssignment(tuple((d + 2) // 2 if d else 0 for d in g.degrees))


def simple_majority(g: Graph) -> ThresholdAssignment:
    """τ(v) = ⌈d(v)/2⌉"""
    return ThresholdAssignment(tuple((d + 1) // 2 for d in g.degrees))


THRESHOLD_RULES: dict[str, Callable[[Graph], ThresholdAssignment]] = {
    'strict': strict_majority,
    'simple': simple_majority,
}


def validate_thresholds(g: Graph, tau: ThresholdAssignment) -> list[int]:
    """Return every node whose threshold lies outside of [0, d(v)]. An empty list means the assignment is valid."""
    if len(tau) != g.n:
        raise ThresholdError(f"Threshold assignment has {len(tau)} entries for a graph with {g.n} nodes")
    return [v for v, (t, d) in enumerate(zip(tau, g.degrees)) if not 0 <= t <= d]


def require_valid_thresholds(g: Graph, tau: ThresholdAssignment) -> None:
    if violations := validate_thresholds(g, tau):
        shown = ', '.join(f"τ({v})={tau[v]} with d={g.degree(v)}" for v in violations[:5])
        more = f" and {len(violations) - 5} more" if len(violations) > 5 else ''
        raise ThresholdError(f"Thresholds must satisfy 0 ≤ τ(v) ≤ d(v): {shown}{more}", tuple(violations))


def is_even_graph(g: Graph) -> bool:
    return all(d % 2 == 0 for d in g.degrees)


def is_tree(g: Graph) -> bool:
    return g.n > 0 and g.m == g.n - 1 and nx.is_connected(g.to_networkx())


class LabeledGraph(NamedTuple):
    """A graph read from a file together with the original label of each node id."""
    graph: Graph
    labels: tuple[str, ...]

    def index(self) -> dict[str, int]:
        return {label: v for v, label in enumerate(self.labels)}


def default_labels(n: int) -> tuple[str, ...]:
    return tuple(str(v) for v in range(n))


def read_edge_list(source: Path | TextIO, *, drop_self_loops: bool = False) -> LabeledGraph:
    """
    Read an undirected edge list.

    Each line holds two whitespace-separated labels (an edge) or a single label (a node).
    Files ending in `.csv` are comma-separated, and a non-numeric header row is skipped.
    Lines starting with `#` are ignored, and `.gz`/`.zip` files are decompressed transparently.
    Labels are numbered in the order they are first seen, and any string is a label, `NA` included.
    """
    comma_separated = isinstance(source, Path) and '.csv' in source.suffixes
    try:
        # Whole lines, unsplit and without NA conversion.
        lines = pandas.read_csv(
            source,
            sep=LINE_SEPARATOR,
            header=None,
            names=['line'],
            dtype=str,
            na_filter=False,
            quoting=csv.QUOTE_NONE,
            skip_blank_lines=True,
            compression='infer' if isinstance(source, Path) else None,
        )['line'].str.strip()
    except pandas.errors.EmptyDataError:
        raise InputError(f"Edge list {_describe(source)} is empty")
    except pandas.errors.ParserError as err:
        raise InputError(f"Malformed edge list {_describe(source)}: {err}")
    except OSError as err:
        raise InputError(f"Could not read {_describe(source)}: {err.strerror or err}")

    lines = lines[(lines != '') & ~lines.str.startswith('#')].reset_index(drop=True)
    if lines.empty:
        raise InputError(f"Edge list {_describe(source)} is empty")

    if comma_separated:
        table = lines.str.split(',', expand=True).apply(lambda column: column.str.strip().str.strip('"'))
    else:
        table = lines.str.split(expand=True)
    table = table.mask(table == '')

    if table.shape[1] > 2 and table[2].notna().any():
        row = int(table.index[table[2].notna()][0])
        raise InputError(f"Malformed edge list {_describe(source)}: data row {row + 1} has more than two labels")
    table = table.reindex(columns=[0, 1])
    if table[0].isna().any():
        row = int(table.index[table[0].isna()][0])
        raise InputError(f"Malformed edge list {_describe(source)}: data row {row + 1} starts with an empty label")

    if comma_separated and not (_is_integer(table[0].iat[0]) or _is_integer(table[1].iat[0])):
        table = table.iloc[1:]
        if table.empty:
            raise InputError(f"Edge list {_describe(source)} is empty")

    interleaved = np.column_stack([table[0].to_numpy(dtype=object), table[1].to_numpy(dtype=object)]).ravel()
    codes, uniques = pandas.factorize(interleaved, use_na_sentinel=True)
    codes = codes.reshape(-1, 2)
    edge_rows = codes[codes[:, 1] >= 0]

    loops = edge_rows[:, 0] == edge_rows[:, 1]
    if loops.any():
        if not drop_self_loops:
            raise GraphError(f"Self-loop at node {uniques[edge_rows[loops][0, 0]]}")
        edge_rows = edge_rows[~loops]

    # Collapse reversed and repeated lines before building the adjacency lists.
    edge_rows = np.unique(np.sort(edge_rows, axis=1), axis=0)

    graph = build_graph(len(uniques), map(tuple, edge_rows.tolist()))
    return LabeledGraph(graph, tuple(str(label) for label in uniques))


def parse_edge_list(text: str) -> LabeledGraph:
    return read_edge_list(StringIO(text))


def format_edge_list(g: Graph, labels: Sequence[str] | None = None, header: Iterable[str] = ()) -> str:
    labels = labels if labels is not None else default_labels(g.n)
    lines = [f"# {line}" for line in header]
    lines.extend(labels[v] for v in range(g.n) if not g.adjacency[v])
    lines.extend(f"{labels[u]} {labels[v]}" for u, v in g.edges)
    return ''.join(line + '\n' for line in lines)


def read_thresholds(source: Path | TextIO, labels: Sequence[str]) -> ThresholdAssignment:
    """Read `label value` lines; every node of the graph must be listed exactly once."""
    text = _read_text(source)
    index = {label: v for v, label in enumerate(labels)}
    values: list[int | None] = [None] * len(labels)

    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith('#'):
            continue
        match line.split():
            case [label, value] if _is_integer(value):
                if label not in index:
                    raise InputError(f"Line {lineno}: unknown node {label!r}")
                if values[index[label]] is not None:
                    raise InputError(f"Line {lineno}: node {label!r} is listed twice")
                values[index[label]] = int(value)
            case _:
                raise InputError(f"Line {lineno}: expected `label value`, got {line!r}")

    if missing := [labels[v] for v, value in enumerate(values) if value is None]:
        raise InputError(f"No threshold given for {len(missing)} node(s), starting with {missing[0]!r}")
    return ThresholdAssignment(tuple(value for value in values if value is not None))


def format_thresholds(tau: ThresholdAssignment, labels: Sequence[str] | None = None) -> str:
    labels = labels if labels is not None else default_labels(len(tau))
    return ''.join(f"{labels[v]} {t}\n" for v, t in enumerate(tau))


def resolve_rule(g: Graph, labels: Sequence[str], rule: str) -> ThresholdAssignment:
    """Turn `strict`, `simple` or `file:<path>` into a validated threshold assignment."""
    if rule in THRESHOLD_RULES:
        tau = THRESHOLD_RULES[rule](g)
    elif rule.startswith('file:'):
        tau = read_thresholds(Path(rule.removeprefix('file:')), labels)
    else:
        raise InputError(f"Unknown threshold rule {rule!r}; expected strict, simple or file:<path>")
    require_valid_thresholds(g, tau)
    return tau


def _read_text(source: Path | TextIO) -> str:
    if isinstance(source, Path):
        try:
            return source.read_text()
        except OSError as err:
            raise InputError(f"Could not read {_describe(source)}: {err.strerror or err}")
    return source.read()


def _describe(source: Path | TextIO) -> str:
    return f"'{source}'" if isinstance(source, Path) else 'from input'


def _is_integer(value: object) -> bool:
    return isinstance(value, str) and value.lstrip('-').isdigit()
