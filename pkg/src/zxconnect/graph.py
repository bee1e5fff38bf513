"""Undirected multigraphs, edge-list I/O, random generation and the classical BFS oracle."""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from math import comb
from typing import Iterable

import numpy as np

from .errors import GraphParseError, NodeRangeError

Edge = tuple[int, int]


@dataclass(frozen=True)
class Graph:
    """A node count plus an ordered multiset of undirected edges.

    Loops ``(u, u)`` and repeated edges are kept. ``edges`` preserves the order
    the edges were given in, which matters to the depth scheduler.
    ``labels`` maps dense ids back to the original file labels when the graph
    was parsed with ``relabel=True``.
    """

    node_count: int
    edges: tuple[Edge, ...] = ()
    labels: tuple[int, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.node_count < 0:
            raise ValueError("node_count must be nonnegative")
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        for u, v in edges:
            if not (0 <= u < self.node_count and 0 <= v < self.node_count):
                raise NodeRangeError(f"edge ({u}, {v}) out of range for {self.node_count} nodes")
        object.__setattr__(self, "edges", edges)

    @property
    def n(self) -> int:
        return self.node_count

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def edge_order(self) -> tuple[Edge, ...]:
        return self.edges

    def canonical_edges(self) -> list[Edge]:
        """Edges as sorted ``(min, max)`` pairs, sorted; equal for equal multisets."""
        return sorted((min(u, v), max(u, v)) for u, v in self.edges)

    def non_loop_edge_count(self) -> int:
        return sum(1 for u, v in self.edges if u != v)

    def with_edges(self, edges: Iterable[Edge]) -> Graph:
        return Graph(self.node_count, tuple(edges), self.labels)

    def to_dict(self) -> dict:
        return {"n": self.node_count, "edges": [[u, v] for u, v in self.edges]}

    @classmethod
    def from_dict(cls, data: dict) -> Graph:
        return cls(int(data["n"]), tuple((int(u), int(v)) for u, v in data["edges"]))

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> Graph:
        return cls.from_dict(json.loads(text))

    def to_edge_list(self) -> str:
        return "".join(f"{u} {v}\n" for u, v in self.edges)


@dataclass(frozen=True)
class ComponentPartition:
    """Connected components as a node -> component id assignment.

    Component ids are canonical: numbered in order of each component's
    smallest node, so two equal partitions compare equal.
    """

    assignment: tuple[int, ...]

    def __post_init__(self):
        relabel: dict[int, int] = {}
        canon = tuple(relabel.setdefault(c, len(relabel)) for c in self.assignment)
        object.__setattr__(self, "assignment", canon)

    @classmethod
    def from_groups(cls, groups: Iterable[Iterable[int]], node_count: int) -> ComponentPartition:
        assignment = [-1] * node_count
        for cid, group in enumerate(groups):
            for node in group:
                if assignment[node] != -1:
                    raise ValueError(f"node {node} appears in two groups")
                assignment[node] = cid
        if -1 in assignment:
            raise ValueError("groups do not cover every node")
        return cls(tuple(assignment))

    @property
    def component_count(self) -> int:
        return len(set(self.assignment))

    k = component_count

    @property
    def components(self) -> list[frozenset[int]]:
        groups: list[set[int]] = [set() for _ in range(self.component_count)]
        for node, cid in enumerate(self.assignment):
            groups[cid].add(node)
        return [frozenset(g) for g in groups]

    def refines(self, other: ComponentPartition) -> bool:
        """True if every block of ``self`` lies inside one block of ``other``."""
        seen: dict[int, int] = {}
        for mine, theirs in zip(self.assignment, other.assignment):
            if seen.setdefault(mine, theirs) != theirs:
                return False
        return True

    def to_dict(self) -> dict:
        return {"k": self.component_count, "assignment": list(self.assignment)}

    @classmethod
    def from_dict(cls, data: dict) -> ComponentPartition:
        part = cls(tuple(int(a) for a in data["assignment"]))
        if "k" in data and int(data["k"]) != part.component_count:
            raise ValueError("k does not match assignment")
        return part


def parse_edge_list(text: str, node_count: int | None = None, relabel: bool = False) -> Graph:
    """Parse whitespace-separated ``u v`` lines; ``#`` starts a comment line.

    With ``relabel=True`` arbitrary nonnegative labels are mapped to dense ids
    in order of first appearance and kept in ``Graph.labels``.
    """
    raw: list[Edge] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = stripped.split()
        if len(parts) != 2:
            raise GraphParseError(lineno, line)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphParseError(lineno, line) from None
        if u < 0 or v < 0:
            raise GraphParseError(lineno, line)
        if node_count is not None and not relabel and (u >= node_count or v >= node_count):
            raise NodeRangeError(f"line {lineno}: endpoint exceeds node_count={node_count}: {line!r}")
        raw.append((u, v))

    labels = None
    if relabel:
        table: dict[int, int] = {}
        for u, v in raw:
            table.setdefault(u, len(table))
            table.setdefault(v, len(table))
        raw = [(table[u], table[v]) for u, v in raw]
        labels = tuple(table)
        if node_count is not None and node_count < len(table):
            raise NodeRangeError(f"{len(table)} distinct labels exceed node_count={node_count}")

    if node_count is None:
        node_count = 1 + max((max(e) for e in raw), default=-1)
    return Graph(node_count, tuple(raw), labels)


def read_edge_list(path, node_count: int | None = None, relabel: bool = False) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh.read(), node_count=node_count, relabel=relabel)


def _pairs(n: int) -> tuple[np.ndarray, np.ndarray]:
    # row-major upper triangle == lexicographic order of (u, v), u < v
    return np.triu_indices(n, k=1)


def complete_graph(n: int) -> Graph:
    us, vs = _pairs(n)
    return Graph(n, tuple(zip(us.tolist(), vs.tolist())))


def generate_erdos_renyi(n: int, p: float, seed: int) -> Graph:
    """G(n, p) with edges emitted in lexicographic order."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability {p} outside [0, 1]")
    rng = np.random.default_rng(seed)
    us, vs = _pairs(n)
    keep = rng.random(us.size) < p
    return Graph(n, tuple(zip(us[keep].tolist(), vs[keep].tolist())))


def generate_fixed_edge_count(n: int, m: int, seed: int) -> Graph:
    """Uniform simple graph with exactly ``m`` distinct non-loop edges, sorted."""
    if n < 1:
        raise ValueError("n must be at least 1")
    total = comb(n, 2)
    if not 0 <= m <= total:
        raise ValueError(f"cannot place {m} distinct edges on {n} nodes (max {total})")
    rng = np.random.default_rng(seed)
    chosen = np.sort(rng.choice(total, size=m, replace=False))
    us, vs = _pairs(n)
    return Graph(n, tuple(zip(us[chosen].tolist(), vs[chosen].tolist())))


def shuffle_edges(graph: Graph, seed: int) -> Graph:
    rng = np.random.default_rng(seed)
    perm = rng.permutation(graph.m)
    edges = graph.edges
    return graph.with_edges(edges[i] for i in perm.tolist())


def adjacency(graph: Graph) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(graph.node_count)]
    for u, v in graph.edges:
        if u != v:
            adj[u].append(v)
            adj[v].append(u)
    return adj


def bfs_components(graph: Graph) -> ComponentPartition:
    adj = adjacency(graph)
    assignment = [-1] * graph.node_count
    cid = 0
    for start in range(graph.node_count):
        if assignment[start] != -1:
            continue
        assignment[start] = cid
        queue = deque([start])
        while queue:
            node = queue.popleft()
            for nb in adj[node]:
                if assignment[nb] == -1:
                    assignment[nb] = cid
                    queue.append(nb)
        cid += 1
    return ComponentPartition(tuple(assignment))


def is_connected(graph: Graph) -> bool:
    return bfs_components(graph).component_count <= 1

