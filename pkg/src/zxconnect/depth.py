"""ASAP layering of edge gates, depth bounds and Monte-Carlo depth experiments."""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Sequence, TextIO

import numpy as np

from .graph import Edge, Graph, complete_graph

# constants of the empirical lower-bound fit 2m / (1 + 0.5 n)^0.88
FIT_SCALE = 2.0
FIT_OFFSET = 1.0
FIT_SLOPE = 0.5
FIT_EXPONENT = 0.88


@dataclass(frozen=True)
class DepthSchedule:
    layer_of_edge: tuple[int | None, ...]
    depth: int

    def layers(self) -> list[list[int]]:
        """Edge indices grouped by layer."""
        out: list[list[int]] = [[] for _ in range(self.depth)]
        for i, layer in enumerate(self.layer_of_edge):
            if layer is not None:
                out[layer].append(i)
        return out

    def is_valid_for(self, graph: Graph) -> bool:
        for layer in self.layers():
            used: set[int] = set()
            for i in layer:
                u, v = graph.edges[i]
                if u in used or v in used:
                    return False
                used.update((u, v))
        return True


@dataclass(frozen=True)
class DepthBounds:
    best: int
    worst: int


@dataclass(frozen=True)
class TrialRecord:
    trial: int
    depth: int
    seed: int
    m: int


@dataclass
class DepthExperimentReport:
    n: int
    m_or_p: float
    trials: int
    mean_depth: float
    std_error: float
    min_depth: int
    max_depth: int
    seed: int
    records: list[TrialRecord] = field(default_factory=list, repr=False)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "m_or_p": self.m_or_p,
            "trials": self.trials,
            "mean_depth": self.mean_depth,
            "std_error": self.std_error,
            "min_depth": self.min_depth,
            "max_depth": self.max_depth,
            "seed": self.seed,
        }

    def write_csv(self, fh: TextIO) -> None:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["n", "m_or_p", "trial", "depth", "seed"])
        for rec in self.records:
            writer.writerow([self.n, self.m_or_p, rec.trial, rec.depth, rec.seed])


def _asap_layers(edges: Iterable[Edge], n: int) -> tuple[list[int | None], int]:
    last = [-1] * n
    layers: list[int | None] = []
    depth = 0
    for u, v in edges:
        if u == v:
            layers.append(None)
            continue
        lu, lv = last[u], last[v]
        layer = (lu if lu > lv else lv) + 1
        last[u] = last[v] = layer
        layers.append(layer)
        if layer >= depth:
            depth = layer + 1
    return layers, depth


def _asap_depth(us: Sequence[int], vs: Sequence[int], n: int) -> int:
    # hot loop of the Monte-Carlo runs; inputs contain no loops
    last = [0] * n
    depth = 0
    for u, v in zip(us, vs):
        lu, lv = last[u], last[v]
        layer = (lu if lu > lv else lv) + 1
        last[u] = last[v] = layer
        if layer > depth:
            depth = layer
    return depth


def asap_schedule(graph: Graph) -> DepthSchedule:
    """Greedy layering in edge order; each gate goes one layer past its endpoints' latest."""
    layers, depth = _asap_layers(graph.edges, graph.node_count)
    return DepthSchedule(tuple(layers), depth)


def depth_bounds(n: int, m: int) -> DepthBounds:
    """Best (brickwork) and worst (linear stack) achievable depths."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if m < 0:
        raise ValueError("m must be nonnegative")
    return DepthBounds(-(-m // n), m)


def sorted_complete_depth(n: int) -> int:
    if n < 2:
        raise ValueError("n must be at least 2")
    return asap_schedule(complete_graph(n)).depth


def lower_bound_fit(n: int, m: int) -> float:
    if n < 1:
        raise ValueError("n must be at least 1")
    return FIT_SCALE * m / (FIT_OFFSET + FIT_SLOPE * n) ** FIT_EXPONENT


def trial_seeds(seed: int, trials: int) -> list[int]:
    return [int(s) for s in np.random.SeedSequence(seed).generate_state(trials, dtype=np.uint64)]


def _trial_edges(
    rng: np.random.Generator,
    n: int,
    p: float | None,
    m: int | None,
    graph: Graph | None,
    multigraph: bool,
    pairs: tuple[np.ndarray, np.ndarray],
) -> tuple[list[int], list[int]]:
    us, vs = pairs
    if graph is not None:
        arr = np.array(graph.edges, dtype=np.int64).reshape(-1, 2)
        arr = arr[arr[:, 0] != arr[:, 1]]
        eu, ev = arr[:, 0], arr[:, 1]
    elif p is not None:
        keep = rng.random(us.size) < p
        eu, ev = us[keep], vs[keep]
    elif multigraph:
        idx = rng.integers(0, us.size, size=m)
        eu, ev = us[idx], vs[idx]
    else:
        idx = np.sort(rng.choice(us.size, size=m, replace=False))
        eu, ev = us[idx], vs[idx]
    perm = rng.permutation(eu.size)
    return eu[perm].tolist(), ev[perm].tolist()


def monte_carlo_depth(
    n: int,
    trials: int,
    seed: int,
    *,
    p: float | None = None,
    m: int | None = None,
    graph: Graph | None = None,
    multigraph: bool = False,
) -> DepthExperimentReport:
    """Average ASAP depth over random graphs with shuffled edge order.

    Exactly one source is used per call: G(n, p) when ``p`` is given, a uniform
    graph with ``m`` distinct edges when ``m`` is given (``m`` edges drawn with
    replacement if ``multigraph``), or reshuffles of a fixed ``graph``. Each
    trial draws from its own generator seeded from ``seed``; self-loops in a
    fixed graph are dropped since they never occupy a layer.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if sum(x is not None for x in (p, m, graph)) != 1:
        raise ValueError("give exactly one of p, m or graph")
    if graph is not None:
        n = graph.node_count
        m_or_p: float = graph.m
    elif p is not None:
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"edge probability {p} outside [0, 1]")
        m_or_p = p
    else:
        if m < 0 or (not multigraph and m > comb(n, 2)) or (multigraph and m > 0 and n < 2):
            raise ValueError(f"cannot place {m} edges on {n} nodes")
        m_or_p = m
    if n < 1:
        raise ValueError("n must be at least 1")

    pairs = np.triu_indices(n, k=1)
    records = []
    for t, s in enumerate(trial_seeds(seed, trials)):
        rng = np.random.default_rng(s)
        eu, ev = _trial_edges(rng, n, p, m, graph, multigraph, pairs)
        records.append(TrialRecord(t, _asap_depth(eu, ev, n), s, len(eu)))

    depths = np.array([r.depth for r in records], dtype=float)
    stderr = float(depths.std(ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0
    return DepthExperimentReport(
        n=n,
        m_or_p=m_or_p,
        trials=trials,
        mean_depth=float(depths.mean()),
        std_error=stderr,
        min_depth=int(depths.min()),
        max_depth=int(depths.max()),
        seed=seed,
        records=records,
    )
