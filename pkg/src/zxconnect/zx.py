"""Z-spider data model, dense spider matrices, and fusion of two-leg spider networks.

Each graph edge becomes a two-leg Z spider acting as a gate on its two qubits.
Spiders sharing a qubit fuse, so a whole circuit contracts to one spider per
connected component of the gate graph.
"""
from __future__ import annotations

import cmath
import json
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import CapacityError
from .graph import ComponentPartition, Graph
from .unionfind import UnionFind

log = logging.getLogger(__name__)

MAX_DENSE_LEGS = 12
TWO_PI = 2.0 * math.pi


def normalize_phase(phase: float) -> float:
    phase = math.fmod(float(phase), TWO_PI)
    if phase < 0.0:
        phase += TWO_PI
    # fmod can land exactly on 2*pi after the shift
    return 0.0 if phase >= TWO_PI else phase


@dataclass(frozen=True)
class Spider:
    legs: tuple[int, ...]
    phase: float = 0.0

    def __post_init__(self):
        legs = tuple(int(q) for q in self.legs)
        if not legs:
            raise ValueError("a spider needs at least one leg")
        if len(set(legs)) != len(legs):
            raise ValueError(f"repeated leg in {legs}")
        object.__setattr__(self, "legs", legs)
        object.__setattr__(self, "phase", normalize_phase(self.phase))

    @property
    def leg_count(self) -> int:
        return len(self.legs)

    def matrix(self) -> np.ndarray:
        return spider_matrix(self.leg_count, self.phase)

    def to_dict(self) -> dict:
        return {"legs": list(self.legs), "phase": self.phase}


@dataclass(frozen=True)
class SpiderCircuit:
    """Hadamard layer followed by two-leg Z spiders in source-edge order.

    ``skipped_loops`` records the indices of self-loop edges, which compile to
    no-ops.
    """

    qubit_count: int
    gates: tuple[Spider, ...] = ()
    hadamard_layer: bool = True
    skipped_loops: tuple[int, ...] = field(default=(), compare=False)

    def __post_init__(self):
        gates = tuple(self.gates)
        for i, gate in enumerate(gates):
            if gate.leg_count != 2:
                raise ValueError(f"gate {i} has {gate.leg_count} legs, expected 2")
            if max(gate.legs) >= self.qubit_count:
                raise ValueError(f"gate {i} acts on qubit outside 0..{self.qubit_count - 1}")
        object.__setattr__(self, "gates", gates)

    @property
    def n(self) -> int:
        return self.qubit_count

    def to_dict(self) -> dict:
        return {
            "n": self.qubit_count,
            "hadamard_layer": self.hadamard_layer,
            "gates": [g.to_dict() for g in self.gates],
        }

    @classmethod
    def from_dict(cls, data: dict) -> SpiderCircuit:
        gates = tuple(Spider(tuple(g["legs"]), float(g.get("phase", 0.0))) for g in data["gates"])
        return cls(int(data["n"]), gates, bool(data.get("hadamard_layer", True)))

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> SpiderCircuit:
        return cls.from_dict(json.loads(text))


def spider_matrix(leg_count: int, phase: float = 0.0) -> np.ndarray:
    """Dense ``2^L x 2^L`` Z spider: 1 at (0, 0), e^{i phase} at the last diagonal slot."""
    if leg_count < 1:
        raise ValueError("leg_count must be at least 1")
    if leg_count > MAX_DENSE_LEGS:
        raise CapacityError(f"{leg_count} legs exceeds dense cap of {MAX_DENSE_LEGS}")
    dim = 1 << leg_count
    out = np.zeros((dim, dim), dtype=complex)
    out[0, 0] = 1.0
    out[-1, -1] += cmath.exp(1j * phase)
    return out


def compile_graph_to_circuit(graph: Graph, phase: float = 0.0) -> SpiderCircuit:
    if graph.node_count < 1:
        raise ValueError("graph needs at least one node")
    gates = []
    loops = []
    for i, (u, v) in enumerate(graph.edges):
        if u == v:
            log.debug("edge %d is a self-loop on qubit %d; compiled as no-op", i, u)
            loops.append(i)
            continue
        gates.append(Spider((u, v), phase))
    return SpiderCircuit(graph.node_count, tuple(gates), True, tuple(loops))


def contract_spiders(circuit: SpiderCircuit) -> tuple[list[Spider], ComponentPartition]:
    """Fuse every pair of spiders that share a qubit.

    Returns one spider per component with at least two qubits (legs sorted,
    phases summed mod 2*pi), ordered by smallest leg, and the qubit partition.
    """
    uf = UnionFind(circuit.qubit_count)
    for gate in circuit.gates:
        u, v = gate.legs
        uf.union(u, v)

    phase_sum: dict[int, float] = {}
    for gate in circuit.gates:
        root = uf.find(gate.legs[0])
        phase_sum[root] = phase_sum.get(root, 0.0) + gate.phase

    groups = sorted(uf.groups(), key=min)
    spiders = [
        Spider(tuple(group), phase_sum[uf.find(group[0])])
        for group in groups
        if len(group) > 1
    ]
    return spiders, ComponentPartition.from_groups(groups, circuit.qubit_count)


def embed_operator(matrix: np.ndarray, legs: tuple[int, ...], qubit_count: int) -> np.ndarray:
    """Lift an operator on ``legs`` to the full register, identity elsewhere.

    Qubit 0 is the most significant bit of a basis index.
    """
    k = len(legs)
    if matrix.shape != (1 << k, 1 << k):
        raise ValueError("matrix size does not match leg count")
    if qubit_count > MAX_DENSE_LEGS:
        raise CapacityError(f"{qubit_count} qubits exceeds dense cap of {MAX_DENSE_LEGS}")
    rest = [q for q in range(qubit_count) if q not in legs]
    full = np.kron(matrix, np.eye(1 << len(rest), dtype=complex))
    # full acts on qubit order legs + rest; permute axes back to 0..n-1
    order = list(legs) + rest
    perm = [order.index(q) for q in range(qubit_count)]
    n = qubit_count
    t = full.reshape([2] * (2 * n))
    t = t.transpose(perm + [n + p for p in perm])
    return t.reshape(1 << n, 1 << n)


def circuit_operator(circuit: SpiderCircuit) -> np.ndarray:
    """Ordered product of embedded gate matrices (no Hadamards, no normalization)."""
    dim = 1 << circuit.qubit_count
    op = np.eye(dim, dtype=complex)
    for gate in circuit.gates:
        op = embed_operator(gate.matrix(), gate.legs, circuit.qubit_count) @ op
    return op


def contracted_operator(spiders: list[Spider], qubit_count: int) -> np.ndarray:
    """Product of the fused spiders' embedded matrices; they act on disjoint legs."""
    dim = 1 << qubit_count
    op = np.eye(dim, dtype=complex)
    for spider in spiders:
        op = embed_operator(spider.matrix(), spider.legs, qubit_count) @ op
    return op
