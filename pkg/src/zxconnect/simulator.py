"""Dense state-vector execution of spider circuits.

Two execution modes are provided. The projector mode applies each spider as a
non-unitary projector and tracks how much norm survives. The ancilla mode
realizes each gate with an extra qubit, a parity measurement and a classical
flip correction, so every run succeeds.

Bit convention: qubit 0 is the most significant bit of a basis index, so the
bitstring ``b0 b1 ... b(n-1)`` is the binary spelling of the index.
"""
from __future__ import annotations

import cmath
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from .errors import CapacityError, DissipationError
from .graph import Graph, bfs_components
from .unionfind import UnionFind
from .zx import MAX_DENSE_LEGS, SpiderCircuit, embed_operator

DEFAULT_QUBIT_CAP = 20
STATE_TOL = 1e-10
# smallest retained squared norm treated as a surviving state
_DISSIPATED = 1e-30


@dataclass
class QuantumState:
    amplitudes: np.ndarray
    qubit_count: int
    survival_probability: float = 1.0

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if self.amplitudes.size != 1 << self.qubit_count:
            raise ValueError("amplitude vector length must be 2**qubit_count")

    def probabilities(self) -> np.ndarray:
        probs = np.abs(self.amplitudes) ** 2
        return probs / probs.sum()

    def support(self, tol: float = 1e-12) -> list[str]:
        idx = np.flatnonzero(np.abs(self.amplitudes) ** 2 > tol)
        return [format(int(i), f"0{self.qubit_count}b") for i in idx]

    def dump(self, tol: float = 0.0) -> list[tuple[str, float, float]]:
        """Nonzero amplitudes as ``(bitstring, re, im)`` triples."""
        out = []
        for i in np.flatnonzero(np.abs(self.amplitudes) > tol):
            a = self.amplitudes[i]
            out.append((format(int(i), f"0{self.qubit_count}b"), float(a.real), float(a.imag)))
        return out

    def copy(self) -> QuantumState:
        return QuantumState(self.amplitudes.copy(), self.qubit_count, self.survival_probability)


@dataclass(frozen=True)
class MeasurementRecord:
    shots: tuple[str, ...]
    seed: int | None = None

    def __post_init__(self):
        shots = tuple(self.shots)
        if shots and len({len(s) for s in shots}) != 1:
            raise ValueError("all shots must have the same length")
        object.__setattr__(self, "shots", shots)

    @property
    def shot_count(self) -> int:
        return len(self.shots)

    M = shot_count

    @property
    def qubit_count(self) -> int:
        return len(self.shots[0]) if self.shots else 0

    def to_dict(self) -> dict:
        return {"M": self.shot_count, "seed": self.seed, "shots": list(self.shots)}

    @classmethod
    def from_dict(cls, data: dict) -> MeasurementRecord:
        rec = cls(tuple(data["shots"]), data.get("seed"))
        if "M" in data and int(data["M"]) != rec.shot_count:
            raise ValueError("M does not match number of shots")
        return rec

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


@dataclass(frozen=True)
class SurvivalReport:
    survival: Fraction
    # 1/(2^n - 2); None where undefined (n = 1)
    naive_decay_estimate: Fraction | None

    def to_dict(self) -> dict:
        est = self.naive_decay_estimate
        return {"survival": float(self.survival), "decay_estimate": None if est is None else float(est)}


def _check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise CapacityError(f"{n} qubits exceeds the dense simulation cap of {cap}")


def _slot(n: int, fixed: dict[int, int]) -> tuple:
    idx: list = [slice(None)] * n
    for q, b in fixed.items():
        idx[q] = b
    return tuple(idx)


def init_plus_state(n: int, cap: int = DEFAULT_QUBIT_CAP) -> QuantumState:
    if n < 1:
        raise ValueError("need at least one qubit")
    _check_cap(n, cap)
    dim = 1 << n
    return QuantumState(np.full(dim, dim ** -0.5, dtype=complex), n, 1.0)


def apply_spider_projector(
    state: QuantumState,
    legs: Sequence[int],
    phase: float = 0.0,
    gate_index: int | None = None,
) -> QuantumState:
    """Project onto the legs agreeing (00 or 11), phase the 11 branch, renormalize.

    Raises DissipationError when nothing survives.
    """
    u, v = legs
    n = state.qubit_count
    if u == v or not (0 <= u < n and 0 <= v < n):
        raise ValueError(f"invalid legs {tuple(legs)} for {n} qubits")
    psi = state.amplitudes.reshape([2] * n).copy()
    psi[_slot(n, {u: 0, v: 1})] = 0.0
    psi[_slot(n, {u: 1, v: 0})] = 0.0
    if phase:
        psi[_slot(n, {u: 1, v: 1})] *= cmath.exp(1j * phase)
    flat = psi.reshape(-1)
    retained = float(np.vdot(flat, flat).real)
    if retained < _DISSIPATED:
        raise DissipationError(gate_index)
    return QuantumState(flat / np.sqrt(retained), n, state.survival_probability * retained)


def run_circuit(circuit: SpiderCircuit, cap: int = DEFAULT_QUBIT_CAP) -> QuantumState:
    _check_cap(circuit.qubit_count, cap)
    if circuit.hadamard_layer:
        state = init_plus_state(circuit.qubit_count, cap)
    else:
        state = _zero_state(circuit.qubit_count)
    for i, gate in enumerate(circuit.gates):
        state = apply_spider_projector(state, gate.legs, gate.phase, gate_index=i)
    return state


def _zero_state(n: int) -> QuantumState:
    amps = np.zeros(1 << n, dtype=complex)
    amps[0] = 1.0
    return QuantumState(amps, n, 1.0)


def run_circuit_dense(circuit: SpiderCircuit) -> QuantumState:
    """Matrix-multiplication path of :func:`run_circuit`, for cross-validation on small registers."""
    n = circuit.qubit_count
    if n > min(MAX_DENSE_LEGS, 10):
        raise CapacityError("dense matrix path is limited to 10 qubits")
    state = init_plus_state(n) if circuit.hadamard_layer else _zero_state(n)
    vec = state.amplitudes
    survival = 1.0
    for i, gate in enumerate(circuit.gates):
        vec = embed_operator(gate.matrix(), gate.legs, n) @ vec
        retained = float(np.vdot(vec, vec).real)
        if retained < _DISSIPATED:
            raise DissipationError(i)
        survival *= retained
        vec = vec / np.sqrt(retained)
    return QuantumState(vec, n, survival)


def expected_final_state(graph: Graph, cap: int = DEFAULT_QUBIT_CAP) -> QuantumState:
    """Closed form: one GHZ factor per connected component, |+> for isolated nodes."""
    n = graph.node_count
    if n < 1:
        raise ValueError("graph needs at least one node")
    _check_cap(n, cap)
    comps = bfs_components(graph).components
    k = len(comps)
    masks = np.array([sum(1 << (n - 1 - q) for q in comp) for comp in comps], dtype=np.int64)
    choices = np.arange(1 << k, dtype=np.int64)
    bits = (choices[:, None] >> np.arange(k, dtype=np.int64)[None, :]) & 1
    indices = bits @ masks
    amps = np.zeros(1 << n, dtype=complex)
    amps[indices] = 2.0 ** (-k / 2)
    return QuantumState(amps, n, 2.0 ** (k - n))


def survival_report(graph: Graph) -> SurvivalReport:
    n = graph.node_count
    k = bfs_components(graph).component_count
    exact = Fraction(2**k, 2**n)
    estimate = None if n <= 1 else Fraction(1, 2**n - 2)
    return SurvivalReport(exact, estimate)


def sample_measurements(state: QuantumState, M: int, seed: int) -> MeasurementRecord:
    """Draw ``M`` full-register Z-basis shots from the Born distribution."""
    if M < 1:
        raise ValueError("M must be at least 1")
    rng = np.random.default_rng(seed)
    outcomes = rng.choice(state.amplitudes.size, size=M, p=state.probabilities())
    width = state.qubit_count
    return MeasurementRecord(tuple(format(int(i), f"0{width}b") for i in outcomes), seed)


def sample_component_product(graph: Graph, M: int, seed: int) -> MeasurementRecord:
    """Shots from the closed-form final state without building it.

    Each component independently reads all-0 or all-1 with probability 1/2, so
    this works for registers far past the dense cap.
    """
    if M < 1:
        raise ValueError("M must be at least 1")
    assignment = np.array(bfs_components(graph).assignment, dtype=np.int64)
    k = int(assignment.max()) + 1 if assignment.size else 0
    rng = np.random.default_rng(seed)
    bits = rng.integers(0, 2, size=(M, k), dtype=np.uint8)
    chars = np.array([ord("0"), ord("1")], dtype=np.uint8)
    return MeasurementRecord(tuple(chars[row[assignment]].tobytes().decode() for row in bits), seed)


def states_match(a: QuantumState | np.ndarray, b: QuantumState | np.ndarray, tol: float = STATE_TOL) -> bool:
    """Max-amplitude agreement after aligning the global phase on b's largest entry."""
    va = a.amplitudes if isinstance(a, QuantumState) else np.asarray(a)
    vb = b.amplitudes if isinstance(b, QuantumState) else np.asarray(b)
    if va.shape != vb.shape:
        return False
    i = int(np.argmax(np.abs(vb)))
    if abs(va[i]) < tol:
        return bool(np.max(np.abs(va - vb)) <= tol)
    phase = (va[i] / vb[i]) / abs(va[i] / vb[i])
    return bool(np.max(np.abs(va - phase * vb)) <= tol)


# ancilla mode


def _parity_to_ancilla(psi: np.ndarray, n: int, u: int, v: int) -> np.ndarray:
    """CNOT u->a then v->a on a fresh |0> ancilla appended as the last axis."""
    ext = np.zeros(psi.shape + (2,), dtype=complex)
    ext[..., 0] = psi
    for ctrl in (u, v):
        on = _slot(n + 1, {ctrl: 1})
        ext[on] = ext[on][..., ::-1].copy()
    return ext


def _flip_qubits(psi: np.ndarray, qubits: Sequence[int]) -> np.ndarray:
    return np.flip(psi, axis=tuple(qubits)) if qubits else psi


class _AncillaRun:
    """State of an ancilla-mode execution between gates."""

    def __init__(self, circuit: SpiderCircuit, cap: int):
        n = circuit.qubit_count
        _check_cap(n + (1 if circuit.gates else 0), cap)
        self.n = n
        start = init_plus_state(n, cap) if circuit.hadamard_layer else _zero_state(n)
        self.psi = start.amplitudes.reshape([2] * n)
        self.clusters = UnionFind(n)

    def branch_probabilities(self, u: int, v: int) -> tuple[np.ndarray, tuple[float, float]]:
        ext = _parity_to_ancilla(self.psi, self.n, u, v)
        p0 = float(np.sum(np.abs(ext[..., 0]) ** 2))
        p1 = float(np.sum(np.abs(ext[..., 1]) ** 2))
        return ext, (p0, p1)

    def commit(self, ext: np.ndarray, outcome: int, prob: float, u: int, v: int, phase: float) -> None:
        psi = ext[..., outcome] / np.sqrt(prob)
        if outcome == 1:
            cu, cv = self.clusters.members(u), self.clusters.members(v)
            # flip the smaller cluster; ties go to the second endpoint
            psi = _flip_qubits(psi, cu if len(cu) < len(cv) else cv)
        if phase:
            psi = psi.copy()
            psi[_slot(self.n, {u: 1, v: 1})] *= cmath.exp(1j * phase)
        self.clusters.union(u, v)
        self.psi = psi

    def copy(self) -> _AncillaRun:
        other = object.__new__(_AncillaRun)
        other.n, other.psi, other.clusters = self.n, self.psi, self.clusters.copy()
        return other

    def state(self) -> QuantumState:
        return QuantumState(self.psi.reshape(-1).copy(), self.n, 1.0)


def run_circuit_ancilla_mode(circuit: SpiderCircuit, seed: int, cap: int = DEFAULT_QUBIT_CAP) -> QuantumState:
    """Run every gate through a parity ancilla with measurement and flip correction.

    Ancillas are measured and discarded one at a time, so the peak register is
    n + 1 qubits and survival is always 1. Agreement with projector mode holds
    for zero-phase circuits; the flip correction does not commute with nonzero
    component phases.
    """
    rng = np.random.default_rng(seed)
    run = _AncillaRun(circuit, cap)
    for gate in circuit.gates:
        u, v = gate.legs
        ext, (p0, p1) = run.branch_probabilities(u, v)
        outcome = int(rng.random() * (p0 + p1) >= p0)
        run.commit(ext, outcome, (p0, p1)[outcome], u, v, gate.phase)
    return run.state()


def ancilla_branches(circuit: SpiderCircuit, cap: int = DEFAULT_QUBIT_CAP) -> Iterator[tuple[tuple[int, ...], float, QuantumState]]:
    """Enumerate every ancilla-outcome branch with nonzero probability.

    Yields ``(outcomes, branch_probability, final_state)``.
    """

    def walk(run: _AncillaRun, i: int, outcomes: tuple[int, ...], prob: float):
        if i == len(circuit.gates):
            yield outcomes, prob, run.state()
            return
        gate = circuit.gates[i]
        u, v = gate.legs
        ext, ps = run.branch_probabilities(u, v)
        for outcome in (0, 1):
            if ps[outcome] < _DISSIPATED:
                continue
            child = run.copy()
            child.commit(ext, outcome, ps[outcome], u, v, gate.phase)
            yield from walk(child, i + 1, outcomes + (outcome,), prob * ps[outcome])

    yield from walk(_AncillaRun(circuit, cap), 0, (), 1.0)
