"""Connectivity verdicts and component grouping from measurement shots."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import numpy as np

from .graph import ComponentPartition
from .simulator import MeasurementRecord, QuantumState


@dataclass(frozen=True)
class FailureProbability:
    exact: Fraction
    inverse_k_power: Fraction

    @property
    def success(self) -> Fraction:
        return 1 - self.exact


@dataclass(frozen=True)
class ConnectivityVerdict:
    verdict: str  # "connected" | "disconnected"
    certainty: str  # "certain" | "probabilistic"
    error_probability_bound: Fraction
    shot_count: int

    @property
    def connected(self) -> bool:
        return self.verdict == "connected"

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "certainty": self.certainty,
            "error_bound": float(self.error_probability_bound),
            "M": self.shot_count,
        }


def exact_failure_probability(k: int, M: int) -> FailureProbability:
    """Probability that ``M`` shots fail to tell the hypotheses apart.

    For ``k >= 2`` components every shot must come out constant across the whole
    register, which happens with probability ``2^(1-k)`` per shot. For ``k = 1``
    the symmetric bound ``2^-M`` is returned. ``inverse_k_power`` is ``1/k^M``
    (``2^-M`` for ``k = 1``), reported for comparison only.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if M < 1:
        raise ValueError("M must be at least 1")
    if k == 1:
        bound = Fraction(1, 2**M)
        return FailureProbability(bound, bound)
    return FailureProbability(Fraction(1, 2 ** ((k - 1) * M)), Fraction(1, k**M))


def _check_record(record: MeasurementRecord) -> None:
    if record.shot_count < 1:
        raise ValueError("measurement record is empty")
    if record.qubit_count < 1:
        raise ValueError("shots must cover at least one qubit")


def decide_connected(record: MeasurementRecord) -> ConnectivityVerdict:
    _check_record(record)
    M = record.shot_count
    for shot in record.shots:
        if "0" in shot and "1" in shot:
            return ConnectivityVerdict("disconnected", "certain", Fraction(0), M)
    # worst case for a wrong "connected" answer is two components
    return ConnectivityVerdict("connected", "probabilistic", exact_failure_probability(2, M).exact, M)


def group_components(record: MeasurementRecord) -> ComponentPartition:
    """Group qubits whose bit agrees in every shot.

    Same result as XOR-ing successive shots and splitting on any 1, but keyed on
    each qubit's full column of outcomes.
    """
    _check_record(record)
    columns = zip(*record.shots)
    ids: dict[tuple[str, ...], int] = {}
    return ComponentPartition(tuple(ids.setdefault(col, len(ids)) for col in columns))


def _support(state: QuantumState) -> list[tuple[str, Fraction]]:
    probs = state.probabilities()
    n = state.qubit_count
    return [
        (format(int(i), f"0{n}b"), Fraction(float(probs[i])).limit_denominator(1 << 40))
        for i in np.flatnonzero(probs > 1e-14)
    ]


def recovery_probability(state: QuantumState, truth: ComponentPartition, M: int) -> Fraction:
    """Exact probability that ``M`` independent shots from ``state`` recover ``truth``.

    Runs the distribution of the recovered partition forward one shot at a time:
    each support outcome refines the current partition, weighted by its Born
    probability (as the nearest rational with denominator at most 2^40).
    """
    support = _support(state)
    start = ComponentPartition((0,) * state.qubit_count)
    dist: dict[ComponentPartition, Fraction] = {start: Fraction(1)}
    # the chain is time-homogeneous, so each partition's successors are built once
    moves: dict[ComponentPartition, list[tuple[ComponentPartition, Fraction]]] = {}
    for _ in range(M):
        nxt: dict[ComponentPartition, Fraction] = {}
        for part, p in dist.items():
            if part not in moves:
                moves[part] = [
                    (ComponentPartition(tuple(zip(part.assignment, bits))), q) for bits, q in support
                ]
            for refined, q in moves[part]:
                nxt[refined] = nxt.get(refined, Fraction(0)) + p * q
        dist = nxt
    return dist.get(truth, Fraction(0))


def outcome_records(state: QuantumState, M: int):
    """Every ordered M-tuple of support outcomes, with its exact probability."""
    support = _support(state)
    for combo in product(support, repeat=M):
        p = Fraction(1)
        for _, q in combo:
            p *= q
        yield MeasurementRecord(tuple(b for b, _ in combo)), p
