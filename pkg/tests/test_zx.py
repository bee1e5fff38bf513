import cmath
import math
import random
from functools import reduce
from itertools import permutations

import numpy as np
import pytest

from zxconnect.errors import CapacityError
from zxconnect.graph import Graph, bfs_components
from zxconnect.zx import (
    Spider,
    SpiderCircuit,
    circuit_operator,
    compile_graph_to_circuit,
    contract_spiders,
    contracted_operator,
    embed_operator,
    spider_matrix,
)

from conftest import random_multigraph

KET0 = np.array([1, 0], dtype=complex)
KET1 = np.array([0, 1], dtype=complex)


def definitional_spider(legs_in: int, legs_out: int, phase: float) -> np.ndarray:
    """|0..0><0..0| + e^{i a} |1..1><1..1| built from kets and Kronecker products."""
    def kron_all(vs):
        return reduce(np.kron, vs)

    zero_out, zero_in = kron_all([KET0] * legs_out), kron_all([KET0] * legs_in)
    one_out, one_in = kron_all([KET1] * legs_out), kron_all([KET1] * legs_in)
    return np.outer(zero_out, zero_in.conj()) + cmath.exp(1j * phase) * np.outer(one_out, one_in.conj())


def test_two_leg_spider():
    a = 0.7
    expected = np.diag([1, 0, 0, cmath.exp(1j * a)])
    assert np.allclose(spider_matrix(2, a), expected, atol=0)


def test_one_leg_phase_zero_is_identity():
    assert np.array_equal(spider_matrix(1, 0.0), np.eye(2))


def test_three_leg_pi_against_definition():
    m = spider_matrix(3, math.pi)
    assert np.allclose(m, np.diag([1, 0, 0, 0, 0, 0, 0, -1]), atol=1e-15)
    assert np.allclose(m, definitional_spider(3, 3, math.pi), atol=1e-15)


@pytest.mark.parametrize("legs", range(1, 7))
def test_spider_matrix_matches_definition(legs):
    assert np.allclose(spider_matrix(legs, 1.1), definitional_spider(legs, legs, 1.1), atol=1e-15)


def test_spider_matrix_cap():
    with pytest.raises(CapacityError):
        spider_matrix(13)


def test_nilpotent_projector_exact():
    p = spider_matrix(2, 0.0)
    assert np.array_equal(p @ p, p)


def test_spider_phase_is_wrapped():
    assert Spider((0, 1), 2 * math.pi + 0.5).phase == pytest.approx(0.5)
    assert Spider((0, 1), -0.5).phase == pytest.approx(2 * math.pi - 0.5)
    with pytest.raises(ValueError):
        Spider(())


def test_compile_path():
    c = compile_graph_to_circuit(Graph(3, ((0, 1), (1, 2))))
    assert c.hadamard_layer and c.qubit_count == 3
    assert [g.legs for g in c.gates] == [(0, 1), (1, 2)]
    assert all(g.phase == 0.0 for g in c.gates)


def test_compile_duplicates_and_loops():
    c = compile_graph_to_circuit(Graph(3, ((0, 1), (2, 2), (0, 1))))
    assert [g.legs for g in c.gates] == [(0, 1), (0, 1)]
    assert c.skipped_loops == (1,)


def test_compile_two_component_graph(two_component_graph):
    c = compile_graph_to_circuit(two_component_graph)
    assert c.qubit_count == 9 and len(c.gates) == two_component_graph.m
    small, large = {0, 1, 2}, set(range(3, 9))
    assert all(set(g.legs) <= small or set(g.legs) <= large for g in c.gates)


def test_circuit_json_round_trip():
    c = SpiderCircuit(3, (Spider((0, 1), 0.25), Spider((2, 1))))
    assert SpiderCircuit.from_json(c.to_json()) == c
    assert c.to_dict()["gates"][0] == {"legs": [0, 1], "phase": 0.25}


def test_contract_examples():
    spiders, part = contract_spiders(SpiderCircuit(3, (Spider((0, 1)), Spider((1, 2)))))
    assert spiders == [Spider((0, 1, 2), 0.0)]
    assert part.component_count == 1

    spiders, _ = contract_spiders(SpiderCircuit(4, (Spider((0, 1)), Spider((2, 3)))))
    assert [s.legs for s in spiders] == [(0, 1), (2, 3)]

    spiders, _ = contract_spiders(SpiderCircuit(2, (Spider((0, 1)), Spider((0, 1)))))
    assert spiders == [Spider((0, 1), 0.0)]


def test_contract_sums_phases():
    c = SpiderCircuit(3, (Spider((0, 1), 0.5), Spider((2, 1), 1.0)))
    spiders, _ = contract_spiders(c)
    assert spiders[0].phase == pytest.approx(1.5)
    assert np.allclose(circuit_operator(c), contracted_operator(spiders, 3), atol=1e-14)


def test_isolated_qubits_yield_no_spider():
    spiders, part = contract_spiders(SpiderCircuit(4, (Spider((1, 2)),)))
    assert [s.legs for s in spiders] == [(1, 2)]
    assert part.component_count == 3


def test_embed_operator_matches_kron_on_leading_qubits():
    x = np.array([[0, 1], [1, 0]], dtype=complex)
    assert np.allclose(embed_operator(x, (0,), 2), np.kron(x, np.eye(2)))
    assert np.allclose(embed_operator(x, (1,), 2), np.kron(np.eye(2), x))
    cnot = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)
    swap = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex)
    # control on qubit 1, target on qubit 0
    assert np.allclose(embed_operator(cnot, (1, 0), 2), swap @ cnot @ swap)


def test_fusion_matrix_consistency_random():
    rng = random.Random(5)
    for _ in range(300):
        n = rng.randint(1, 5)
        g = random_multigraph(rng, n, max_edges=7)
        phases = [rng.uniform(0, 2 * math.pi) for _ in g.edges]
        gates = tuple(Spider((u, v), a) for (u, v), a in zip(g.edges, phases) if u != v)
        c = SpiderCircuit(n, gates)
        spiders, part = contract_spiders(c)
        assert np.allclose(circuit_operator(c), contracted_operator(spiders, n), atol=1e-12)
        assert part == bfs_components(g)


def test_gate_order_does_not_change_operator():
    rng = random.Random(8)
    for _ in range(40):
        n = rng.randint(2, 5)
        m = rng.randint(1, 4)
        gates = []
        while len(gates) < m:
            u, v = rng.randrange(n), rng.randrange(n)
            if u != v:
                gates.append(Spider((u, v), rng.choice([0.0, 0.3, math.pi])))
        ref = circuit_operator(SpiderCircuit(n, tuple(gates)))
        for perm in permutations(gates):
            assert np.allclose(circuit_operator(SpiderCircuit(n, perm)), ref, atol=1e-13)


def test_contract_partition_matches_bfs_up_to_seven_nodes():
    rng = random.Random(21)
    for _ in range(2000):
        n = rng.randint(1, 7)
        g = random_multigraph(rng, n, max_edges=9)
        _, part = contract_spiders(compile_graph_to_circuit(g))
        assert part == bfs_components(g)
