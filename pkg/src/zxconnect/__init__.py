"""Constant-measurement graph connectivity with fused Z-spider projectors.

Graphs compile to circuits of two-leg Z spiders; simulating them leaves one GHZ
state per connected component, which a handful of Z-basis shots can tell apart.
"""

__version__ = "0.1.0"

from .analyzer import (
    ConnectivityVerdict,
    decide_connected,
    exact_failure_probability,
    group_components,
    recovery_probability,
)
from .depth import (
    DepthExperimentReport,
    DepthSchedule,
    asap_schedule,
    depth_bounds,
    lower_bound_fit,
    monte_carlo_depth,
    sorted_complete_depth,
)
from .errors import CapacityError, DissipationError, GraphParseError, InfeasibleError, NodeRangeError
from .graph import (
    ComponentPartition,
    Graph,
    bfs_components,
    complete_graph,
    generate_erdos_renyi,
    generate_fixed_edge_count,
    parse_edge_list,
    shuffle_edges,
)
from .partition_bound import (
    PartitionBoundReport,
    mean_depth_upper_bound,
    n_d,
    partition_bound_report,
    partitions_into_k,
    restricted_compositions,
    row_count,
    row_count_table,
)
from .simulator import (
    MeasurementRecord,
    QuantumState,
    apply_spider_projector,
    expected_final_state,
    init_plus_state,
    run_circuit,
    run_circuit_ancilla_mode,
    sample_measurements,
    survival_report,
)
from .zx import Spider, SpiderCircuit, compile_graph_to_circuit, contract_spiders, spider_matrix
