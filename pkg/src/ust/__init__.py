"""Uniform and weight-selected spanning trees: exact probabilities, sampling and limits."""
__version__ = "0.1.0"

from .events import CylinderEvent
from .graph import (
    ContractionMap,
    Edge,
    Graph,
    GraphError,
    OrientedEdge,
    build_graph,
    contract,
    delete,
    generate_family,
    grid_vertex,
    is_connected,
    is_spanning_tree,
    regularize,
    torus_vertex,
)
from .harmonic import (
    Potential,
    effective_resistance,
    excess,
    expected_visits,
    hitting_voltage,
    laplacian,
    torus_potential,
    unit_current_potential,
)
from .kernels import BACKEND
from .oracle import (
    TreeEnumeration,
    bitree_weight_sum,
    brute_cylinder_prob,
    enumerate_spanning_trees,
    matrix_tree_count,
)
from .sampler import DirectedSpanningTree, aldous_broder, sample_frequencies, sample_tree_census
from .transfer import (
    TransferMatrix,
    degree_pmf,
    impedance_matrix,
    prob_cylinder,
    prob_cylinder_weighted,
    prob_edges_in,
    transfer_impedance,
)

__all__ = [
    "__version__",
    "BACKEND",
    "CylinderEvent",
    "ContractionMap",
    "Edge",
    "Graph",
    "GraphError",
    "OrientedEdge",
    "build_graph",
    "contract",
    "delete",
    "generate_family",
    "grid_vertex",
    "is_connected",
    "is_spanning_tree",
    "regularize",
    "torus_vertex",
    "Potential",
    "effective_resistance",
    "excess",
    "expected_visits",
    "hitting_voltage",
    "laplacian",
    "torus_potential",
    "unit_current_potential",
    "TreeEnumeration",
    "bitree_weight_sum",
    "brute_cylinder_prob",
    "enumerate_spanning_trees",
    "matrix_tree_count",
    "DirectedSpanningTree",
    "aldous_broder",
    "sample_frequencies",
    "sample_tree_census",
    "TransferMatrix",
    "degree_pmf",
    "impedance_matrix",
    "prob_cylinder",
    "prob_cylinder_weighted",
    "prob_edges_in",
    "transfer_impedance",
]
