"""Finite-size embodiments of the large-graph limits of uniform spanning trees."""
from .domino import DominoTiling, board_cells, temperley_matching
from .entropy import (
    entropy_integrand,
    spanning_tree_entropy_finite,
    spanning_tree_entropy_integral,
    torus_laplacian_eigenvalues,
)
from .poisson import (
    PoissonPlusOne,
    falling_factorial,
    falling_factorial_moment,
    kn_degree_pmf,
    poisson_plus_one_pmf,
)
from .trees import (
    MomentEstimate,
    RootedTree,
    galton_watson_sample,
    gw_generation_sizes,
    gw_tree_moment,
    incipient_cluster_sample,
    incipient_tree_moment,
    tree_map_count,
    ust_tree_moment,
)

__all__ = [
    "DominoTiling",
    "board_cells",
    "temperley_matching",
    "entropy_integrand",
    "spanning_tree_entropy_finite",
    "spanning_tree_entropy_integral",
    "torus_laplacian_eigenvalues",
    "PoissonPlusOne",
    "falling_factorial",
    "falling_factorial_moment",
    "kn_degree_pmf",
    "poisson_plus_one_pmf",
    "MomentEstimate",
    "RootedTree",
    "galton_watson_sample",
    "gw_generation_sizes",
    "gw_tree_moment",
    "incipient_cluster_sample",
    "incipient_tree_moment",
    "tree_map_count",
    "ust_tree_moment",
]
