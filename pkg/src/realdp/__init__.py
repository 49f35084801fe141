"""Exact invariants of real del Pezzo surfaces of degree 1 to 3."""

__version__ = "0.1.0"

from .lattice import DelPezzoLattice, DivisorClass, make_lattice, pair, reflect, project_perp, weyl_orbit
from .curves import LayerSet, effective_decomposition, is_effective, layer, lines
from .real import QuadraticFunction, RealStructure, make_real_structure, quad_solve, real_layer, wreal
from .invariants import InvariantTable, gamma_from_n, gw_layer_sum, n_closed, n_recursive
from .series import FormalSeries, n_even_series, n_odd_series, tree_function
from .applications import SplitReport, anchor_qhat_minus_k

__all__ = [
    "DelPezzoLattice", "DivisorClass", "FormalSeries", "InvariantTable", "LayerSet",
    "QuadraticFunction", "RealStructure", "SplitReport", "anchor_qhat_minus_k",
    "effective_decomposition", "gamma_from_n", "gw_layer_sum", "is_effective", "layer", "lines",
    "make_lattice", "make_real_structure", "n_closed", "n_even_series", "n_odd_series",
    "n_recursive", "pair", "project_perp", "quad_solve", "real_layer", "reflect", "tree_function",
    "weyl_orbit", "wreal",
]
