"""Discrete-Morse-theoretic invariants of tree braid groups B_nT.

Modules: tree (plane trees, Morse embedding, homeomorphism), cells
(reduced/critical 1-cells, counting), forms (cochains, differential,
change of basis, cup products), delta (the complex Delta, tree
reconstruction, isomorphism decision), oracle (brute-force configuration
space homology), cli (command-line surface).
"""

from . import cells, cli, delta, forms, oracle, tree
from .cells import ReducedOneCell, count_critical_cells, radial_rank
from .delta import DeltaGraph, Undefined, build_delta, decide_isomorphic, \
    detect_n, reconstruct_tree
from .tree import PlaneTree, parse_tree, subdivide_for, to_text, \
    trees_homeomorphic

__all__ = [
    "cells", "cli", "delta", "forms", "oracle", "tree",
    "ReducedOneCell", "count_critical_cells", "radial_rank",
    "DeltaGraph", "Undefined", "build_delta", "decide_isomorphic",
    "detect_n", "reconstruct_tree",
    "PlaneTree", "parse_tree", "subdivide_for", "to_text",
    "trees_homeomorphic",
]

__version__ = "0.1.0"
