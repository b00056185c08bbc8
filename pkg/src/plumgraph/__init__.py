"""Plum graphs P_{2n+1}: diagrams, linking vectors, crossing-change move
vectors, exact L1 lower bounds for unknotting numbers, knotted projections
and linear unknotting-number bounds.
"""
from .bounds import (BoundConstants, descending_audit, descending_change_set,
                     optimize_constants, reorder_cost, branch_indices,
                     theorem2_constants, trivializable_bound)
from .diagram import (Diagram, Projection, crossing_change, cube_knotted_projection,
                      mirror, project, resolutions, standard_plum_diagram,
                      validate_diagram)
from .graph import (Cycle, PlanarGraph, PlumGraph, SpanningTree, build_plum_graph,
                    cube_graph, disjoint_cycle_pairs, enumerate_cycles, spanning_tree)
from .invariants import (knot_determinant, linking_number, linking_vector,
                         nontriviality_certificate, writhe)
from .l1 import L1Problem, min_l1, prefix_min_l1, verify_unknotting_number
from .moves import crossing_change_delta, move_set

__version__ = "0.1.0"

__all__ = [
    "BoundConstants", "Cycle", "Diagram", "L1Problem", "PlanarGraph", "PlumGraph",
    "Projection", "SpanningTree", "branch_indices", "build_plum_graph",
    "crossing_change", "crossing_change_delta", "cube_graph", "cube_knotted_projection",
    "descending_audit", "descending_change_set", "disjoint_cycle_pairs",
    "enumerate_cycles", "knot_determinant", "linking_number", "linking_vector",
    "min_l1", "mirror", "move_set", "nontriviality_certificate", "optimize_constants",
    "prefix_min_l1", "project", "reorder_cost", "resolutions", "spanning_tree",
    "standard_plum_diagram", "theorem2_constants", "trivializable_bound",
    "validate_diagram", "verify_unknotting_number", "writhe",
]
