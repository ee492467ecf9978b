"""Exact arithmetic for the 216 triangle partition maps, their Farey and
barycentric subdivisions and the question-mark analogs between them."""
from __future__ import annotations

from .barycentric import (
    BaryLimit, BaryTriangle, G0, G1, bary_matrices, bary_partition, bary_sequence, bary_triangle,
    normalized_area, periodic_limit_bary, side_lengths, tent_cylinder, tent_step,
)
from .classes import (
    TripleClass, class_of, classify_all, conjugate, list_discrepancies, same_partition, singularity_status,
    status_counts, twin,
)
from .errors import ParseError, TripError
from .farey import (
    F0, F1, AdditiveSeq, FareyLimit, MultiplicativeSeq, PermTriple, ProjTriangle, additive_from_multiplicative,
    additive_sequence, all_triples, farey_matrices, farey_partition, farey_triangle, gauss_step,
    multiplicative_from_additive, multiplicative_sequence, periodic_limit_farey, triple,
)
from .lab import (
    ExperimentConfig, SnReport, convergence_survey, cylinder_areas, degenerate_detect, f1_power_form,
    measure_recursion_check, sn_experiment, tail_cylinder_area_bound,
)
from .linalg import BASE, Mat3, Point, parse_point, point, project
from .minkowski import DyadicSet, FareySet, PhiApprox, classical_qmark, degenerate_phi, phi_eval, phi_n_vertex_map

__version__ = "0.1.0"
