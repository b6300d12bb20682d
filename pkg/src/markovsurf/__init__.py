"""Markov triples, toric Markov surfaces, Markov C*-surfaces and the checks around them."""

from .cstar import (
    CstarMatrix,
    covering_package,
    cstar_from_matrix,
    cstar_report,
    degeneration_package,
    validate_cstar,
)
from .errors import InvariantViolation, MarkovSurfError
from .exact import IntMat, smith_normal_form
from .fwpp import (
    GeneratorMatrix,
    class_group,
    classify_cone,
    fake_weights,
    recognize_toric_markov,
    toric_markov_surface,
    toric_surface_report,
    validate_generator_matrix,
)
from .markov import MarkovEdge, MarkovTriple, adjacent_thirds, edge_between, expand_tree, mutate
from .markov_cstar import (
    MarkovCstarSurface,
    build_markov_surface,
    classify_plane_degeneration,
    recognize_by_local_class_groups,
    solve_d1_d2,
)

__version__ = "0.1.0"

__all__ = [
    "CstarMatrix", "GeneratorMatrix", "IntMat", "InvariantViolation", "MarkovCstarSurface",
    "MarkovEdge", "MarkovSurfError", "MarkovTriple", "adjacent_thirds", "build_markov_surface",
    "class_group", "classify_cone", "classify_plane_degeneration", "covering_package",
    "cstar_from_matrix", "cstar_report", "degeneration_package", "edge_between", "expand_tree",
    "fake_weights", "mutate", "recognize_by_local_class_groups", "recognize_toric_markov",
    "smith_normal_form", "solve_d1_d2", "toric_markov_surface", "toric_surface_report",
    "validate_cstar", "validate_generator_matrix",
]
