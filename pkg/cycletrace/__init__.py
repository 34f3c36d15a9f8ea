"""Full cyclic and identity edge orderings of connected multigraphs."""
from cycletrace.graph import Multigraph, validate
from cycletrace.perm import EdgeOrdering, Permutation, permutation_of_ordering
from cycletrace.rotation import Dart, RotationSystem, trace_faces
from cycletrace.search import construct_fcp_ordering, has_fcp_ordering, max_genus_bruteforce

__all__ = [
    "Dart",
    "EdgeOrdering",
    "Multigraph",
    "Permutation",
    "RotationSystem",
    "construct_fcp_ordering",
    "has_fcp_ordering",
    "max_genus_bruteforce",
    "permutation_of_ordering",
    "trace_faces",
    "validate",
]
