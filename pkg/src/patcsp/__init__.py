"""Binary CSP with forbidden patterns: occurrence, the one- and
two-constraint dichotomy, and polynomial solvers for the tractable
classes."""
from .fusion import COMPLEX, SIMPLE, FusionSpec, complex_fusion, expand_solution, simple_fusion
from .library import make_named
from .model import Instance, ModelError, Pattern, build_instance, constraint_graph, is_solution
from .occurrence import OccurrenceWitness, occurs, pattern_isomorphic
from .preprocess import (enforce_arc_consistency, eliminate_single_valued,
                         neighbourhood_substitution, preprocess_to_convergence)
from .reduction import Classification, classify, reduces_to
from .solvers import SolveResult, oracle_solve, solve

__all__ = [
    "Pattern", "Instance", "ModelError", "build_instance", "constraint_graph", "is_solution",
    "OccurrenceWitness", "occurs", "pattern_isomorphic",
    "enforce_arc_consistency", "eliminate_single_valued", "neighbourhood_substitution",
    "preprocess_to_convergence",
    "FusionSpec", "SIMPLE", "COMPLEX", "simple_fusion", "complex_fusion", "expand_solution",
    "make_named", "Classification", "classify", "reduces_to",
    "SolveResult", "solve", "oracle_solve",
]
