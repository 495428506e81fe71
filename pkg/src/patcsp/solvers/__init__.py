"""Polynomial solvers for the tractable forbidden-pattern classes, the
brute-force oracle and a dispatcher."""
from __future__ import annotations

from ..library import SOLVABLE_CLASSES, canonical_name, make_named
from ..model import Instance, is_solution
from ..occurrence import occurs
from .base import (Committed, PatternPresent, PointRemoval, SolveResult,
                   StructureViolation, lift)
from .noosat import NoosatInstance, make_noosat, solve_noosat
from .oracle import BudgetExceeded, oracle_solve
from .propagation import propagate, solve_1i, solve_2i, solve_t3, solve_t4, solve_t5, zoa_solve
from .t1 import DomainOrder, TierInfo, domain_order, solve_t1, tier_info
from .t2 import solve_t2

SOLVERS = {
    "OneI": solve_1i, "TwoI": solve_2i, "T1": solve_t1, "T2": solve_t2,
    "T3": solve_t3, "T4": solve_t4, "T5": solve_t5,
}


def solve(instance: Instance, class_name: str, check_free: bool = False) -> SolveResult:
    """Solve an instance known to be free of the named pattern.

    With ``check_free`` the precondition is verified first and a
    :class:`PatternPresent` is raised if the pattern occurs.
    """
    name = canonical_name(class_name)
    if name not in SOLVERS:
        raise KeyError(f"no solver for {class_name!r}; solvable: {', '.join(SOLVABLE_CLASSES)}")
    if check_free:
        w = occurs(make_named(name), instance)
        if w is not None:
            raise PatternPresent(f"{name} occurs in the instance: {dict(w.point_map)}")
    result = SOLVERS[name](instance)
    if result.sat and not is_solution(instance, result.assignment):
        raise StructureViolation("lift", "assignment does not solve the original instance")
    return result


__all__ = [
    "SOLVERS", "solve", "oracle_solve", "BudgetExceeded", "SolveResult", "StructureViolation",
    "PatternPresent", "PointRemoval", "Committed", "lift", "propagate", "zoa_solve",
    "solve_1i", "solve_2i", "solve_t1", "solve_t2", "solve_t3", "solve_t4", "solve_t5",
    "solve_noosat", "NoosatInstance", "make_noosat", "DomainOrder", "TierInfo",
    "domain_order", "tier_info",
]
