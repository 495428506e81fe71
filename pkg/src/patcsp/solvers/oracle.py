"""Exhaustive backtracking with forward checking; ground truth for tests."""
from __future__ import annotations

from ..model import Instance
from .base import SolveResult


class BudgetExceeded(RuntimeError):
    pass


def oracle_solve(instance: Instance, node_budget: int | None = 1_000_000) -> SolveResult:
    """Decide ``instance`` by search: smallest current domain first, each
    assignment filtering the domains of the unassigned variables."""
    nodes = 0
    conf = instance.conflicts
    assignment: dict = {}

    def search(doms: dict) -> bool:
        nonlocal nodes
        if not doms:
            return True
        v = min(doms, key=lambda u: len(doms[u]))
        rest = {u: d for u, d in doms.items() if u != v}
        for p in doms[v]:
            nodes += 1
            if node_budget is not None and nodes > node_budget:
                raise BudgetExceeded(f"oracle exceeded {node_budget} nodes")
            cp = conf[p]
            filtered = {}
            for u, d in rest.items():
                nd = [q for q in d if q not in cp]
                if not nd:
                    break
                filtered[u] = nd
            else:
                assignment[v] = p
                if search(filtered):
                    return True
        assignment.pop(v, None)
        return False

    doms = {v: list(instance.domains[v]) for v in instance.variables}
    if any(not d for d in doms.values()):
        return SolveResult(False)
    if search(doms):
        return SolveResult(True, dict(assignment))
    return SolveResult(False)
