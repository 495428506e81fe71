"""Solver for instances in which T2 does not occur.

Components of the constraint graph fall into two kinds.  Where some point
is incompatible with two different variables, every constraint is
functional or trivial, so fixing one variable forces the others; we try
each value of a seed variable.  Elsewhere every point conflicts with at
most one variable, which turns the component into a matching problem.
"""
from __future__ import annotations

import networkx as nx
from networkx.algorithms.bipartite import hopcroft_karp_matching

from ..model import Instance, neighbours
from .base import Committed, Run, SolveResult, StructureViolation, components, first_values
from .propagation import propagate, support_profile


def _has_vminus(inst: Instance, comp) -> bool:
    return any(len(inst.conflict_vars(p)) >= 2 for v in comp for p in inst.domains[v])


def _functional_or_trivial(inst: Instance, v: str, w: str) -> bool:
    return support_profile(inst, v, w) == {1} or support_profile(inst, w, v) == {1}


def _solve_functional(inst: Instance, comp: list, adj: dict) -> dict | None:
    for v in comp:
        for w in adj[v]:
            if not _functional_or_trivial(inst, v, w):
                raise StructureViolation("functional", f"constraint ({v}, {w}) is neither functional nor trivial")
    inner = [v for v in comp if len(adj[v]) > 1]
    seed = min(inner or comp)
    sub = inst.restrict(drop_vars=[v for v in inst.variables if v not in comp])
    for x in sub.domains[seed]:
        got = propagate(sub, {seed: x}, adj=adj)
        if got is None:
            continue
        fixed = set(got.values())
        keep = [p for p in sub.var_of if sub.var_of[p] not in got or p in fixed]
        rest = _solve(sub.restrict(keep=keep))
        if rest is not None:
            return rest
    return None


def _solve_matching(inst: Instance, comp: list, adj: dict) -> dict | None:
    """Each variable commits to its free points or to the points conflicting
    with one neighbour.  Two neighbours committing towards each other clash
    only when no pair across their groups is compatible."""
    groups: dict = {}
    free: dict = {}
    for v in comp:
        for p in inst.domains[v]:
            cv = inst.conflict_vars(p)
            if not cv:
                free.setdefault(v, p)
            else:
                (w,) = cv
                groups.setdefault((v, w), []).append(p)
    good: dict = {}
    for (v, w), gv in groups.items():
        if v < w:
            gw = groups[(w, v)]
            pick = next(((p, q) for p in gv for q in gw if q not in inst.conflicts[p]), None)
            if pick is not None:
                good[(v, w)], good[(w, v)] = pick, pick[::-1]
    g = nx.Graph()
    top = [("var", v) for v in comp]
    g.add_nodes_from(top)
    for v in comp:
        if v in free:
            g.add_edge(("var", v), ("own", v))
        for (a, w) in groups:
            if a != v:
                continue
            if (v, w) in good:
                g.add_edge(("var", v), ("own", v))
            else:
                g.add_edge(("var", v), ("edge", frozenset((v, w))))
    matching = hopcroft_karp_matching(g, top_nodes=top)
    out = {}
    for v in comp:
        item = matching.get(("var", v))
        if item is None:
            return None
        if item[0] == "own":
            if v in free:
                out[v] = free[v]
            else:
                w = next(w for (a, w) in good if a == v)
                out[v] = good[(v, w)][0]
        else:
            (w,) = item[1] - {v}
            out[v] = groups[(v, w)][0]
    return out


def _solve(inst: Instance) -> dict | None:
    run = Run(inst)
    if not run.preprocess():
        return None
    cur = run.instance
    adj = neighbours(cur)
    result = {}
    for comp in components(cur):
        if len(comp) == 1:
            result[comp[0]] = cur.domains[comp[0]][0]
            continue
        if _has_vminus(cur, comp):
            got = _solve_functional(cur, comp, adj)
        else:
            got = _solve_matching(cur, comp, adj)
        if got is None:
            return None
        result.update(got)
    return run.sat_result(result).assignment


def solve_t2(instance: Instance) -> SolveResult:
    run = Run(instance)
    if not run.preprocess():
        return run.unsat_result()
    got = _solve(run.instance)
    if got is None:
        return run.unsat_result()
    run.events.append(Committed(tuple(sorted(got.items()))))
    return run.sat_result({})
