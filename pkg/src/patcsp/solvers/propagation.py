"""Forced-value propagation and the solvers built on it: bijections
(T3), zero-one-all constraints (T4) and the BTP greedy (T5)."""
from __future__ import annotations

from ..library import make_named
from ..model import Instance, neighbours
from ..occurrence import occurs
from .base import Committed, Run, SolveResult, StructureViolation, components, first_values


def propagate(instance: Instance, start: dict, active=None, adj=None) -> dict | None:
    """Extend ``start`` by every value it forces.

    A value whose support in a neighbouring variable is a single point
    forces that point.  Returns ``None`` when some value has no support or
    two assigned values conflict.  Only variables in ``active`` (default:
    all) take part.
    """
    adj = neighbours(instance) if adj is None else adj
    out = dict(start)
    queue = list(start)
    while queue:
        u = queue.pop()
        x = out[u]
        cx = instance.conflicts[x]
        for w in adj[u]:
            if active is not None and w not in active:
                continue
            sup = [q for q in instance.domains[w] if q not in cx]
            if not sup:
                return None
            if w in out:
                if out[w] in cx:
                    return None
            elif len(sup) == 1:
                out[w] = sup[0]
                queue.append(w)
    return out


def support_profile(instance: Instance, v: str, w: str) -> set:
    """Sizes of the supports in ``w`` of the points of ``v``."""
    return {len(instance.support(p, w)) for p in instance.domains[v]}


def _check_constraints(instance: Instance, ok, stage: str, what: str):
    for v, w in sorted(_scopes(instance)):
        if not ok(instance, v, w):
            raise StructureViolation(stage, f"constraint ({v}, {w}) is not {what}")


def _scopes(instance):
    from ..model import constraint_graph
    return constraint_graph(instance)


def _is_bijection(instance, v, w):
    return (support_profile(instance, v, w) == {1} and support_profile(instance, w, v) == {1})


def _is_zoa(instance, v, w):
    for a, b in ((v, w), (w, v)):
        n = len(instance.domains[b])
        if not support_profile(instance, a, b) <= {0, 1, n}:
            return False
    return True


def _eliminate_gadget(run: Run, gadget: str, point: str) -> bool:
    """Alternate preprocessing with removal of ``point`` from occurrences
    of ``gadget``.  ``False`` on a wipe-out."""
    pat = make_named(gadget)
    while True:
        if not run.preprocess():
            return False
        w = occurs(pat, run.instance)
        if w is None:
            return True
        run.remove_point(w.point_map[point], gadget)


def zoa_solve(instance: Instance) -> dict | None:
    """Solve an instance whose constraints are all zero-one-all.

    Pick the first unassigned variable and try its values in turn; a value
    whose forced consequences are consistent is committed, since the
    committed variables then support every value of the rest.  If no value
    survives the instance has no solution.
    """
    adj = neighbours(instance)
    remaining = set(instance.variables)
    result: dict = {}
    for v in instance.variables:
        if v not in remaining:
            continue
        for x in instance.domains[v]:
            got = propagate(instance, {v: x}, remaining, adj)
            if got is not None:
                break
        else:
            return None
        result.update(got)
        remaining -= got.keys()
    return result


def solve_t3(instance: Instance) -> SolveResult:
    run = Run(instance)
    if not _eliminate_gadget(run, "N_T3", "c"):
        return run.unsat_result()
    inst = run.instance
    _check_constraints(inst, _is_bijection, "bijections", "a bijection")
    adj = neighbours(inst)
    result: dict = {}
    for comp in components(inst):
        seed = comp[0]
        for x in inst.domains[seed]:
            got = propagate(inst, {seed: x}, adj=adj)
            if got is not None:
                break
        else:
            return run.unsat_result()
        if len(got) != len(comp):
            raise StructureViolation("bijections", f"propagation from {seed} left variables open")
        result.update(got)
    run.events.append(Committed(tuple(sorted(result.items()))))
    return run.sat_result({})


def solve_t4(instance: Instance) -> SolveResult:
    run = Run(instance)
    if not _eliminate_gadget(run, "W", "c"):
        return run.unsat_result()
    inst = run.instance
    _check_constraints(inst, _is_zoa, "zero-one-all", "zero-one-all")
    got = zoa_solve(inst)
    if got is None:
        return run.unsat_result()
    run.events.append(Committed(tuple(sorted(got.items()))))
    return run.sat_result({})


def solve_t5(instance: Instance) -> SolveResult:
    run = Run(instance)
    if not run.preprocess():
        return run.unsat_result()
    inst = run.instance
    chosen: dict = {}
    used: set = set()
    for v in inst.variables:
        for p in inst.domains[v]:
            if not (inst.conflicts[p] & used):
                chosen[v] = p
                used.add(p)
                break
        else:
            raise StructureViolation("greedy", f"no value of {v} fits the partial assignment")
    return run.sat_result(chosen)


def solve_1i(instance: Instance) -> SolveResult:
    run = Run(instance)
    if any(instance.conflicts.values()):
        raise StructureViolation("precondition", "instance has an incompatible pair")
    if any(not d for d in instance.domains.values()):
        return run.unsat_result()
    return run.sat_result(first_values(instance))


def solve_2i(instance: Instance) -> SolveResult:
    """No two non-trivial constraints on four distinct variables: the
    constraint graph is empty, a star or a triangle."""
    from itertools import product

    from ..model import constraint_graph
    run = Run(instance)
    if not run.preprocess():
        return run.unsat_result()
    inst = run.instance
    edges = sorted(constraint_graph(inst))
    if not edges:
        return run.sat_result(first_values(inst))
    touched = {v for e in edges for v in e}
    centre = next((v for v in inst.variables if all(v in e for e in edges)), None)
    if centre is None:
        if len(touched) != 3:
            raise StructureViolation("2I", "two disjoint non-trivial constraints")
        tri = [v for v in inst.variables if v in touched]
        order = tri
    else:
        order = [centre]
    others = [v for v in inst.variables if v not in order]
    for combo in product(*(inst.domains[v] for v in order)):
        if any(q in inst.conflicts[p] for i, p in enumerate(combo) for q in combo[i + 1:]):
            continue
        used = set(combo)
        chosen = dict(zip(order, combo))
        for v in others:
            p = next((p for p in inst.domains[v] if not (inst.conflicts[p] & used)), None)
            if p is None:
                break
            chosen[v] = p
        else:
            return run.sat_result(chosen)
    return run.unsat_result()
