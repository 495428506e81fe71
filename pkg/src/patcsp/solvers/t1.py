"""Solver for instances in which T1 does not occur.

After removing occurrences of the gadget X, the points of each variable are
totally preordered by their supports towards any other variable.  Pairs
with three or more tiers are staircases and get a simple fusion; the
remaining two-tier structure lets us fuse neighbouring one-winner variables
and neighbouring one-loser variables.  What is left is a bipartite
instance that encodes a NOOSAT problem.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..fusion import COMPLEX, SIMPLE, FusionEvent, FusionSpec, fuse
from ..library import make_named
from ..model import Instance, ModelError, constraint_graph
from ..occurrence import occurs
from .base import Run, SolveResult, StructureViolation, first_values
from .noosat import make_noosat, solve_noosat


@dataclass(frozen=True)
class DomainOrder:
    """The preorder on ``A_v`` by support in ``w``: ``classes`` lists the
    equivalence classes from worst to best."""
    v: str
    w: str
    classes: tuple

    @property
    def tiers(self) -> int:
        return len(self.classes)

    @property
    def winners(self) -> tuple:
        return self.classes[-1]

    @property
    def losers(self) -> tuple:
        return tuple(p for c in self.classes[:-1] for p in c)


def domain_order(inst: Instance, v: str, w: str) -> DomainOrder:
    by_support: dict = {}
    for p in inst.domains[v]:
        by_support.setdefault(frozenset(inst.support(p, w)), []).append(p)
    keys = sorted(by_support, key=len)
    for lo, hi in zip(keys, keys[1:]):
        if not lo < hi:
            raise StructureViolation("order", f"supports of {v} towards {w} are not nested")
    return DomainOrder(v, w, tuple(tuple(by_support[k]) for k in keys))


@dataclass(frozen=True)
class TierInfo:
    orders: dict            # (v, w) -> DomainOrder, for non-trivial scopes

    def one_winner(self, v, inst) -> bool:
        return all(len(o.winners) in (1, len(inst.domains[v]))
                   for (a, _), o in self.orders.items() if a == v)

    def one_loser(self, v) -> bool:
        return all(len(o.losers) <= 1 for (a, _), o in self.orders.items() if a == v)


def tier_info(inst: Instance) -> TierInfo:
    orders = {}
    for v, w in constraint_graph(inst):
        orders[(v, w)] = domain_order(inst, v, w)
        orders[(w, v)] = domain_order(inst, w, v)
    return TierInfo(orders)


def _staircase_fusion(inst: Instance, order: DomainOrder, back: DomainOrder) -> FusionSpec:
    a = [c[0] for c in order.classes]
    b = [c[0] for c in back.classes]
    d = len(a)
    if any(len(c) != 1 for c in order.classes + back.classes) or len(b) != d:
        raise StructureViolation("staircase", f"({order.v}, {order.w}) is not a strict square staircase")
    for i, p in enumerate(a, start=1):
        if set(inst.support(p, order.w)) != set(b[d - i:]):
            raise StructureViolation("staircase", f"{p} does not have the staircase support")
    f = {a[i]: b[d - 1 - i] for i in range(d)}
    return FusionSpec(SIMPLE, order.v, order.w, f)


def _constant_fusion(inst: Instance, va: str, vb: str, hinge: str, target: str) -> FusionSpec:
    f = {u: target for u in inst.domains[va] if u != hinge}
    return FusionSpec(COMPLEX, va, vb, f, hinge)


def _next_step(inst: Instance):
    """The next fusion to perform, or the final E/F split."""
    info = tier_info(inst)
    for (v, w), o in sorted(info.orders.items()):
        if o.tiers >= 3:
            return _staircase_fusion(inst, o, info.orders[(w, v)])
    E = [v for v in inst.variables if info.one_winner(v, inst)]
    F = [v for v in inst.variables if v not in E]
    for v in F:
        if not info.one_loser(v):
            raise StructureViolation("tiers", f"{v} is neither one-winner nor one-loser")
    es, fs = set(E), set(F)
    for v, w in sorted(constraint_graph(inst)):
        if v in es and w in es:
            a = info.orders[(v, w)].winners
            b = info.orders[(w, v)].winners
            if len(a) != 1 or len(b) != 1:
                raise StructureViolation("winners", f"({v}, {w}) lacks unique winners")
            return _constant_fusion(inst, v, w, a[0], b[0])
        if v in fs and w in fs:
            a = info.orders[(v, w)].losers
            b = info.orders[(w, v)].losers
            if len(a) != 1 or len(b) != 1 or b[0] not in inst.conflicts[a[0]]:
                raise StructureViolation("losers", f"({v}, {w}) lacks incompatible unique losers")
            return _constant_fusion(inst, v, w, a[0], b[0])
    return E, F


def noosat_of(inst: Instance, E: list, F: list):
    """The NOOSAT instance of the final bipartite structure, plus for each
    F variable the point standing for each literal (and a free point, if
    any)."""
    es = set(E)
    clauses, chooser = [], {}
    for v in F:
        lits, free = {}, None
        for p in inst.domains[v]:
            cv = inst.conflict_vars(p)
            if not cv:
                free = p
                continue
            if len(cv) != 1 or not cv <= es:
                raise StructureViolation("endgame", f"{p} conflicts with {sorted(cv)}")
            (w,) = cv
            sup = inst.support(p, w)
            if len(sup) != 1:
                raise StructureViolation("endgame", f"{p} is compatible with {len(sup)} points of {w}")
            lits[(w, sup[0])] = p
        chooser[v] = (lits, free)
        if free is None:
            clauses.append(list(lits))
    variables = {v: inst.domains[v] for v in E}
    try:
        return make_noosat(variables, clauses), chooser
    except ModelError as exc:
        raise StructureViolation("endgame", str(exc)) from exc


def solve_t1(instance: Instance) -> SolveResult:
    run = Run(instance)
    x = make_named("X")
    while True:
        if not run.preprocess():
            return run.unsat_result()
        inst = run.instance
        w = occurs(x, inst)
        if w is not None:
            run.remove_point(w.point_map["a"], "X")
            continue
        step = _next_step(inst)
        if isinstance(step, FusionSpec):
            run.instance = fuse(inst, step)
            run.events.append(FusionEvent(step))
            continue
        break
    E, F = step
    noosat, chooser = noosat_of(inst, E, F)
    got = solve_noosat(noosat)
    if got is None:
        return run.unsat_result()
    out = dict(got)
    for v, (lits, free) in chooser.items():
        p = free
        for (u, a), q in lits.items():
            if got[u] == a:
                p = q
                break
        out[v] = p
    return run.sat_result(out)
