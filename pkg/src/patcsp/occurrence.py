"""Pattern occurrence and pattern isomorphism.

A pattern P occurs in a target T when some sequence of extensions and
merges turns P into (a copy of) T.  Operationally this is a label
preserving map: variables go injectively to target variables, points go
to points of the image variable, every defined edge of P lands on a
target pair carrying the same label.  Two points of one variable may land
on the same target point (a merge) unless a distinctness disjunction of P
forbids it.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .model import Instance, Pattern, pair


@dataclass(frozen=True)
class OccurrenceWitness:
    var_map: dict = field(default_factory=dict)
    point_map: dict = field(default_factory=dict)

    def validate(self, pattern: Pattern, target) -> bool:
        """Re-check every witness invariant against ``pattern`` and ``target``."""
        vm, pm = self.var_map, self.point_map
        if set(vm) != set(pattern.variables) or set(pm) != set(pattern.points):
            return False
        if len(set(vm.values())) != len(vm):
            return False
        for p in pattern.points:
            if target.var_of.get(pm[p]) != vm[pattern.var_of[p]]:
                return False
        for e, label in pattern.edges.items():
            p, q = tuple(e)
            if target.label(pm[p], pm[q]) is not label:
                return False
        return all(_disjunction_holds(d, pm, target) for d in pattern.distinct_any)


def _forced_distinct(target: Pattern, x: str, y: str) -> bool:
    """Two points of a pattern that no occurrence in an instance can send to
    the same point: they disagree on a common neighbour."""
    nx_, ny = target.neighbours(x), target.neighbours(y)
    return any(nx_[z] != ny[z] for z in nx_.keys() & ny.keys())


def _disjunction_holds(disj, pm, target) -> bool:
    image = set()
    for e in disj:
        a, b = tuple(e)
        if pm[a] != pm[b]:
            image.add(pair(pm[a], pm[b]))
    if isinstance(target, Instance):
        return bool(image)
    # Distinct points of a pattern target may still coincide in an
    # instance, so the pair must be kept apart by the target itself: by
    # conflicting labels or by the target's own distinctness structure.
    if any(_forced_distinct(target, *tuple(e)) for e in image):
        return True
    return any(set(d) <= image for d in target.distinct_any)


def _search_order(pattern: Pattern) -> list:
    """Points ordered so each one is edge-connected to earlier points when
    possible.  Incompatibility edges are the selective ones, so points with
    many of them come first."""
    remaining = set(pattern.points)
    order = []

    def weight(p):
        nb = pattern.neighbours(p)
        return (sum(1 for lab in nb.values() if not lab), len(nb))

    while remaining:
        start = max(sorted(remaining), key=weight)
        frontier = [start]
        remaining.discard(start)
        while frontier:
            p = frontier.pop(0)
            order.append(p)
            nb = pattern.neighbours(p)
            nxt = sorted((q for q in nb if q in remaining),
                         key=lambda q: (nb[q], [-x for x in weight(q)], q))
            for q in nxt:
                remaining.discard(q)
                frontier.append(q)
    return order


def iter_occurrences(pattern: Pattern, target, injective: bool = False):
    """Yield every occurrence witness (possibly many).

    With ``injective`` set, distinct pattern points must map to distinct
    target points (used by the isomorphism test).
    """
    order = _search_order(pattern)
    index = {p: i for i, p in enumerate(order)}
    # Edges back to earlier points, checked when a point is placed;
    # incompatibility edges first since they narrow the candidates.
    back = []
    for p in order:
        bs = [(q, lab) for q, lab in pattern.neighbours(p).items() if index[q] < index[p]]
        back.append(sorted(bs, key=lambda t: (t[1], index[t[0]])))
    # Disjunctions checked once their last point is placed.
    disj_at = [[] for _ in order]
    for d in pattern.distinct_any:
        last = max(index[x] for e in d for x in e)
        disj_at[last].append(d)
    pointless = [v for v in pattern.variables if not pattern.domain(v)]
    tvars = list(target.variables)
    var_of = pattern.var_of
    tlabel = target.label
    is_inst = isinstance(target, Instance)
    tconf = target.conflicts if is_inst else None
    tvar_of = target.var_of

    vm: dict = {}
    pm: dict = {}
    used_vars: set = set()
    used_pts: set = set()

    def place(i):
        if i == len(order):
            yield from finish()
            return
        p = order[i]
        v = var_of[p]
        if v in vm:
            yield from place_point(i, p, vm[v])
            return
        choices = tvars
        if is_inst and back[i] and not back[i][0][1]:
            near = {tvar_of[y] for y in tconf[pm[back[i][0][0]]]}
            choices = [tv for tv in tvars if tv in near]
        for tv in choices:
            if tv in used_vars:
                continue
            vm[v] = tv
            used_vars.add(tv)
            yield from place_point(i, p, tv)
            used_vars.discard(tv)
            del vm[v]

    def place_point(i, p, tv):
        checks = back[i]
        cands = target.domain(tv)
        if is_inst and checks and not checks[0][1]:
            near = tconf[pm[checks[0][0]]]
            cands = [x for x in cands if x in near]
        for x in cands:
            if injective and x in used_pts:
                continue
            ok = True
            if is_inst:
                cx = tconf[x]
                for q, lab in checks:
                    if (pm[q] in cx) is lab:
                        ok = False
                        break
            else:
                for q, lab in checks:
                    if tlabel(x, pm[q]) is not lab:
                        ok = False
                        break
            if not ok:
                continue
            pm[p] = x
            if all(_disjunction_holds(d, pm, target) for d in disj_at[i]):
                if injective:
                    used_pts.add(x)
                yield from place(i + 1)
                if injective:
                    used_pts.discard(x)
            del pm[p]

    def finish():
        free = [tv for tv in tvars if tv not in used_vars]
        if len(free) < len(pointless):
            return
        extra = dict(zip(pointless, free))
        yield OccurrenceWitness({**vm, **extra}, dict(pm))

    yield from place(0)


def occurs(pattern: Pattern, target) -> OccurrenceWitness | None:
    """Return one witness that ``pattern`` occurs in ``target`` (a pattern or
    an instance), or ``None``."""
    if len(pattern.variables) > len(target.variables):
        return None
    return next(iter_occurrences(pattern, target), None)


def is_free(instance: Instance, pattern: Pattern) -> bool:
    return occurs(pattern, instance) is None


def pattern_isomorphic(p: Pattern, q: Pattern) -> bool:
    """True iff a renaming of variables and points maps ``p`` exactly onto
    ``q``, distinctness structure included."""
    if (len(p.variables), len(p.points), len(p.edges), len(p.distinct_any)) != \
            (len(q.variables), len(q.points), len(q.edges), len(q.distinct_any)):
        return False
    if sorted(p.edges.values()) != sorted(q.edges.values()):
        return False
    want = {frozenset(d) for d in q.distinct_any}
    for w in iter_occurrences(p, q, injective=True):
        pm = w.point_map
        mapped = {frozenset(pair(pm[a], pm[b]) for a, b in map(tuple, d)) for d in p.distinct_any}
        if mapped == want:
            return True
    return False
