"""Arc consistency, single-valued variable elimination and neighbourhood
substitution, plus a driver running all three to a joint fixpoint.

Each operation returns the simplified instance together with a
:class:`PreprocessTrace`.  A wiped-out domain is reported through
``trace.unsat``; it is a normal outcome, not an error.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .model import Instance


@dataclass(frozen=True)
class ArcRemoval:
    point: str
    unsupported_at: str


@dataclass(frozen=True)
class SingletonElim:
    variable: str
    point: str
    removed: tuple = ()


@dataclass(frozen=True)
class NeighbourhoodSub:
    removed: str
    dominating: str


@dataclass
class PreprocessTrace:
    events: list = field(default_factory=list)
    unsat: bool = False

    def extend(self, other: "PreprocessTrace"):
        self.events.extend(other.events)
        self.unsat = self.unsat or other.unsat

    def assignments(self) -> dict:
        """Values fixed by single-valued eliminations."""
        return {e.variable: e.point for e in self.events if isinstance(e, SingletonElim)}


class _Work:
    """Mutable working copy of an instance."""

    def __init__(self, inst: Instance):
        self.order = list(inst.variables)
        self.dom = {v: list(inst.domains[v]) for v in inst.variables}
        self.var_of = dict(inst.var_of)
        self.conf = {p: set(c) for p, c in inst.conflicts.items()}

    def remove_point(self, p):
        v = self.var_of.pop(p)
        self.dom[v].remove(p)
        for q in self.conf.pop(p):
            self.conf[q].discard(p)

    def remove_var(self, v):
        for p in list(self.dom[v]):
            self.remove_point(p)
        del self.dom[v]
        self.order.remove(v)

    def wiped(self):
        return any(not self.dom[v] for v in self.order)

    def freeze(self) -> Instance:
        out = Instance.__new__(Instance)
        out.domains = {v: tuple(self.dom[v]) for v in self.order}
        out.variables = tuple(self.order)
        out.var_of = dict(self.var_of)
        out.conflicts = {p: frozenset(c) for p, c in self.conf.items()}
        return out


def _unsupported(w: _Work):
    """Points with no compatible point in some other variable, paired with
    that variable."""
    out = []
    for v in w.order:
        for p in w.dom[v]:
            cp = w.conf[p]
            for u in w.order:
                if u == v:
                    continue
                du = w.dom[u]
                if len(du) <= len(cp) and all(q in cp for q in du):
                    out.append((p, u))
                    break
    return out


def _ac(w: _Work, trace: PreprocessTrace) -> bool:
    changed = False
    while not trace.unsat:
        bad = _unsupported(w)
        if not bad:
            break
        changed = True
        for p, u in bad:
            w.remove_point(p)
            trace.events.append(ArcRemoval(p, u))
        if w.wiped():
            trace.unsat = True
    return changed


def _singletons(w: _Work, trace: PreprocessTrace, cascade: bool) -> bool:
    changed = False
    while not trace.unsat:
        single = [v for v in w.order if len(w.dom[v]) == 1]
        if not single:
            break
        for v in single:
            if v not in w.dom or len(w.dom[v]) != 1:
                continue
            a = w.dom[v][0]
            removed = tuple(sorted(w.conf[a], key=lambda q: (w.order.index(w.var_of[q]), q)))
            for q in removed:
                w.remove_point(q)
            w.remove_var(v)
            trace.events.append(SingletonElim(v, a, removed))
            changed = True
            if w.wiped():
                trace.unsat = True
                break
        if not cascade:
            break
    return changed


def _ns(w: _Work, trace: PreprocessTrace) -> bool:
    changed = False
    again = True
    while again:
        again = False
        for v in w.order:
            dom = w.dom[v]
            if len(dom) < 2:
                continue
            drop = []
            for a in dom:
                ca = w.conf[a]
                for b in dom:
                    if b == a or b in drop:
                        continue
                    cb = w.conf[b]
                    # b dominates a: everything compatible with a is
                    # compatible with b.  Ties drop the larger id.
                    if cb <= ca and (cb != ca or b < a):
                        drop.append(a)
                        trace.events.append(NeighbourhoodSub(a, b))
                        break
            for a in drop:
                w.remove_point(a)
            if drop:
                changed = again = True
    return changed


def enforce_arc_consistency(instance: Instance):
    w = _Work(instance)
    trace = PreprocessTrace()
    if w.wiped():
        trace.unsat = True
    _ac(w, trace)
    return w.freeze(), trace


def eliminate_single_valued(instance: Instance, cascade: bool = False):
    """Eliminate the variables that are single-valued on entry.

    With ``cascade`` the elimination repeats until no single-valued
    variable remains.  The joint fixpoint with arc consistency is
    :func:`preprocess_to_convergence`.
    """
    w = _Work(instance)
    trace = PreprocessTrace()
    if w.wiped():
        trace.unsat = True
    _singletons(w, trace, cascade)
    return w.freeze(), trace


def neighbourhood_substitution(instance: Instance):
    w = _Work(instance)
    trace = PreprocessTrace()
    _ns(w, trace)
    return w.freeze(), trace


def preprocess_to_convergence(instance: Instance):
    """Arc consistency, then single-valued elimination, then neighbourhood
    substitution, repeated until none of them changes anything."""
    w = _Work(instance)
    trace = PreprocessTrace()
    if w.wiped():
        trace.unsat = True
    while not trace.unsat:
        changed = _ac(w, trace)
        if trace.unsat:
            break
        changed |= _singletons(w, trace, cascade=True)
        if trace.unsat:
            break
        changed |= _ns(w, trace)
        if not changed:
            break
    return w.freeze(), trace


def replay(instance: Instance, trace: PreprocessTrace) -> Instance:
    """Apply the recorded events to ``instance``."""
    w = _Work(instance)
    for e in trace.events:
        if isinstance(e, SingletonElim):
            for q in e.removed:
                w.remove_point(q)
            w.remove_var(e.variable)
        elif isinstance(e, ArcRemoval):
            w.remove_point(e.point)
        else:
            w.remove_point(e.removed)
    return w.freeze()
