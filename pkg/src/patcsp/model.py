"""Patterns, binary CSP instances and the elementary queries on them.

Points are globally unique string ids, each belonging to one variable.  A
pattern labels *some* cross-variable point pairs as compatible or
incompatible; an instance labels all of them.  Instances store only their
incompatible pairs: any other cross-variable pair is compatible.
"""
from __future__ import annotations

from collections import namedtuple
from itertools import combinations
from typing import Iterable, Mapping

COMPATIBLE = True
INCOMPATIBLE = False


class ModelError(ValueError):
    """Malformed pattern, instance or assignment."""


def pair(p: str, q: str) -> frozenset:
    return frozenset((p, q))


class Pattern:
    """A partially specified binary CSP.

    ``edges`` maps unordered point pairs to ``True`` (compatible) or
    ``False`` (incompatible); missing pairs are undefined.  ``distinct_any``
    is a tuple of disjunctions, each a tuple of same-variable point pairs of
    which at least one must stay unmerged.
    """

    __slots__ = ("variables", "var_of", "points", "edges", "distinct_any", "_adj", "_dom")

    def __init__(self, var_of: Mapping[str, str], edges: Mapping[frozenset, bool] = (),
                 distinct_any: Iterable[Iterable[Iterable[str]]] = (),
                 variables: Iterable[str] = ()):
        self.var_of = dict(var_of)
        self.points = tuple(sorted(self.var_of))
        seen = list(variables)
        for p in self.points:
            if self.var_of[p] not in seen:
                seen.append(self.var_of[p])
        self.variables = tuple(seen)
        self.edges = {}
        for e, label in dict(edges).items():
            e = frozenset(e)
            if len(e) != 2:
                raise ModelError(f"edge {set(e)} must join two points")
            p, q = tuple(e)
            if p not in self.var_of or q not in self.var_of:
                raise ModelError(f"edge {p}-{q} references an unknown point")
            if self.var_of[p] == self.var_of[q]:
                raise ModelError(f"edge {p}-{q} joins points of the same variable")
            self.edges[e] = bool(label)
        disj = []
        for clause in distinct_any:
            pairs = []
            for a, b in clause:
                if a not in self.var_of or b not in self.var_of:
                    raise ModelError(f"distinct pair {a},{b} references an unknown point")
                if a == b or self.var_of[a] != self.var_of[b]:
                    raise ModelError(f"distinct pair {a},{b} must join two points of one variable")
                pairs.append(pair(a, b))
            if pairs:
                disj.append(tuple(sorted(pairs, key=sorted)))
        self.distinct_any = tuple(disj)
        adj = {p: {} for p in self.points}
        for e, label in self.edges.items():
            p, q = tuple(e)
            adj[p][q] = label
            adj[q][p] = label
        self._adj = adj
        self._dom = {v: tuple(p for p in self.points if self.var_of[p] == v) for v in self.variables}

    def domain(self, v: str) -> tuple:
        return self._dom[v]

    def label(self, p: str, q: str):
        """``True``/``False`` for a defined edge, ``None`` when undefined."""
        return self._adj[p].get(q)

    def neighbours(self, p: str) -> dict:
        return self._adj[p]

    def constraints(self) -> set:
        """Variable pairs carrying at least one edge."""
        return {frozenset(self.var_of[p] for p in e) for e in self.edges}

    def incompatibility_edges(self) -> list:
        return [e for e, label in self.edges.items() if not label]

    def compatibility_edges(self) -> list:
        return [e for e, label in self.edges.items() if label]

    def key(self):
        """Exact (label-sensitive) identity, for memoisation."""
        return (tuple(sorted(self.var_of.items())),
                frozenset(self.edges.items()),
                frozenset(frozenset(d) for d in self.distinct_any))

    def __eq__(self, other):
        return isinstance(other, Pattern) and self.key() == other.key() \
            and set(self.variables) == set(other.variables)

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        inc = sum(1 for v in self.edges.values() if not v)
        return (f"Pattern({len(self.variables)} vars, {len(self.points)} points, "
                f"{len(self.edges) - inc} compat + {inc} incompat edges)")


class Instance:
    """A binary CSP instance.

    ``domains`` maps each variable to its points (in a fixed order) and
    ``conflicts`` maps each point to the set of points it is incompatible
    with.  Treat instances as immutable values.
    """

    __slots__ = ("variables", "domains", "var_of", "conflicts")

    def __init__(self, domains: Mapping[str, Iterable[str]],
                 incompatible: Iterable[Iterable[str]] = ()):
        self.domains = {}
        self.var_of = {}
        for v, pts in domains.items():
            pts = tuple(pts)
            self.domains[v] = pts
            for p in pts:
                if p in self.var_of:
                    raise ModelError(f"duplicate point id {p!r}")
                self.var_of[p] = v
        self.variables = tuple(self.domains)
        conflicts = {p: set() for p in self.var_of}
        for e in incompatible:
            p, q = tuple(e)
            if p not in self.var_of or q not in self.var_of:
                raise ModelError(f"incompatible pair {p}-{q} references an unknown point")
            if self.var_of[p] == self.var_of[q]:
                raise ModelError(f"incompatible pair {p}-{q} lies within one variable")
            conflicts[p].add(q)
            conflicts[q].add(p)
        self.conflicts = {p: frozenset(c) for p, c in conflicts.items()}

    @property
    def points(self) -> tuple:
        return tuple(p for v in self.variables for p in self.domains[v])

    def domain(self, v: str) -> tuple:
        return self.domains[v]

    def compatible(self, p: str, q: str) -> bool:
        return self.var_of[p] != self.var_of[q] and q not in self.conflicts[p]

    def label(self, p: str, q: str):
        if self.var_of[p] == self.var_of[q]:
            return None
        return q not in self.conflicts[p]

    def support(self, p: str, w: str) -> tuple:
        """Points of ``w`` compatible with ``p``."""
        c = self.conflicts[p]
        return tuple(q for q in self.domains[w] if q not in c)

    def incompatible_pairs(self) -> set:
        return {pair(p, q) for p, cs in self.conflicts.items() for q in cs}

    def conflict_vars(self, p: str) -> set:
        return {self.var_of[q] for q in self.conflicts[p]}

    def size(self) -> int:
        return len(self.var_of)

    def restrict(self, keep: Iterable[str] = None, drop: Iterable[str] = (),
                 drop_vars: Iterable[str] = ()) -> "Instance":
        """Sub-instance keeping only the given points / without the given
        points and variables."""
        drop = set(drop)
        keep = set(self.var_of) if keep is None else set(keep)
        keep -= drop
        dv = set(drop_vars)
        out = Instance.__new__(Instance)
        out.domains = {v: tuple(p for p in self.domains[v] if p in keep)
                       for v in self.variables if v not in dv}
        out.variables = tuple(out.domains)
        out.var_of = {p: v for v, pts in out.domains.items() for p in pts}
        out.conflicts = {p: self.conflicts[p] & out.var_of.keys() for p in out.var_of}
        return out

    def as_pattern(self) -> Pattern:
        edges = {}
        for p, q in combinations(self.points, 2):
            if self.var_of[p] != self.var_of[q]:
                edges[pair(p, q)] = q not in self.conflicts[p]
        return Pattern(self.var_of, edges, variables=self.variables)

    def key(self):
        return (tuple((v, self.domains[v]) for v in self.variables),
                frozenset(self.incompatible_pairs()))

    def __eq__(self, other):
        return isinstance(other, Instance) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return (f"Instance({len(self.variables)} vars, {len(self.var_of)} points, "
                f"{len(self.incompatible_pairs())} incompatible pairs)")


Constraint = namedtuple("Constraint", "scope relation")


def build_instance(domains: Mapping[str, Iterable[str]],
                   relations: Iterable = ()) -> Instance:
    """Build an instance from domains and ``(scope, allowed_pairs)`` relations.

    Scopes not listed are trivial (everything compatible); inside a listed
    scope every pair missing from ``allowed`` is incompatible.  A scope may
    be listed more than once, in which case the relations are intersected.
    """
    domains = {v: list(pts) for v, pts in domains.items()}
    var_of = {}
    for v, pts in domains.items():
        for p in pts:
            if p in var_of:
                raise ModelError(f"duplicate point id {p!r}")
            var_of[p] = v
    incompatible = set()
    for scope, allowed in relations:
        v, w = scope
        if v == w:
            raise ModelError(f"scope ({v}, {w}) repeats a variable")
        for u in (v, w):
            if u not in domains:
                raise ModelError(f"scope references unknown variable {u!r}")
        ok = set()
        for p, q in allowed:
            if var_of.get(p) != v or var_of.get(q) != w:
                raise ModelError(f"allowed pair ({p}, {q}) does not fit scope ({v}, {w})")
            ok.add((p, q))
        for p in domains[v]:
            for q in domains[w]:
                if (p, q) not in ok:
                    incompatible.add(pair(p, q))
    return Instance(domains, incompatible)


def relations_of(instance: Instance) -> list:
    """The non-trivial constraints as ``(scope, allowed)`` pairs, in a form
    accepted by :func:`build_instance`."""
    out = []
    for v, w in sorted(constraint_graph(instance), key=lambda s: (instance.variables.index(s[0]), instance.variables.index(s[1]))):
        allowed = [(p, q) for p in instance.domains[v] for q in instance.domains[w]
                   if q not in instance.conflicts[p]]
        out.append(((v, w), allowed))
    return out


def constraint(instance: Instance, v: str, w: str) -> Constraint:
    rel = frozenset((p, q) for p in instance.domains[v] for q in instance.domains[w]
                    if q not in instance.conflicts[p])
    return Constraint((v, w), rel)


def constraint_graph(instance: Instance) -> set:
    """Ordered variable pairs ``(v, w)`` (declaration order) whose constraint
    has at least one incompatible pair."""
    order = {v: i for i, v in enumerate(instance.variables)}
    out = set()
    for p, cs in instance.conflicts.items():
        v = instance.var_of[p]
        for q in cs:
            w = instance.var_of[q]
            out.add((v, w) if order[v] < order[w] else (w, v))
    return out


def neighbours(instance: Instance) -> dict:
    """Adjacency of the constraint graph."""
    adj = {v: set() for v in instance.variables}
    for v, w in constraint_graph(instance):
        adj[v].add(w)
        adj[w].add(v)
    return adj


def is_solution(instance: Instance, assignment: Mapping[str, str]) -> bool:
    """True iff ``assignment`` picks one point per variable, all pairwise
    compatible."""
    if set(assignment) != set(instance.variables):
        missing = set(instance.variables) - set(assignment)
        extra = set(assignment) - set(instance.variables)
        raise ModelError(f"assignment not total: missing {sorted(missing)}, unknown {sorted(extra)}")
    for v, p in assignment.items():
        if instance.var_of.get(p) != v:
            raise ModelError(f"point {p!r} is not a value of {v!r}")
    chosen = list(assignment.values())
    for p, q in combinations(chosen, 2):
        if q in instance.conflicts[p]:
            return False
    return True
