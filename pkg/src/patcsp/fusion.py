"""Simple and complex fusion of two variables into one.

A fusion keeps, for each surviving point of the fused variable, the pair of
original points it stands for: ``u`` in ``A_v1`` (minus the hinge) stands for
``(u, f(u))``; in a complex fusion every ``p`` in ``A_v2`` stands for
``(hinge, p)``.  Fused points whose own pair is incompatible are dropped,
since no solution can use them.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .model import Instance, ModelError

SIMPLE = "simple"
COMPLEX = "complex"


@dataclass(frozen=True)
class FusionSpec:
    kind: str
    v1: str
    v2: str
    fusion_fn: dict = field(default_factory=dict)
    hinge: str | None = None
    fused: str | None = None

    @property
    def name(self) -> str:
        return self.fused or f"{self.v1}+{self.v2}"


@dataclass(frozen=True)
class FusionEvent:
    """Trace record: how the fused variable splits back into ``v1``/``v2``."""
    spec: FusionSpec

    def expand(self, assignment: dict) -> dict:
        return expand_solution(self.spec, assignment)


def _check(instance: Instance, spec: FusionSpec):
    if spec.v1 == spec.v2:
        raise ModelError("fusion needs two distinct variables")
    for v in (spec.v1, spec.v2):
        if v not in instance.domains:
            raise ModelError(f"unknown variable {v!r}")
    if spec.kind == SIMPLE:
        if spec.hinge is not None:
            raise ModelError("a simple fusion takes no hinge")
        dom = set(instance.domains[spec.v1])
    elif spec.kind == COMPLEX:
        if spec.hinge not in instance.domains[spec.v1]:
            raise ModelError(f"hinge {spec.hinge!r} is not a point of {spec.v1!r}")
        dom = set(instance.domains[spec.v1]) - {spec.hinge}
    else:
        raise ModelError(f"unknown fusion kind {spec.kind!r}")
    if set(spec.fusion_fn) != dom:
        raise ModelError("fusion function must be total on its domain")
    targets = set(instance.domains[spec.v2])
    if not set(spec.fusion_fn.values()) <= targets:
        raise ModelError(f"fusion function must map into {spec.v2!r}")
    if spec.name in instance.domains and spec.name not in (spec.v1, spec.v2):
        raise ModelError(f"fused variable name {spec.name!r} already in use")


def _fuse(instance: Instance, spec: FusionSpec, members: dict) -> Instance:
    """``members`` maps each surviving fused point to the original points
    whose conflicts it inherits."""
    v1, v2 = spec.v1, spec.v2
    fused = spec.name
    inside = set(instance.domains[v1]) | set(instance.domains[v2])
    domains = {}
    for v in instance.variables:
        if v == v1:
            domains[fused] = tuple(members)
        elif v != v2:
            domains[v] = instance.domains[v]
    out = Instance.__new__(Instance)
    out.domains = domains
    out.variables = tuple(domains)
    out.var_of = {p: v for v, pts in domains.items() for p in pts}
    conf = {p: set(instance.conflicts[p]) - inside for p in out.var_of if p not in members}
    for p, orig in members.items():
        c = set()
        for m in orig:
            c |= instance.conflicts[m]
        c -= inside
        conf[p] = c
        for q in c:
            conf[q].add(p)
    out.conflicts = {p: frozenset(c) for p, c in conf.items()}
    return out


def simple_fusion(instance: Instance, spec: FusionSpec) -> Instance:
    """Replace ``v1`` and ``v2`` by one variable whose points are ``A_v1``;
    ``u`` carries the conflicts of both ``u`` and ``f(u)``."""
    if spec.kind != SIMPLE:
        raise ModelError("simple_fusion needs a simple FusionSpec")
    _check(instance, spec)
    f = spec.fusion_fn
    members = {u: (u, f[u]) for u in instance.domains[spec.v1]
               if f[u] not in instance.conflicts[u]}
    return _fuse(instance, spec, members)


def complex_fusion(instance: Instance, spec: FusionSpec) -> Instance:
    """Fuse around the hinge value ``a``: points of ``A_v1`` other than ``a``
    carry their image's conflicts, points of ``A_v2`` carry ``a``'s."""
    if spec.kind != COMPLEX:
        raise ModelError("complex_fusion needs a complex FusionSpec")
    _check(instance, spec)
    a, f = spec.hinge, spec.fusion_fn
    members = {}
    for u in instance.domains[spec.v1]:
        if u != a and f[u] not in instance.conflicts[u]:
            members[u] = (u, f[u])
    for p in instance.domains[spec.v2]:
        if p not in instance.conflicts[a]:
            members[p] = (a, p)
    return _fuse(instance, spec, members)


def fuse(instance: Instance, spec: FusionSpec) -> Instance:
    return simple_fusion(instance, spec) if spec.kind == SIMPLE else complex_fusion(instance, spec)


def expand_solution(spec: FusionSpec, assignment: dict) -> dict:
    """Split the fused variable's value back into values of ``v1`` and ``v2``."""
    out = dict(assignment)
    if spec.name not in out:
        return out
    u = out.pop(spec.name)
    if u in spec.fusion_fn:
        out[spec.v1], out[spec.v2] = u, spec.fusion_fn[u]
    else:
        out[spec.v1], out[spec.v2] = spec.hinge, u
    return out


def premise_holds(instance: Instance, spec: FusionSpec, solutions=None) -> bool:
    """Check the fusion premise by enumerating all solutions: every ``u`` in
    the fusion function's domain that appears in some solution appears in a
    solution together with ``f(u)``.  Exponential; for tests."""
    if solutions is None:
        solutions = list(all_solutions(instance))
    for u, fu in spec.fusion_fn.items():
        with_u = [s for s in solutions if s[spec.v1] == u]
        if with_u and not any(s[spec.v2] == fu for s in with_u):
            return False
    return True


def checked_fusion(instance: Instance, spec: FusionSpec) -> Instance:
    """Fusion that first verifies its premise by brute force."""
    if not premise_holds(instance, spec):
        raise ModelError("fusion premise fails on this instance")
    return fuse(instance, spec)


def all_solutions(instance: Instance):
    vs = instance.variables
    for combo in product(*(instance.domains[v] for v in vs)):
        ok = True
        for i, p in enumerate(combo):
            cp = instance.conflicts[p]
            if any(q in cp for q in combo[i + 1:]):
                ok = False
                break
        if ok:
            yield dict(zip(vs, combo))
