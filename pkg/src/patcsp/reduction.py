"""Pattern reduction (merging, dangling-point elimination, extension) and the
tractable/intractable classifier for patterns on at most two constraints.

Tractability transfers backwards along reductions: if P reduces to a
tractable Q then P is tractable.  Intractability transfers forwards: a
pattern into which Z, 2V or a two-edge constraint can be extended and
merged is intractable.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .library import TRACTABLE_TARGETS, make_named
from .model import ModelError, Pattern, pair
from .occurrence import OccurrenceWitness, occurs

TWO_INCOMPAT = "TwoIncompatSameConstraint"
REACHES_Z = "ReachesZ"
REACHES_2V = "Reaches2V"
NOT_REDUCIBLE = "NotReducibleToT"

CLASSIFY_TARGETS = ("OneI",) + TRACTABLE_TARGETS + ("TwoI",)


class UnsupportedPattern(ValueError):
    """The classifier only handles patterns on at most two constraints."""


@dataclass(frozen=True)
class ReductionTrace:
    steps: tuple = ()
    witness: OccurrenceWitness | None = None


@dataclass(frozen=True)
class Classification:
    tractable: bool
    target: str | None = None
    trace: ReductionTrace | None = None
    reason: str | None = None

    def __str__(self):
        if self.tractable:
            return f"Tractable({self.target})"
        return f"Intractable({self.reason})"


def _rebuild(var_of, edges, distinct_any, variables=()):
    return Pattern(var_of, edges, distinct_any, variables)


def merge_points(pattern: Pattern, a: str, b: str) -> Pattern:
    """Merge ``b`` into ``a``: ``b`` disappears and ``a`` takes over its edges."""
    if a == b:
        raise ModelError("cannot merge a point with itself")
    var_of = pattern.var_of
    if a not in var_of or b not in var_of:
        raise ModelError("merge references an unknown point")
    if var_of[a] != var_of[b]:
        raise ModelError(f"{a} and {b} belong to different variables")
    na, nb = pattern.neighbours(a), pattern.neighbours(b)
    for c in na.keys() & nb.keys():
        if na[c] != nb[c]:
            raise ModelError(f"{a} and {b} disagree on their edge to {c}")
    ab = pair(a, b)
    disj = []
    for d in pattern.distinct_any:
        if ab in d:
            rest = [e for e in d if e != ab]
            if not rest:
                raise ModelError(f"{a} and {b} must stay distinct")
            d = rest
        disj.append([tuple(a if x == b else x for x in e) for e in d])
    new_var_of = {p: v for p, v in var_of.items() if p != b}
    edges = {}
    for e, label in pattern.edges.items():
        if b in e:
            (c,) = e - {b}
            e = pair(a, c)
        edges[e] = label
    return _rebuild(new_var_of, edges, disj)


def _can_merge(pattern: Pattern, a: str, b: str) -> bool:
    na, nb = pattern.neighbours(a), pattern.neighbours(b)
    for c in na.keys() & nb.keys():
        if na[c] != nb[c]:
            return False
    ab = pair(a, b)
    return not any(d == (ab,) for d in pattern.distinct_any)


def remove_point(pattern: Pattern, p: str) -> Pattern:
    """Drop ``p`` and its edges.  Distinctness pairs through ``p`` are
    dropped from their disjunctions; emptying one is an error."""
    disj = []
    for d in pattern.distinct_any:
        rest = [tuple(e) for e in d if p not in e]
        if not rest:
            raise ModelError(f"removing {p} would void a distinctness requirement")
        disj.append(rest)
    var_of = {q: v for q, v in pattern.var_of.items() if q != p}
    edges = {e: lab for e, lab in pattern.edges.items() if p not in e}
    return _rebuild(var_of, edges, disj)


def _removable(pattern: Pattern, p: str) -> bool:
    return all(any(p not in e for e in d) for d in pattern.distinct_any)


def dangling_points(pattern: Pattern) -> list:
    """Points attached to the rest of the pattern by exactly one edge, that
    edge being a compatibility edge."""
    out = []
    for p in pattern.points:
        nb = pattern.neighbours(p)
        if len(nb) == 1 and next(iter(nb.values())) and _removable(pattern, p):
            out.append(p)
    return out


def eliminate_dangling_points(pattern: Pattern, trace: list | None = None) -> Pattern:
    """Remove dangling points to a fixpoint.  A point left with no edges at
    all goes too: one extension makes it dangle again."""
    return _shrink(pattern, [] if trace is None else trace)


def _shrink(pattern: Pattern, steps: list) -> Pattern:
    """Remove dangling points and edge-free points until none remain.

    An edge-free point can be given one compatibility edge by extension and
    then eliminated as a dangling point, so it is removable too.
    """
    while True:
        for p in pattern.points:
            nb = pattern.neighbours(p)
            if not _removable(pattern, p):
                continue
            if not nb:
                pattern = remove_point(pattern, p)
                steps.append(("isolated", p))
                break
            if len(nb) == 1 and next(iter(nb.values())):
                pattern = remove_point(pattern, p)
                steps.append(("dp", p))
                break
        else:
            return pattern


def shrunk_forms(pattern: Pattern) -> dict:
    """All patterns reachable from ``pattern`` by merging and point
    elimination, keyed by their exact identity, with the steps taken."""
    start_steps: list = []
    start = _shrink(pattern, start_steps)
    seen = {start.key(): (start, tuple(start_steps))}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        steps = seen[cur.key()][1]
        pts = cur.points
        for i, a in enumerate(pts):
            for b in pts[i + 1:]:
                if cur.var_of[a] != cur.var_of[b] or not _can_merge(cur, a, b):
                    continue
                nxt = merge_points(cur, a, b)
                more = [("merge", a, b)]
                nxt = _shrink(nxt, more)
                k = nxt.key()
                if k not in seen:
                    seen[k] = (nxt, steps + tuple(more))
                    queue.append(nxt)
    return seen


def reduces_to(p: Pattern, q: Pattern, _forms: dict | None = None) -> ReductionTrace | None:
    """A trace of merges and eliminations taking ``p`` to a pattern that
    extends (after merging) into ``q``, or ``None``."""
    w = occurs(p, q)
    if w is not None:
        return ReductionTrace((), w)
    forms = shrunk_forms(p) if _forms is None else _forms
    best = None
    for form, steps in forms.values():
        w = occurs(form, q)
        if w is not None and (best is None or len(steps) < len(best.steps)):
            best = ReductionTrace(steps, w)
    return best


def uncollapsible_constraint(pattern: Pattern):
    """A constraint whose incompatibility edges cannot all be merged into a
    single edge, or ``None``."""
    by_scope: dict = {}
    for e in pattern.incompatibility_edges():
        p, q = sorted(e)
        vp, vq = pattern.var_of[p], pattern.var_of[q]
        if vp > vq:
            p, q, vp, vq = q, p, vq, vp
        by_scope.setdefault((vp, vq), []).append((p, q))
    for scope, es in by_scope.items():
        if len(es) < 2:
            continue
        left = {p for p, _ in es}
        right = {q for _, q in es}
        if not _collapsible(pattern, left, right):
            return scope
    return None


def _collapsible(pattern: Pattern, left: set, right: set) -> bool:
    """Can all points of ``left`` be merged into one and all points of
    ``right`` into another?"""
    rep = {p: min(left) for p in left}
    rep.update({q: min(right) for q in right})
    seen: dict = {}
    for e, label in pattern.edges.items():
        x, y = (rep.get(t, t) for t in e)
        k = pair(x, y)
        if seen.setdefault(k, label) != label:
            return False
    for d in pattern.distinct_any:
        if all(rep.get(a, a) == rep.get(b, b) for a, b in map(tuple, d)):
            return False
    return True


def jointly_uncollapsible(pattern: Pattern) -> bool:
    """True when no single round of merging brings every constraint down to
    at most one incompatibility edge at once."""
    parent = {p: p for p in pattern.points}

    def find(p):
        while parent[p] != p:
            parent[p] = parent[parent[p]]
            p = parent[p]
        return p

    by_scope: dict = {}
    for e in pattern.incompatibility_edges():
        p, q = sorted(e, key=lambda t: pattern.var_of[t])
        by_scope.setdefault((pattern.var_of[p], pattern.var_of[q]), []).append((p, q))
    for es in by_scope.values():
        for p, q in es[1:]:
            parent[find(p)] = find(es[0][0])
            parent[find(q)] = find(es[0][1])
    if all(find(p) == p for p in pattern.points):
        return False
    seen: dict = {}
    for e, label in pattern.edges.items():
        x, y = (find(t) for t in e)
        if seen.setdefault(pair(x, y), label) != label:
            return True
    return any(all(find(a) == find(b) for a, b in map(tuple, d)) for d in pattern.distinct_any)


def intractability_reason(pattern: Pattern) -> str | None:
    """A hardness certificate found directly in ``pattern``, if any."""
    if uncollapsible_constraint(pattern) is not None or jointly_uncollapsible(pattern):
        return TWO_INCOMPAT
    if occurs(make_named("Z"), pattern) is not None:
        return REACHES_Z
    if occurs(make_named("TwoV"), pattern) is not None:
        return REACHES_2V
    return None


def classify(pattern: Pattern) -> Classification:
    """Tractable (with the target it reduces to) or intractable (with a
    reason), for patterns on at most two constraints."""
    cons = pattern.constraints()
    if len(cons) > 2:
        raise UnsupportedPattern(f"pattern has {len(cons)} constraints; at most 2 are supported")
    forms = shrunk_forms(pattern)
    for name in CLASSIFY_TARGETS:
        tr = reduces_to(pattern, make_named(name), forms)
        if tr is not None:
            return Classification(True, name, tr)
    return Classification(False, reason=intractability_reason(pattern) or NOT_REDUCIBLE)


def _orbit_perms(m, p, q):
    """Index permutations of the edge-label vector induced by relabelling
    points inside each variable and swapping the outer variables."""
    from itertools import permutations
    left = [(i, j) for i in range(m) for j in range(p)]
    right = [(i, j) for i in range(m) for j in range(q)]
    slots = [("L",) + s for s in left] + [("R",) + s for s in right]
    index = {s: k for k, s in enumerate(slots)}
    perms = []
    swaps = [False, True] if p == q else [False]
    for pc in permutations(range(m)):
        for pl in permutations(range(p)):
            for pr in permutations(range(q)):
                for sw in swaps:
                    out = []
                    for side, i, j in slots:
                        if side == "L":
                            tgt = ("R", pc[i], pr[j]) if sw else ("L", pc[i], pl[j])
                        else:
                            tgt = ("L", pc[i], pl[j]) if sw else ("R", pc[i], pr[j])
                        out.append(index[tgt])
                    perms.append(out)
    return slots, perms


def enumerate_two_constraint_patterns(max_center: int = 3, max_outer: int = 2):
    """Every two-constraint pattern on three variables with at most
    ``max_center`` points in the shared variable and ``max_outer`` in each
    outer one, one representative per isomorphism class."""
    import numpy as np

    out = []
    for m in range(1, max_center + 1):
        for p in range(1, max_outer + 1):
            for q in range(p, max_outer + 1):
                slots, perms = _orbit_perms(m, p, q)
                k = len(slots)
                codes = np.arange(3 ** k, dtype=np.int64)
                labels = (codes[:, None] // (3 ** np.arange(k, dtype=np.int64))[None, :]) % 3
                nl = m * p
                keep = labels[:, :nl].any(axis=1) & labels[:, nl:].any(axis=1)
                labels = labels[keep]
                powers = 3 ** np.arange(k, dtype=np.int64)
                canon = None
                for perm in perms:
                    permuted = np.empty_like(labels)
                    permuted[:, perm] = labels
                    c = permuted @ powers
                    canon = c if canon is None else np.minimum(canon, c)
                for code in np.unique(canon):
                    lab = (int(code) // (3 ** np.arange(k))) % 3
                    var_of = {f"c{i}": "v0" for i in range(m)}
                    var_of.update({f"l{j}": "v1" for j in range(p)})
                    var_of.update({f"r{j}": "v2" for j in range(q)})
                    edges = {}
                    for (side, i, j), x in zip(slots, lab):
                        if x:
                            edges[pair(f"c{i}", f"{side.lower()}{j}")] = (x == 1)
                    out.append(Pattern(var_of, edges))
    return out
