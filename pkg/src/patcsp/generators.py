"""Instance builders: the hardness reductions (SAT1, 3-colouring, arbitrary
CSP into pattern-free instances) and seeded random pattern-free instances
for fuzzing."""
from __future__ import annotations

import random
from dataclasses import dataclass

from .library import make_named
from .model import Instance, ModelError, constraint_graph, pair
from .occurrence import occurs


class GenerationBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Sat1Formula:
    """CNF over variables ``1..num_vars``; literals are signed ints and a
    variable occurs at most once per clause."""
    num_vars: int
    clauses: tuple

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in self.clauses))
        for c in self.clauses:
            if not c:
                raise ModelError("empty clause")
            seen = set()
            for lit in c:
                x = abs(lit)
                if lit == 0 or x > self.num_vars:
                    raise ModelError(f"literal {lit} out of range")
                if x in seen:
                    raise ModelError(f"variable {x} occurs twice in clause {c}")
                seen.add(x)

    def satisfied_by(self, values: dict) -> bool:
        return all(any(values[abs(l)] == (l > 0) for l in c) for c in self.clauses)


@dataclass(frozen=True)
class ColouringGraph:
    n: int
    edges: frozenset

    def __post_init__(self):
        es = set()
        for e in self.edges:
            i, j = tuple(e)
            if i == j or not (1 <= i <= self.n and 1 <= j <= self.n):
                raise ModelError(f"bad edge {i}-{j}")
            es.add(frozenset((i, j)))
        object.__setattr__(self, "edges", frozenset(es))


def sat1_to_csp(formula: Sat1Formula) -> Instance:
    """One two-valued variable per propositional variable and one variable
    per clause whose points are the clause's literals; a literal point is
    incompatible with the point of its complement."""
    domains = {}
    for x in range(1, formula.num_vars + 1):
        domains[f"x{x}"] = (f"x{x}=T", f"x{x}=F")
    incompatible = []
    for i, clause in enumerate(formula.clauses, start=1):
        pts = []
        for lit in clause:
            p = f"C{i}:{lit}"
            pts.append(p)
            x = abs(lit)
            incompatible.append((p, f"x{x}=F" if lit > 0 else f"x{x}=T"))
        domains[f"C{i}"] = tuple(pts)
    return Instance(domains, incompatible)


def _relation(s: int, t: int):
    return {(u, v) for u in (1, 2, 3) for v in (1, 2, 3) if (u == s and v == t) or (u != s and v != t)}


def coloring_to_z_free(graph: ColouringGraph) -> Instance:
    """3-colouring as a Z-free instance: each edge gets its own gadget of
    three helper variables whose constraints together force different
    colours on the endpoints."""
    domains = {f"v{i}": tuple(f"v{i}={c}" for c in (1, 2, 3)) for i in range(1, graph.n + 1)}
    incompatible = []

    def add(x, rel, y):
        for u in (1, 2, 3):
            for v in (1, 2, 3):
                if (u, v) not in rel:
                    incompatible.append((f"{x}={u}", f"{y}={v}"))

    for e, (i, j) in enumerate(sorted(tuple(sorted(e)) for e in graph.edges), start=1):
        for k in (1, 2, 3):
            u = f"u{e}.{k}"
            domains[u] = tuple(f"{u}={c}" for c in (1, 2, 3))
            add(f"v{i}", _relation(k, k), u)
            add(u, _relation(1 + k % 3, k), f"v{j}")
    return Instance(domains, incompatible)


def csp_to_2v_free(instance: Instance) -> Instance:
    """Move every non-trivial constraint onto fresh copies of its two
    variables, tied to the originals by equality constraints."""
    scopes = sorted(constraint_graph(instance),
                    key=lambda s: (instance.variables.index(s[0]), instance.variables.index(s[1])))
    if not scopes:
        return instance
    domains = dict(instance.domains)
    incompatible = []
    for k, (v, w) in enumerate(scopes, start=1):
        copy = {}
        for x in (v, w):
            name = f"{x}#{k}"
            if name in domains:
                raise ModelError(f"variable name {name!r} already in use")
            domains[name] = tuple(f"{p}#{k}" for p in instance.domains[x])
            for p in instance.domains[x]:
                copy[p] = f"{p}#{k}"
                for q in instance.domains[x]:
                    if q != p:
                        incompatible.append((p, f"{q}#{k}"))
        for p in instance.domains[v]:
            for q in instance.conflicts[p]:
                if instance.var_of[q] == w:
                    incompatible.append((copy[p], copy[q]))
    return Instance(domains, incompatible)


def random_instance(n: int, d: int, density: float, rng: random.Random,
                    tightness: float = 0.5) -> Instance:
    """``n`` variables with 1..``d`` points each; each variable pair is
    constrained with probability ``density`` and, inside a constrained
    pair, each point pair is incompatible with probability ``tightness``."""
    domains = {}
    for i in range(n):
        size = rng.randint(1, d) if d > 1 else d
        domains[f"v{i}"] = tuple(f"v{i}.{k}" for k in range(size))
    vs = list(domains)
    incompatible = []
    for a in range(n):
        for b in range(a + 1, n):
            if rng.random() >= density:
                continue
            for p in domains[vs[a]]:
                for q in domains[vs[b]]:
                    if rng.random() < tightness:
                        incompatible.append((p, q))
    return Instance(domains, incompatible)


def _relation_conflicts(kind: str, A: tuple, B: tuple, rng: random.Random, tightness: float):
    """Incompatible pairs of one constraint of the given shape."""
    allowed = set()
    if kind == "single":
        return {(rng.choice(A), rng.choice(B))}
    if kind == "implication":
        b, a = rng.choice(A), rng.choice(B)
        return {(b, q) for q in B if q != a}
    if kind == "star":
        a, b = rng.choice(A), rng.choice(B)
        allowed = {(a, q) for q in B} | {(p, b) for p in A}
    elif kind == "function":
        allowed = {(p, rng.choice(B)) for p in A}
    elif kind == "bijection" and len(A) == len(B):
        allowed = set(zip(A, rng.sample(B, len(B))))
    elif kind == "staircase" and len(A) == len(B):
        a, b = rng.sample(A, len(A)), rng.sample(B, len(B))
        d = len(A)
        allowed = {(a[i], b[j]) for i in range(d) for j in range(d) if i + j >= d - 1}
    else:
        return {(p, q) for p in A for q in B if rng.random() < tightness}
    return {(p, q) for p in A for q in B if (p, q) not in allowed}


STRUCTURED_KINDS = {
    "OneI": ("random",),
    "TwoI": ("single", "random", "star"),
    "T1": ("implication", "star", "single", "staircase", "random"),
    "T2": ("function", "bijection", "single", "implication", "random"),
    "T3": ("bijection", "single", "function", "random"),
    "T4": ("bijection", "star", "single", "implication", "random"),
    "T5": ("staircase", "single", "star", "function", "random"),
}


def structured_instance(n: int, d: int, density: float, rng: random.Random,
                        kinds=("random",), tightness: float = 0.5) -> Instance:
    """Like :func:`random_instance` but each constrained pair draws its
    relation from ``kinds`` (bijections, functions, staircases, ...), which
    survive preprocessing far more often than uniform noise."""
    domains = {}
    for i in range(n):
        size = d if rng.random() < 0.75 else rng.randint(1, d)
        domains[f"v{i}"] = tuple(f"v{i}.{k}" for k in range(size))
    vs = list(domains)
    incompatible = set()
    for a in range(n):
        for b in range(a + 1, n):
            if rng.random() >= density:
                continue
            A, B = domains[vs[a]], domains[vs[b]]
            if rng.random() < 0.5:
                A, B = B, A
            incompatible |= _relation_conflicts(rng.choice(kinds), A, B, rng, tightness)
    return Instance(domains, incompatible)


def noosat_shaped_instance(n: int, d: int, density: float, rng: random.Random) -> Instance:
    """Variables split into a block E and a block F; each point of an F
    variable is tied to its own value of some E variable (it conflicts with
    every other value there).  Extra single conflicts inside F and star
    relations inside E are sprinkled with probability ``density``."""
    domains = {}
    for i in range(n):
        domains[f"v{i}"] = tuple(f"v{i}.{k}" for k in range(rng.randint(2, max(2, d))))
    vs = list(domains)
    k = rng.randint(1, max(1, n - 1))
    E, F = vs[:k], vs[k:]
    pool = [(v, a) for v in E for a in domains[v]]
    rng.shuffle(pool)
    incompatible = set()
    for v in F:
        for b in domains[v]:
            if pool and rng.random() < 0.9:
                w, a = pool.pop()
                incompatible |= {(b, q) for q in domains[w] if q != a}
    for block, kind in ((E, "star"), (F, "single")):
        for i, v in enumerate(block):
            for w in block[i + 1:]:
                if rng.random() < density / 2:
                    incompatible |= _relation_conflicts(kind, domains[v], domains[w], rng, 0.5)
    return Instance(domains, incompatible)


def _sort_key(e):
    return tuple(sorted(e))


def repair_until_free(instance: Instance, pattern, budget: int | None = None) -> Instance:
    """Flip edges found in occurrence witnesses until ``pattern`` no longer
    occurs.  Incompatibility edges are flipped first (lowest id), so each
    repair strictly removes a conflict whenever the pattern has one."""
    budget = 10 * instance.size() ** 2 if budget is None else budget
    domains = instance.domains
    conflicts = instance.incompatible_pairs()
    inst = instance
    for _ in range(budget + 1):
        w = occurs(pattern, inst)
        if w is None:
            return inst
        pm = w.point_map
        images = [(pair(pm[p], pm[q]), lab) for (p, q), lab in
                  ((tuple(sorted(e)), lab) for e, lab in pattern.edges.items())]
        incompat = sorted((e for e, lab in images if not lab), key=_sort_key)
        target = incompat[0] if incompat else min((e for e, _ in images), key=_sort_key)
        if target in conflicts:
            conflicts.discard(target)
        else:
            conflicts.add(target)
        inst = Instance(domains, conflicts)
    raise GenerationBudgetExceeded(f"pattern still present after {budget} repairs")


def random_pattern_free(class_name: str, n: int, d: int, density: float, seed: int,
                        tightness: float = 0.5, family: str = "uniform") -> Instance:
    """A seeded random instance in which the named pattern does not occur.

    ``family="uniform"`` starts from uniform noise; ``"structured"`` starts
    from relations typical of the class (see ``STRUCTURED_KINDS``).  Either
    way the start is repaired until the pattern is gone.
    """
    rng = random.Random(seed)
    if family == "uniform":
        inst = random_instance(n, d, density, rng, tightness)
    elif family == "structured" and class_name.lstrip("$") == "T1" and rng.random() < 0.5:
        inst = noosat_shaped_instance(n, d, density, rng)
    elif family == "structured":
        kinds = STRUCTURED_KINDS.get(class_name.lstrip("$"), ("random",))
        inst = structured_instance(n, d, density, rng, kinds, tightness)
    else:
        raise ValueError(f"unknown family {family!r}")
    return repair_until_free(inst, make_named(class_name))


def read_dimacs(text: str, normalize: bool = True) -> Sat1Formula:
    """Parse DIMACS CNF.  With ``normalize`` repeated literals are merged
    and tautological clauses dropped, which puts any CNF into SAT1 form."""
    num_vars = None
    clauses, cur = [], []
    for line in text.splitlines():
        line = line.strip()
        if not line or line[0] in "c%":
            continue
        if line[0] == "p":
            parts = line.split()
            if len(parts) < 4 or parts[1] != "cnf":
                raise ModelError(f"bad problem line {line!r}")
            num_vars = int(parts[2])
            continue
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                clauses.append(cur)
                cur = []
            else:
                cur.append(lit)
    if cur:
        clauses.append(cur)
    if num_vars is None:
        num_vars = max((abs(l) for c in clauses for l in c), default=0)
    if normalize:
        out = []
        for c in clauses:
            lits = list(dict.fromkeys(c))
            if any(-l in lits for l in lits):
                continue
            out.append(lits)
        clauses = out
    return Sat1Formula(num_vars, tuple(tuple(c) for c in clauses))


def read_edge_list(text: str) -> ColouringGraph:
    """One ``i j`` pair per line (1-based vertices); ``#`` starts a comment.
    A line ``n N`` declares the vertex count, otherwise the largest vertex
    seen is used."""
    n = 0
    edges = set()
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "n":
            n = max(n, int(parts[1]))
            continue
        if len(parts) != 2:
            raise ModelError(f"bad edge line {line!r}")
        i, j = int(parts[0]), int(parts[1])
        edges.add(frozenset((i, j)))
        n = max(n, i, j)
    return ColouringGraph(n, frozenset(edges))
