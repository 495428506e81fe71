"""Brute-force reference implementations used only by the tests.

None of these share code with the package: they enumerate everything.
"""
from __future__ import annotations

from itertools import combinations, permutations, product

import networkx as nx


def brute_sat(instance) -> bool:
    vs = instance.variables
    for combo in product(*(instance.domains[v] for v in vs)):
        if all(q not in instance.conflicts[p] for p, q in combinations(combo, 2)):
            return True
    return False


def brute_occurs(pattern, instance) -> bool:
    """Every injective variable map, every point map; labels must agree and
    each distinctness disjunction keeps one pair apart."""
    pvars = list(pattern.variables)
    for vimg in permutations(instance.variables, len(pvars)):
        vm = dict(zip(pvars, vimg))
        pts = list(pattern.points)
        for img in product(*(instance.domains[vm[pattern.var_of[p]]] for p in pts)):
            pm = dict(zip(pts, img))
            ok = True
            for e, lab in pattern.edges.items():
                p, q = tuple(e)
                if (pm[q] not in instance.conflicts[pm[p]]) != lab:
                    ok = False
                    break
            if ok and all(any(pm[a] != pm[b] for a, b in map(tuple, d))
                          for d in pattern.distinct_any):
                return True
    return False


def truth_table_sat(num_vars: int, clauses) -> bool:
    for bits in product((False, True), repeat=num_vars):
        if all(any(bits[abs(l) - 1] == (l > 0) for l in c) for c in clauses):
            return True
    return False


def two_sat_scc(num_vars: int, clauses) -> bool:
    """Classic implication-graph test: unsatisfiable iff some x and -x share
    a strongly connected component."""
    g = nx.DiGraph()
    for x in range(1, num_vars + 1):
        g.add_nodes_from([x, -x])
    for c in clauses:
        a, b = (c[0], c[0]) if len(c) == 1 else c
        g.add_edge(-a, b)
        g.add_edge(-b, a)
    comp = {}
    for k, scc in enumerate(nx.strongly_connected_components(g)):
        for node in scc:
            comp[node] = k
    return all(comp[x] != comp[-x] for x in range(1, num_vars + 1))


def noosat_brute(variables: dict, clauses) -> bool:
    names = list(variables)
    for vals in product(*(variables[v] for v in names)):
        a = dict(zip(names, vals))
        if all(any(a[v] == x for v, x in c) for c in clauses):
            return True
    return False


def colourable(n: int, edges, k: int = 3) -> bool:
    for cols in product(range(k), repeat=n):
        if all(cols[i - 1] != cols[j - 1] for i, j in map(tuple, edges)):
            return True
    return False
