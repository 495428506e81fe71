"""NOOSAT: clauses of ``variable = value`` literals, each literal in at
most one clause.

A value satisfies at most one clause, so every variable can pay for at most
one clause and the problem is a bipartite matching of clauses to variables.
"""
from __future__ import annotations

from dataclasses import dataclass

import networkx as nx
from networkx.algorithms.bipartite import hopcroft_karp_matching

from ..model import ModelError


@dataclass(frozen=True)
class NoosatInstance:
    variables: dict          # variable -> tuple of values
    clauses: tuple           # tuple of frozensets of (variable, value)

    def __post_init__(self):
        seen = set()
        for clause in self.clauses:
            for v, a in clause:
                if a not in self.variables.get(v, ()):
                    raise ModelError(f"literal {v}={a} uses an unknown variable or value")
                if (v, a) in seen:
                    raise ModelError(f"literal {v}={a} occurs in more than one clause")
                seen.add((v, a))

    def satisfied_by(self, assignment: dict) -> bool:
        return all(any(assignment.get(v) == a for v, a in c) for c in self.clauses)


def make_noosat(variables, clauses) -> NoosatInstance:
    return NoosatInstance({v: tuple(vals) for v, vals in variables.items()},
                          tuple(frozenset(map(tuple, c)) for c in clauses))


def solve_noosat(inst: NoosatInstance) -> dict | None:
    """A satisfying assignment, or ``None``."""
    g = nx.Graph()
    top = [("c", i) for i in range(len(inst.clauses))]
    g.add_nodes_from(top)
    g.add_nodes_from(("v", v) for v in inst.variables)
    for i, clause in enumerate(inst.clauses):
        for v, _ in clause:
            g.add_edge(("c", i), ("v", v))
    matching = hopcroft_karp_matching(g, top_nodes=top)
    out = {v: vals[0] for v, vals in inst.variables.items() if vals}
    for i, clause in enumerate(inst.clauses):
        node = ("c", i)
        if node not in matching:
            return None
        v = matching[node][1]
        out[v] = min(a for u, a in clause if u == v)
    if len(out) != len(inst.variables):
        return None
    return out
