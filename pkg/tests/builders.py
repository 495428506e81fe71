"""Seeded constructors shared by the unit tests and the acceptance suite."""
from __future__ import annotations

import random

from patcsp.fusion import COMPLEX, SIMPLE, FusionSpec, all_solutions
from patcsp.generators import STRUCTURED_KINDS, random_instance, structured_instance


def valid_fusion_spec(instance, rng: random.Random, kind: str):
    """A fusion spec whose premise holds by construction: f(u) is read off
    a solution containing u, when there is one."""
    if len(instance.variables) < 2:
        return None
    v1, v2 = rng.sample(list(instance.variables), 2)
    if not instance.domains[v1] or not instance.domains[v2]:
        return None
    sols = list(all_solutions(instance))
    hinge = rng.choice(instance.domains[v1]) if kind == COMPLEX else None
    fn = {}
    for u in instance.domains[v1]:
        if u == hinge:
            continue
        seen = sorted({s[v2] for s in sols if s[v1] == u})
        fn[u] = rng.choice(seen or list(instance.domains[v2]))
    return FusionSpec(kind, v1, v2, fn, hinge)


def mixed_instance(seed: int, n_max: int = 5, d_max: int = 3):
    rng = random.Random(seed)
    n = rng.randint(2, n_max)
    if rng.random() < 0.5:
        return random_instance(n, d_max, rng.choice([0.2, 0.5, 0.8]), rng)
    kinds = STRUCTURED_KINDS[rng.choice(sorted(STRUCTURED_KINDS))]
    return structured_instance(n, d_max, 0.6, rng, kinds)


__all__ = ["valid_fusion_spec", "mixed_instance", "SIMPLE", "COMPLEX"]
