# Solving pattern-free instances
#
# Draw a few instances free of each tractable pattern, solve them with the
# class solver, and compare with the backtracking oracle.  The trace shows
# what the solver did before the final answer.
from collections import Counter

from patcsp.generators import random_pattern_free
from patcsp.model import is_solution
from patcsp.solvers import oracle_solve, solve

for name in ["TwoI", "T1", "T2", "T3", "T4", "T5"]:
    agree, events = 0, Counter()
    for seed in range(40):
        inst = random_pattern_free(name, 6, 3, 0.6, seed, family="structured")
        res = solve(inst, name)
        agree += res.sat == oracle_solve(inst).sat
        if res.sat:
            assert is_solution(inst, res.assignment)
        events.update(type(e).__name__ for e in res.trace)
    print(f"{name}: {agree}/40 agree with the oracle; events {dict(events)}")

# A bare staircase never reaches the fusion stage: neighbourhood
# substitution keeps only the best point on each side.
from patcsp import build_instance
d = 3
stair = build_instance({"a": [f"a{i}" for i in range(1, d + 1)], "b": [f"b{j}" for j in range(1, d + 1)]},
                       [(("a", "b"), [(f"a{i}", f"b{j}") for i in range(1, d + 1)
                                      for j in range(1, d + 1) if i + j >= d + 1])])
res = solve(stair, "T1", check_free=True)
print(res.verdict, res.assignment, [type(e).__name__ for e in res.trace])

# Fusions do show up on structured T1-free instances.
from patcsp.fusion import FusionEvent
for seed in range(200):
    inst = random_pattern_free("T1", 6, 3, 0.6, seed, family="structured")
    res = solve(inst, "T1")
    fusions = [e.spec for e in res.trace if isinstance(e, FusionEvent)]
    if fusions:
        print(f"seed {seed}: {res.verdict}")
        for spec in fusions:
            print(f"  {spec.kind} fusion of {spec.v1} and {spec.v2}, hinge {spec.hinge}, f = {spec.fusion_fn}")
        break
