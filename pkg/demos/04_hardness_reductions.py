# The hardness reductions as instance generators
#
# SAT1 formulas, 3-colouring and arbitrary binary CSPs are rewritten into
# instances avoiding two incompatibilities per constraint, Z and 2V.
from patcsp.generators import (ColouringGraph, Sat1Formula, coloring_to_z_free,
                               csp_to_2v_free, random_instance, sat1_to_csp)
from patcsp.library import make_named
from patcsp.occurrence import occurs
from patcsp.solvers import oracle_solve
import random

f = Sat1Formula(3, ((1, 2), (-1, 3), (-2, -3), (-1, -2)))
inst = sat1_to_csp(f)
print("SAT1:", inst, "->", oracle_solve(inst).verdict)

for n, edges in [(3, [(1, 2), (2, 3), (1, 3)]),
                 (4, [(i, j) for i in range(1, 5) for j in range(i + 1, 5)])]:
    g = ColouringGraph(n, frozenset(map(frozenset, edges)))
    inst = coloring_to_z_free(g)
    print(f"K{n}:", inst, oracle_solve(inst).verdict, "Z present:", occurs(make_named("Z"), inst) is not None)

src = random_instance(4, 3, 0.8, random.Random(1))
out = csp_to_2v_free(src)
print("2V-free copy:", src, "->", out)
print("  verdicts", oracle_solve(src).verdict, oracle_solve(out).verdict,
      "2V present:", occurs(make_named("TwoV"), out) is not None)
