# Census of two-constraint patterns
#
# Every pattern on three variables with at most three points in the shared
# variable and two in each outer one, up to symmetry, sorted into the
# tractable targets and the three kinds of hardness certificate.
import time
from collections import Counter

import numpy as np

from patcsp.reduction import classify, enumerate_two_constraint_patterns

t = time.perf_counter()
pats = enumerate_two_constraint_patterns()
print(len(pats), "canonical patterns")

verdicts = Counter()
sizes = []
for p in pats:
    c = classify(p)
    verdicts[str(c)] += 1
    sizes.append((len(p.points), c.tractable))

for k, v in verdicts.most_common():
    print(f"{v:6d}  {k}")

# tractable share by number of points
arr = np.array(sizes)
for n in np.unique(arr[:, 0]):
    sel = arr[arr[:, 0] == n]
    print(f"{n} points: {sel[:, 1].mean():.2%} tractable of {len(sel)}")
print(f"{time.perf_counter() - t:.1f}s")
