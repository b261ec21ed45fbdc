"""Engine check of one construction at large genus, e.g. ``python scripts/paired_check.py 1189 paired_A_mp``.

Slow: a few hundred vertices take minutes to hours.
"""

import sys
import time

from cubicaut.autgroup import automorphism_group
from cubicaut.candidates import bound, build_branch

g, branch = int(sys.argv[1]), sys.argv[2]
t = time.time()
G, spec = build_branch(g, branch)
order = automorphism_group(G).order
print(f"g={g} branch={branch} v={G.vertex_count}")
print(f"engine={order} predicted={spec.predicted_aut} bound={bound(g)}")
print(f"engine==predicted: {order == spec.predicted_aut}  engine>bound: {order > bound(g)}  ({time.time() - t:.0f}s)")
