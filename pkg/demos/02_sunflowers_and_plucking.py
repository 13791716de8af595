"""
Plucking a family of double graphs
==================================

When a family has too many distinct vertex sets on one side, a sunflower
among them is found and its petals are replaced by the core.  Each step
shrinks the vertex-set norm by at least p - 1.
"""

from cliq2lab.params import Params
from cliq2lab.randomgen import random_large_family
from cliq2lab.sunflower import find_sunflower, pluck, pluck_step_bound, vertex_set_norm

# Three pairs sharing the vertex 1: a sunflower with core {1}.
sf = find_sunflower([frozenset({1, 2}), frozenset({1, 3}), frozenset({1, 4})], p=3)
print("petals:", [sorted(s) for s in sf.petals], "core:", sorted(sf.core))

params = Params(m=12, k=3, ell=3, p=4, L=162)
fam = random_large_family(0, params.m, params.ell, 600)
norm = vertex_set_norm(fam)
out, trace = pluck(fam, params)

print(f"family of {len(fam)} members, vertex-set norm {norm}")
print(f"plucked to {len(out)} members in {len(trace)} steps (bound {float(pluck_step_bound(norm, params.p)):.0f})")
print(trace.format().splitlines()[0])
