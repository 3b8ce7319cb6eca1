"""
Checking the fast code against brute force
==========================================

The oracles rebuild everything densely from the adjacency lists, so they can
catch mistakes in the sparse walk, the sweep and the conductance code.
"""

from fractions import Fraction

import numpy as np

import localcut as lc
from localcut.oracles import exact_walk, min_conductance_exhaustive, restricted_walk

g = lc.ring_of_cliques(3, 4).graph

# %%
# The smallest conductance over all 2^12 - 2 subsets.
members, best = min_conductance_exhaustive(g)
print("best set:", members, "conductance", best)

# %%
# The sparse truncated walk lies between the exact walk and the exact walk
# minus t * eps * d(u).
eps, steps = 1e-3, 30
r, stats = lc.evolve_truncated(g, 0, eps, steps)
p = exact_walk(g, 0, stats.steps_taken)
gap = p - r.dense(g.vertex_count)
print("lost mass per vertex, max:", gap.max(), "allowed:", stats.steps_taken * eps * g.degree.max())

# %%
# Mass that starts spread over S by degree and never leaves S shrinks by at
# most t * Phi(S) / 2.
phi_s = float(lc.conductance(g, members))
for t in (1, 5, 20):
    kept = restricted_walk(g, members, t).sum()
    print(f"t={t:2d}: kept {kept:.4f}, lower bound {1 - t * phi_s / 2:.4f}")

# %%
# Nibble's answer can be no better than the optimum.
cut = lc.nibble(g, 0, Fraction(1, 2), 2, lc.practical_constants())
print("nibble:", cut.members.members, cut.conductance, ">=", best, cut.conductance >= best)
