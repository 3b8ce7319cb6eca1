"""
How the walk flattens the mass curve
====================================

For a mass vector p, I(p, x) is the most mass that fits in volume x when
vertices are taken in order of p(u)/d(u). One lazy step never raises the
curve, and when no sweep set has small conductance it drops quickly toward
the straight line of the stationary distribution.
"""

import numpy as np

import localcut as lc
from localcut.oracles import curve, exact_walk_sequence

# An expander-like ring of small cliques versus a barbell with a narrow bridge.
graphs = {"ring of 6 cliques": lc.ring_of_cliques(6, 4).graph, "barbell": lc.barbell(12).graph}

for name, g in graphs.items():
    vol = g.total_volume
    xs = np.linspace(0, vol, 9)[1:-1]
    print(f"\n{name} (volume {vol})")
    print("t    " + " ".join(f"x={x:5.0f}" for x in xs))
    for t, p in enumerate(exact_walk_sequence(g, 0, 64)):
        if t in (0, 1, 4, 16, 64):
            print(f"{t:<4d} " + " ".join(f"{curve(g, p, x):7.3f}" for x in xs))
    print("line " + " ".join(f"{x / vol:7.3f}" for x in xs))

# %%
# The barbell curve flattens much more slowly near half its volume: mass
# leaks through a single bridge edge, which is what Nibble detects.
