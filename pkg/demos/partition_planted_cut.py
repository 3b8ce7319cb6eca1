"""
Partitioning a graph with a planted cut
=======================================

Partition calls Nibble from random vertices and removes what it finds until
enough volume is gone. Here the two blocks of a planted graph share a handful
of edges.
"""

from fractions import Fraction

import localcut as lc

gen = lc.planted_cut(600, 0.03, 0.0005, seed=2)
g, planted = gen.graph, gen.planted
print(f"{g.vertex_count} vertices, {g.edge_count} edges")
print("planted block conductance:", lc.conductance(g, planted))

# %%
# theta bounds the conductance of the union D; each nibble uses phi = theta/7.
theta = Fraction(1, 2)
d, trace = lc.partition(g, theta, Fraction(1, 4), lc.practical_constants(), rng=7)
print("stop reason:", trace.stop_reason, "after", trace.iterations, "iterations")
for piece in trace.pieces:
    print(f"  piece of {len(piece.members)} vertices, volume {piece.volume}, from vertex {piece.start_vertex}")
print("D: conductance", d.conductance, "balance", d.balance)

# %%
# How much of the planted block did D pick up?
inside = set(planted) & set(d.members.members)
print(f"{len(inside)} of {len(planted)} planted vertices are in D")

# %%
# Repeating with the same seed gives the same pieces.
again, _ = lc.partition(g, theta, Fraction(1, 4), lc.practical_constants(), rng=7)
print("same result:", again == d)
