"""
Finding a cluster from a single vertex
======================================

Two cliques joined by one edge form the easiest graph to cut. We start a
truncated lazy walk inside one clique and watch when its sweep sets reveal
the bridge.
"""

from fractions import Fraction

import localcut as lc

# Two 20-cliques and a bridge between vertices 19 and 20.
g = lc.barbell(20).graph
print(f"{g.vertex_count} vertices, volume {g.total_volume}")
print("bridge cut conductance:", lc.conductance(g, range(20)))

# %%
# Parameters depend only on the target conductance, the size scale b and the
# volume. The "paper" profile keeps the large default constants; the "practical"
# one is smaller and still satisfies every inequality they must obey.
for profile in (lc.paper_constants(), lc.practical_constants()):
    params = lc.derive_params(g, Fraction(1, 20), 5, profile)
    print(f"{profile.name:9s} t_last={params.t_last:6d}  eps={float(params.eps):.2e}")

# %%
# Run the walk from vertex 0 and stop at the first step with a good sweep set.
run = lc.run_nibble(g, 0, Fraction(1, 20), 5, lc.practical_constants())
cut = run.cut
print("members:", cut.members.members)
print("conductance:", cut.conductance, "found at step", cut.found_at_step)
print("work units:", run.stats.work_units)

# %%
# Every returned cut has conductance at most phi and at most 5/6 of the
# volume, checked exactly. A target below the bridge conductance gives nothing.
print("phi = 1/1000:", lc.nibble(g, 0, Fraction(1, 1000), 5, lc.practical_constants()))
