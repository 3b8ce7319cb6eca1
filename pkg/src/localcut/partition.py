"""Random Nibble and the Partition loop built on it."""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional, Union

import numpy as np

from .graph import Graph, GraphLike, VertexSet, _members, boundary_size, conductance, full_view
from .nibble import GuaranteeViolation, run_nibble
from .params import ConstantsProfile, CutReport, Number, as_fraction, ceil_log2, derive_params

RngLike = Union[int, np.random.Generator]


def make_rng(rng: RngLike) -> tuple[np.random.Generator, Optional[int]]:
    if isinstance(rng, np.random.Generator):
        return rng, None
    return np.random.default_rng(int(rng)), int(rng)


def edge_count_of(g: GraphLike) -> int:
    """``m`` for a (view) volume: half of it, rounded up when odd."""
    return -(-g.volume_total // 2)


def b_range(m: int) -> int:
    """Largest ``b`` Random Nibble may draw: ``ceil(log2 m)``, at least 1."""
    return max(1, ceil_log2(max(m, 1)))


def b_distribution(m: int) -> list[Fraction]:
    """``Pr[b = i] = 2^-i / (1 - 2^-K)`` for ``i = 1..K``, ``K = ceil(log2 m)``."""
    k = b_range(m)
    norm = 1 - Fraction(1, 2 ** k)
    return [Fraction(1, 2 ** i) / norm for i in range(1, k + 1)]


def draw_vertex(g: GraphLike, rng: np.random.Generator) -> int:
    """A vertex drawn with probability proportional to its degree."""
    members = g.active.as_array() if hasattr(g, "active") else np.arange(g.vertex_count)
    cum = np.cumsum(g.base.degree[members])
    x = rng.integers(int(cum[-1]))
    return int(members[np.searchsorted(cum, x, side="right")])


def draw_b(m: int, rng: np.random.Generator) -> int:
    probs = np.array([float(p) for p in b_distribution(m)])
    return int(rng.choice(len(probs), p=probs / probs.sum())) + 1


def random_nibble(g: GraphLike, phi: Number, profile: ConstantsProfile | None,
                  rng: RngLike) -> Optional[CutReport]:
    """Nibble from a degree-weighted random vertex with a random size scale.

    Draws the vertex first, then ``b``.
    """
    cut, _ = _random_nibble(g, phi, profile, rng)
    return cut


def _random_nibble(g, phi, profile, rng, misses: dict | None = None):
    """One Random Nibble call; ``misses`` maps ``(v, b)`` draws already known
    to give an empty cut on this exact view to the work they cost."""
    gen, seed = make_rng(rng)
    if g.volume_total < 2 or len(getattr(g, "active", range(g.vertex_count))) < 2:
        return None, 0
    v = draw_vertex(g, gen)
    b = draw_b(edge_count_of(g), gen)
    if misses is not None and (v, b) in misses:
        return None, misses[v, b]
    run = run_nibble(g, v, phi, b, profile)
    if run.cut is None:
        if misses is not None:
            misses[v, b] = run.stats.work_units
        return None, run.stats.work_units
    return replace(run.cut, algorithm="random_nibble", seed=seed), run.stats.work_units


@dataclass
class PartitionTrace:
    pieces: list[CutReport] = field(default_factory=list)
    final_active: Optional[VertexSet] = None
    iterations: int = 0
    stop_reason: str = ""
    # |E(D_j, W_{j-1} - D_j)| per piece, inside the view it was cut from.
    piece_boundaries: list[int] = field(default_factory=list)
    # Counts every iteration's walk, including repeats answered from cache.
    work_units: int = 0


def iteration_cap(m: int, p_fail: Number) -> int:
    """``12 m ceil(log2(1/p))``."""
    inv = 1 / as_fraction(p_fail)
    k = 0
    while 2 ** k < inv:
        k += 1
    return 12 * m * k


def partition(g: Graph, theta: Number, p_fail: Number, profile: ConstantsProfile | None,
              rng: RngLike, max_iterations: int | None = None) -> tuple[CutReport, PartitionTrace]:
    """Repeatedly nibble low-conductance pieces off ``g``.

    Stops once the remaining volume drops below 3/4 of the total or after
    ``12 m ceil(log2(1/p_fail))`` iterations (``max_iterations`` overrides the
    cap). The union ``D`` has volume at most 7/8 of the graph and, when
    nonempty, conductance at most ``theta``.
    """
    theta = as_fraction(theta)
    p_fail = as_fraction(p_fail)
    if not 0 < theta < 1:
        raise ValueError(f"theta must lie in (0, 1), got {theta}")
    if not 0 < p_fail < 1:
        raise ValueError(f"p_fail must lie in (0, 1), got {p_fail}")
    if g.total_volume < 2:
        raise ValueError("graph volume is below 2")
    gen, seed = make_rng(rng)
    phi = theta / 7
    # Fail fast on a bad profile rather than inside the loop.
    derive_params(g, phi, 1, profile)

    cap = iteration_cap(edge_count_of(g), p_fail) if max_iterations is None else max_iterations
    total = g.total_volume
    view = full_view(g)
    trace = PartitionTrace()
    # Nibble is deterministic given (view, v, b), so a failed draw fails again
    # until the view changes; small graphs repeat draws constantly.
    misses: dict[tuple[int, int], int] = {}
    j = 0
    while j < cap and 4 * view.volume_total >= 3 * total:
        j += 1
        cut, work = _random_nibble(view, phi, profile, gen, misses)
        trace.work_units += work
        if cut is not None:
            trace.pieces.append(replace(cut, found_at_step=j))
            trace.piece_boundaries.append(boundary_size(view, cut.members))
            view = view.without(cut.members)
            misses.clear()
    trace.iterations = j
    trace.stop_reason = "volume-threshold" if 4 * view.volume_total < 3 * total else "iteration-cap"
    trace.final_active = view.active

    members = sorted(u for piece in trace.pieces for u in piece.members)
    d_set = VertexSet.of(g, members)
    report = CutReport.for_set(g, d_set, "partition", seed=seed, work_units=trace.work_units,
                               found_at_step=j)
    check_partition_output(g, report, trace, theta)
    return report, trace


def check_partition_output(g: Graph, d: CutReport, trace: PartitionTrace, theta: Fraction) -> None:
    """Re-assert ``vol D <= 7/8 vol V``, ``Phi(D) <= theta`` and the per-piece
    boundary inequality that implies it."""
    phi = theta / 7
    if 8 * d.volume > 7 * g.total_volume:
        raise GuaranteeViolation(f"vol D = {d.volume} exceeds 7/8 of {g.total_volume}")
    if not d.empty and conductance(g, d.members) > theta:
        raise GuaranteeViolation(f"Phi(D) = {d.conductance} exceeds theta = {theta}")
    for piece, bnd in zip(trace.pieces, trace.piece_boundaries):
        if bnd > phi * piece.volume:
            raise GuaranteeViolation(f"piece boundary {bnd} exceeds phi * {piece.volume}")
    seen: set[int] = set()
    for piece in trace.pieces:
        if seen.intersection(piece.members):
            raise GuaranteeViolation("pieces overlap")
        seen.update(piece.members)
    if trace.final_active is not None and seen | set(trace.final_active) != set(range(g.vertex_count)):
        raise GuaranteeViolation("pieces and final active set do not cover V")


def f2(theta: Number, g: GraphLike, profile: ConstantsProfile | None = None) -> Fraction:
    """``f1(theta / 7) / 2`` for the volume of ``g``."""
    theta = as_fraction(theta)
    if not 0 < theta < 1:
        raise ValueError(f"theta must lie in (0, 1), got {theta}")
    return derive_params(g, theta / 7, 1, profile).f1 / 2
