"""Nibble: local clustering from a truncated lazy walk."""
from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional

import numpy as np

from .graph import GraphLike, conductance
from .params import ConstantsProfile, CutReport, NibbleParams, Number, derive_params
from .sweep import first_qualifying_prefix, slope_condition, sweep
from .walk import SparseMass, WalkStats, evolve_truncated


class GuaranteeViolation(AssertionError):
    """An output broke a property the algorithm guarantees unconditionally."""


@dataclass
class NibbleRun:
    cut: Optional[CutReport]
    stats: WalkStats
    params: NibbleParams
    # Step at which q_t repeated bit for bit; every later step would repeat
    # it too, so the walk was cut short there.
    settled_at: Optional[int] = None


def check_nibble_output(g: GraphLike, cut: CutReport, phi: Fraction) -> None:
    """Raise :class:`GuaranteeViolation` unless ``Phi(C) <= phi`` and
    ``vol C <= (5/6) vol V``, recomputed from scratch."""
    actual = conductance(g, cut.members)
    if actual != cut.conductance or actual > phi:
        raise GuaranteeViolation(f"conductance {actual} exceeds phi={phi}")
    if 6 * cut.members.cached_volume > 5 * g.volume_total:
        raise GuaranteeViolation(f"volume {cut.members.cached_volume} exceeds 5/6 of {g.volume_total}")


def run_nibble(g: GraphLike, v: int, phi: Number, b: int,
               profile: ConstantsProfile | None = None) -> NibbleRun:
    """Nibble with its walk statistics and derived parameters."""
    if not g.is_active(v):
        raise ValueError(f"vertex {v} is not active")
    params = derive_params(g, phi, b, profile)
    found: list[CutReport] = []
    last: list = [None]
    settled: list[Optional[int]] = [None]
    # Prefix verdict for the last sweep order examined; it depends on the
    # order alone, so it carries over while the order is unchanged.
    cached: list = [None, None]

    def observe(t: int, q: SparseMass, r: SparseMass) -> bool:
        prev = last[0]
        if prev is not None and np.array_equal(prev.ids, q.ids) and np.array_equal(prev.values, q.values):
            settled[0] = t
            return True
        last[0] = q
        order = sweep(g, q)
        if not slope_condition(order, params):
            return False
        if cached[0] is None or not np.array_equal(cached[0], order.pi):
            cached[0], cached[1] = order.pi, first_qualifying_prefix(g, order, params, step=t)
        if cached[1] is not None:
            found.append(replace(cached[1][1], found_at_step=t))
            return True
        return False

    _, stats = evolve_truncated(g, v, params.eps_float, params.t_last, observe)
    cut = None
    if found:
        cut = replace(found[0], start_vertex=v, work_units=stats.work_units)
        check_nibble_output(g, cut, params.phi)
    return NibbleRun(cut, stats, params, settled[0])


def nibble(g: GraphLike, v: int, phi: Number, b: int,
           profile: ConstantsProfile | None = None) -> Optional[CutReport]:
    """Search for a cluster of conductance at most ``phi`` near ``v``.

    Returns ``None`` when no step of the walk yields a qualifying sweep set.
    A returned cut always has conductance ``<= phi`` and volume at most 5/6
    of the graph (or view) volume.
    """
    return run_nibble(g, v, phi, b, profile).cut
