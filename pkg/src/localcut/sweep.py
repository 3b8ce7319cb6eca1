"""Sweep orders and the Lovász–Simonovits curve ``I(p, x)``.

Vertices are ordered by decreasing ``p(u)/d(u)`` with ties broken by
ascending id. Only the support of ``p`` is ordered: zero-mass vertices sit
after it, where the curve is flat.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .graph import GraphLike, VertexSet, _ranges
from .params import CutReport, NibbleParams
from .walk import SparseMass


@dataclass(frozen=True, eq=False)
class SweepOrder:
    """Breakpoints ``(lambda_j, I(p, lambda_j))`` of a sweep.

    ``pi[j-1]`` is the ``j``-th vertex, ``lambdas[j-1] = vol(S_j)`` and
    ``prefix_mass[j-1] = p(S_j)``; ``ratios[j-1]`` is ``p/d`` of ``pi[j-1]``.
    """

    pi: np.ndarray
    lambdas: np.ndarray
    prefix_mass: np.ndarray
    ratios: np.ndarray
    total_volume: int

    def __len__(self) -> int:
        return len(self.pi)

    @property
    def total_mass(self) -> float:
        return float(self.prefix_mass[-1]) if len(self.pi) else 0.0

    def prefix(self, j: int) -> tuple[int, ...]:
        return tuple(sorted(int(u) for u in self.pi[:j]))


def sweep(g: GraphLike, p: SparseMass) -> SweepOrder:
    if np.any(p.values < 0):
        raise ValueError("sweep requires nonnegative mass")
    degree = g.base.degree[p.ids]
    ratios = p.values / degree
    # lexsort: last key is primary.
    order = np.lexsort((p.ids, -ratios))
    pi = p.ids[order]
    return SweepOrder(
        pi=pi,
        lambdas=np.cumsum(degree[order]),
        prefix_mass=np.cumsum(p.values[order]),
        ratios=ratios[order],
        total_volume=g.volume_total,
    )


def _breakpoints(order: SweepOrder) -> tuple[np.ndarray, np.ndarray]:
    xs = np.concatenate(([0], order.lambdas)).astype(np.float64)
    ys = np.concatenate(([0.0], order.prefix_mass))
    if not len(order.pi) or order.lambdas[-1] < order.total_volume:
        xs = np.append(xs, float(order.total_volume))
        ys = np.append(ys, order.total_mass)
    return xs, ys


def curve_value(order: SweepOrder, x: float) -> float:
    """``I(p, x)``: linear between breakpoints, flat past the support."""
    if not 0 <= x <= order.total_volume:
        raise ValueError(f"x={x} outside [0, {order.total_volume}]")
    xs, ys = _breakpoints(order)
    return float(np.interp(x, xs, ys))


def curve_left_derivative(order: SweepOrder, x: float) -> float:
    """Left derivative ``I_x(p, x)``; at ``x = lambda_j`` it is ``p/d`` of
    the ``j``-th vertex."""
    if x <= 0:
        raise ValueError("the left derivative needs x > 0")
    if x > order.total_volume:
        raise ValueError(f"x={x} exceeds the volume {order.total_volume}")
    j = int(np.searchsorted(order.lambdas, x, side="left"))
    if j >= len(order.pi):
        return 0.0
    return float(order.ratios[j])


def prefix_boundaries(g: GraphLike, order: SweepOrder) -> np.ndarray:
    """``|E(S_j, A - S_j)|`` for every prefix, maintained incrementally.

    Adding ``u`` to the prefix adds its active neighbors and removes twice the
    edges from ``u`` back into the prefix. Costs ``O(vol(support))``.
    """
    k = len(order.pi)
    if k == 0:
        return np.zeros(0, dtype=np.int64)
    base = g.base
    pi = order.pi
    starts, ends = base.indptr[pi], base.indptr[pi + 1]
    counts = ends - starts
    nbrs = base.indices[_ranges(starts, ends)]
    src_pos = np.repeat(np.arange(k), counts)

    if g.active_mask is not None:
        active = g.active_mask[nbrs]
    else:
        active = np.ones(len(nbrs), dtype=bool)

    # Position of each neighbor in the sweep, or k if outside the support.
    sorted_idx = np.argsort(pi)
    sorted_ids = pi[sorted_idx]
    loc = np.searchsorted(sorted_ids, nbrs)
    loc_clipped = np.minimum(loc, k - 1)
    in_support = sorted_ids[loc_clipped] == nbrs
    nbr_pos = np.where(in_support, sorted_idx[loc_clipped], k)

    active_deg = np.bincount(src_pos[active], minlength=k)
    earlier = np.bincount(src_pos[active & (nbr_pos < src_pos)], minlength=k)
    return np.cumsum(active_deg - 2 * earlier)


def slope_condition(order: SweepOrder, params: NibbleParams) -> bool:
    """``I_x(q_t, 2^b) >= 1 / (c4 (ell+2) 2^b)``; the same for every ``j``."""
    two_b = 2 ** params.b
    if not len(order.pi) or two_b > order.total_volume:
        return False
    return curve_left_derivative(order, two_b) >= float(params.c4_threshold)


def first_qualifying_prefix(g: GraphLike, order: SweepOrder, params: NibbleParams,
                            step: int = 0) -> Optional[tuple[int, CutReport]]:
    """Smallest ``j`` meeting the conductance and both volume conditions.

    These depend on the order only through ``pi``, so callers may reuse the
    answer while ``pi`` stays the same. Conductance is compared exactly.
    """
    if not len(order.pi):
        return None
    two_b = 2 ** params.b
    volume = order.total_volume
    lambdas = order.lambdas
    boundary = prefix_boundaries(g, order)
    small = np.minimum(lambdas, volume - lambdas)
    ok = (6 * lambdas <= 5 * volume) & (lambdas >= two_b) & (small > 0)
    phi = params.phi
    # Float prefilter with slack, then exact confirmation in order.
    with np.errstate(divide="ignore", invalid="ignore"):
        approx = boundary / np.where(small > 0, small, 1)
    candidates = np.flatnonzero(ok & (approx <= float(phi) * (1 + 1e-9) + 1e-300))
    for idx in candidates:
        cond = Fraction(int(boundary[idx]), int(small[idx]))
        if cond <= phi:
            j = int(idx) + 1
            members = VertexSet(order.prefix(j), int(lambdas[idx]))
            report = CutReport(
                members=members,
                conductance=cond,
                volume=int(lambdas[idx]),
                balance=Fraction(int(small[idx]), volume),
                algorithm="nibble",
                found_at_step=step,
                sweep_index=j,
                b=params.b,
            )
            return j, report
    return None


def scan_conditions(g: GraphLike, order: SweepOrder, params: NibbleParams,
                    step: int = 0) -> Optional[tuple[int, CutReport]]:
    """Smallest ``j`` whose prefix passes all four stopping conditions.

    The slope condition is read at ``x = 2^b`` and does not depend on ``j``,
    so it is checked once, first.
    """
    if not slope_condition(order, params):
        return None
    return first_qualifying_prefix(g, order, params, step)
