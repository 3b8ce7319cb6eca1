"""Sparse lazy random walks with truncation.

The walk stays put with probability 1/2 and otherwise leaves along a
uniformly random edge slot of the current vertex; a self-loop slot returns
the walker to the same vertex. On a :class:`~localcut.graph.SubgraphView`
edges to inactive vertices behave as self-loops.

Every operation touches only the support of its input and the neighbors of
that support, so one step costs ``O(vol(support))``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional

import numpy as np

from .graph import GraphError, GraphLike, SetLike, _members, _ranges

MASS_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class SparseMass:
    """Nonnegative masses on a small support, ids in ascending order.

    Zero entries are never stored.
    """

    ids: np.ndarray
    values: np.ndarray

    @classmethod
    def from_dict(cls, masses: Mapping[int, float]) -> "SparseMass":
        items = sorted((int(u), float(x)) for u, x in masses.items())
        ids = np.array([u for u, _ in items], dtype=np.int64)
        values = np.array([x for _, x in items], dtype=np.float64)
        return cls.from_arrays(ids, values)

    @classmethod
    def from_arrays(cls, ids: np.ndarray, values: np.ndarray) -> "SparseMass":
        ids = np.asarray(ids, dtype=np.int64)
        values = np.asarray(values, dtype=np.float64)
        if np.any(values < 0):
            raise ValueError("masses must be nonnegative")
        if len(ids) > 1 and np.any(np.diff(ids) <= 0):
            order = np.argsort(ids, kind="stable")
            ids, values = ids[order], values[order]
            if np.any(np.diff(ids) == 0):
                raise ValueError("duplicate vertex ids")
        keep = values > 0
        return cls(ids[keep], values[keep])

    @classmethod
    def empty(cls) -> "SparseMass":
        return cls(np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.float64))

    def __len__(self) -> int:
        return len(self.ids)

    def total(self) -> float:
        return float(self.values.sum())

    def get(self, u: int) -> float:
        i = np.searchsorted(self.ids, u)
        if i < len(self.ids) and self.ids[i] == u:
            return float(self.values[i])
        return 0.0

    def to_dict(self) -> dict[int, float]:
        return {int(u): float(x) for u, x in zip(self.ids, self.values)}

    def dense(self, n: int) -> np.ndarray:
        out = np.zeros(n, dtype=np.float64)
        out[self.ids] = self.values
        return out


@dataclass
class WalkStats:
    """Work accounting for a truncated walk.

    ``support_volumes[t-1]`` is ``vol(support(r_{t-1}))``, the cost of
    computing ``q_t``; ``work_units`` is their sum.
    """

    steps_taken: int = 0
    work_units: int = 0
    max_support: int = 0
    died_out: bool = False
    support_volumes: list[int] = field(default_factory=list)


def indicator(g: GraphLike, v: int) -> SparseMass:
    """Unit mass at ``v``."""
    if not g.is_active(v):
        raise GraphError(f"vertex {v} is not in the graph")
    return SparseMass(np.array([v], dtype=np.int64), np.array([1.0]))


def degree_profile(g: GraphLike, s: SetLike) -> SparseMass:
    """Mass ``d(u)/vol(S)`` on each ``u`` in ``s``."""
    ids = _members(g, s)
    if not len(ids):
        raise ValueError("degree_profile needs a nonempty set")
    deg = g.base.degree[ids].astype(np.float64)
    return SparseMass(ids, deg / deg.sum())


def lazy_step(g: GraphLike, p: SparseMass) -> SparseMass:
    """One step of the lazy walk, ``M p`` with ``M = (A D^-1 + I) / 2``."""
    if np.any(p.values < 0):
        raise ValueError("lazy_step requires nonnegative mass")
    if not len(p):
        return SparseMass.empty()
    base = g.base
    ids, vals = p.ids, p.values
    per_slot = vals / (2.0 * base.degree[ids])
    starts, ends = base.indptr[ids], base.indptr[ids + 1]
    counts = ends - starts
    nbrs = base.indices[_ranges(starts, ends)]
    src = np.repeat(ids, counts)
    moved = np.repeat(per_slot, counts)

    stay = vals / 2.0 + base.self_loops[ids] * per_slot
    if g.active_mask is not None:
        outside = ~g.active_mask[nbrs]
        if outside.any():
            # Boundary slots are loops in G[A]; credit them to the source.
            stay = stay + np.bincount(np.searchsorted(ids, src[outside]),
                                      weights=moved[outside], minlength=len(ids))
            nbrs, moved = nbrs[~outside], moved[~outside]

    targets = np.concatenate((ids, nbrs))
    weights = np.concatenate((stay, moved))
    n = base.vertex_count
    if 4 * len(targets) >= n:
        # Dense accumulation is O(n) = O(vol(support)) here and avoids a sort;
        # per-target summation order is the same as in the sparse branch.
        acc = np.bincount(targets, weights=weights, minlength=n)
        out_ids = np.flatnonzero(acc)
        out_vals = acc[out_ids]
    else:
        out_ids, inverse = np.unique(targets, return_inverse=True)
        out_vals = np.bincount(inverse, weights=weights, minlength=len(out_ids))
    keep = out_vals > 0
    return SparseMass(out_ids[keep], out_vals[keep])


def truncate(g: GraphLike, p: SparseMass, eps: float) -> SparseMass:
    """Zero every entry with ``p(u) < d(u) * eps``; equality is kept."""
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    if eps == 0 or not len(p):
        return p
    keep = p.values >= g.base.degree[p.ids] * eps
    return SparseMass(p.ids[keep], p.values[keep])


Observer = Callable[[int, SparseMass, SparseMass], Optional[bool]]


def evolve_truncated(g: GraphLike, v: int, eps: float, t_max: int,
                     observer: Observer | None = None) -> tuple[SparseMass, WalkStats]:
    """Run ``r_0 = [chi_v]_eps``, ``q_t = M r_{t-1}``, ``r_t = [q_t]_eps``.

    ``observer(t, q_t, r_t)`` is called after each step ``t >= 1``; a truthy
    return value stops the walk. The walk also stops once ``r_t`` is empty.
    Returns the last ``r_t`` and the work statistics.
    """
    if t_max < 0:
        raise ValueError("t_max must be nonnegative")
    stats = WalkStats()
    r = truncate(g, indicator(g, v), eps)
    if not len(r):
        stats.died_out = True
        return r, stats
    degree = g.base.degree
    for t in range(1, t_max + 1):
        vol = int(degree[r.ids].sum())
        q = lazy_step(g, r)
        r = truncate(g, q, eps)
        stats.steps_taken = t
        stats.support_volumes.append(vol)
        stats.work_units += vol
        stats.max_support = max(stats.max_support, len(q))
        if observer is not None and observer(t, q, r):
            break
        if not len(r):
            stats.died_out = True
            break
    return r, stats
