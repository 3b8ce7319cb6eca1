"""Graphs with self-loops, volumes, and exact conductance.

Vertices are ``0..n-1``. Simple edges are unweighted and deduplicated;
only self-loops carry a multiplicity, and each loop adds one to the degree
of its vertex. Volumes are always measured with degrees of the base graph,
including inside a :class:`SubgraphView`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union

import numpy as np


class GraphError(ValueError):
    """Raised for malformed graph input or out-of-range vertex sets."""


@dataclass(frozen=True, eq=False)
class Graph:
    """Undirected multigraph stored as sorted CSR adjacency plus loop counts.

    Use :func:`build_graph` rather than constructing this directly.
    """

    indptr: np.ndarray
    indices: np.ndarray
    self_loops: np.ndarray
    degree: np.ndarray
    total_volume: int

    @property
    def vertex_count(self) -> int:
        return len(self.degree)

    @property
    def edge_count(self) -> int:
        """Number of simple edges (self-loops excluded)."""
        return len(self.indices) // 2

    def neighbors(self, u: int) -> np.ndarray:
        return self.indices[self.indptr[u]:self.indptr[u + 1]]

    def edges(self) -> list[tuple[int, int]]:
        """Simple edges as ``(u, v)`` pairs with ``u < v``, sorted."""
        out = []
        for u in range(self.vertex_count):
            for v in self.neighbors(u):
                if u < v:
                    out.append((u, int(v)))
        return out

    # Uniform access shared with SubgraphView.
    @property
    def base(self) -> "Graph":
        return self

    @property
    def active_mask(self) -> None:
        return None

    @property
    def volume_total(self) -> int:
        return self.total_volume

    def is_active(self, u: int) -> bool:
        return 0 <= u < self.vertex_count


@dataclass(frozen=True)
class VertexSet:
    """Strictly increasing vertex ids together with their volume."""

    members: tuple[int, ...]
    cached_volume: int

    @classmethod
    def of(cls, g: "GraphLike", members: Iterable[int]) -> "VertexSet":
        ids = sorted({int(u) for u in members})
        base = g.base
        for u in ids:
            if not 0 <= u < base.vertex_count:
                raise GraphError(f"vertex {u} is not in the graph")
        vol = int(base.degree[ids].sum()) if ids else 0
        return cls(tuple(ids), vol)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, u: object) -> bool:
        return u in set(self.members)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.members, dtype=np.int64)


@dataclass(frozen=True, eq=False)
class SubgraphView:
    """``G[A]``: the subgraph induced on ``active`` with boundary edges turned
    into self-loops, so every active vertex keeps its base degree.

    Nothing is copied from the base graph; walks and cut computations consult
    ``active_mask`` on the fly.
    """

    base: Graph
    active: VertexSet
    active_mask: np.ndarray = field(repr=False)

    @property
    def vertex_count(self) -> int:
        return self.base.vertex_count

    @property
    def degree(self) -> np.ndarray:
        return self.base.degree

    @property
    def indptr(self) -> np.ndarray:
        return self.base.indptr

    @property
    def indices(self) -> np.ndarray:
        return self.base.indices

    @property
    def volume_total(self) -> int:
        return self.active.cached_volume

    def is_active(self, u: int) -> bool:
        return 0 <= u < self.base.vertex_count and bool(self.active_mask[u])

    def self_loops_of(self, u: int) -> int:
        """Loop count of ``u`` in the view: base loops plus boundary edges."""
        if not self.is_active(u):
            raise GraphError(f"vertex {u} is not active in the view")
        nbrs = self.base.neighbors(u)
        outside = int(np.count_nonzero(~self.active_mask[nbrs]))
        return int(self.base.self_loops[u]) + outside

    def without(self, removed: Iterable[int]) -> "SubgraphView":
        """The view on ``active - removed``."""
        removed = [int(u) for u in removed]
        mask = self.active_mask.copy()
        mask[removed] = False
        members = tuple(u for u in self.active.members if mask[u])
        vol = self.active.cached_volume - int(self.base.degree[removed].sum()) if removed else self.active.cached_volume
        return SubgraphView(self.base, VertexSet(members, vol), mask)


GraphLike = Union[Graph, SubgraphView]
SetLike = Union[VertexSet, Iterable[int]]


def build_graph(edges: Sequence[tuple[int, int]], self_loops: Sequence[tuple[int, int]] = (),
                vertex_count: int | None = None) -> Graph:
    """Build a :class:`Graph` from simple edges and ``(vertex, count)`` loops.

    Raises :class:`GraphError` on duplicate edges, on ``(u, u)`` entries in
    ``edges`` (loops belong in ``self_loops``), and on vertices of degree 0.
    """
    n = 0
    seen: set[tuple[int, int]] = set()
    for u, v in edges:
        u, v = int(u), int(v)
        if u < 0 or v < 0:
            raise GraphError(f"negative vertex id in edge ({u}, {v})")
        if u == v:
            raise GraphError(f"edge ({u}, {v}) is a self-loop; pass it via self_loops instead")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphError(f"duplicate edge ({u}, {v})")
        seen.add(key)
        n = max(n, u + 1, v + 1)
    loops: dict[int, int] = {}
    for u, k in self_loops:
        u, k = int(u), int(k)
        if u < 0 or k < 0:
            raise GraphError(f"invalid self-loop entry ({u}, {k})")
        loops[u] = loops.get(u, 0) + k
        n = max(n, u + 1)
    if vertex_count is not None:
        if vertex_count < n:
            raise GraphError(f"vertex_count={vertex_count} but ids reach {n - 1}")
        n = vertex_count

    src = np.fromiter((x for a, b in seen for x in (a, b)), dtype=np.int64, count=2 * len(seen))
    dst = np.fromiter((x for a, b in seen for x in (b, a)), dtype=np.int64, count=2 * len(seen))
    order = np.lexsort((dst, src))
    src, dst = src[order], dst[order]
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
    loop_arr = np.zeros(n, dtype=np.int64)
    for u, k in loops.items():
        loop_arr[u] = k
    degree = np.diff(indptr) + loop_arr
    isolated = np.flatnonzero(degree == 0)
    if len(isolated):
        raise GraphError(f"vertex {int(isolated[0])} has degree 0")
    for arr in (indptr, dst, loop_arr, degree):
        arr.setflags(write=False)
    return Graph(indptr, dst, loop_arr, degree, int(degree.sum()))


def _members(g: GraphLike, s: SetLike) -> np.ndarray:
    ids = s.as_array() if isinstance(s, VertexSet) else np.unique(np.fromiter((int(u) for u in s), dtype=np.int64))
    n = g.base.vertex_count
    mask = g.active_mask
    for u in ids:
        if not 0 <= u < n or (mask is not None and not mask[u]):
            raise GraphError(f"vertex {int(u)} is not in the graph")
    return ids


def volume(g: GraphLike, s: SetLike) -> int:
    """Sum of base-graph degrees over ``s``."""
    ids = _members(g, s)
    return int(g.base.degree[ids].sum()) if len(ids) else 0


def _boundary(g: GraphLike, ids: np.ndarray) -> int:
    if not len(ids):
        return 0
    base = g.base
    inside = np.zeros(base.vertex_count, dtype=bool)
    inside[ids] = True
    starts, ends = base.indptr[ids], base.indptr[ids + 1]
    nbrs = base.indices[_ranges(starts, ends)]
    crossing = ~inside[nbrs]
    if g.active_mask is not None:
        crossing &= g.active_mask[nbrs]
    return int(np.count_nonzero(crossing))


def boundary_size(g: GraphLike, s: SetLike) -> int:
    """Number of simple edges with exactly one endpoint in ``s``.

    In a view only edges between active vertices count; boundary edges of the
    active set are loops there and cross no cut.
    """
    return _boundary(g, _members(g, s))


def conductance(g: GraphLike, s: SetLike) -> Fraction:
    """``|E(S, A-S)| / min(vol S, vol(A-S))`` as an exact fraction.

    Returns ``1`` for the empty set, for the whole active set, and whenever
    the denominator is zero.
    """
    ids = _members(g, s)
    vol_s = int(g.base.degree[ids].sum()) if len(ids) else 0
    denom = min(vol_s, g.volume_total - vol_s)
    if not len(ids) or denom <= 0:
        return Fraction(1)
    return Fraction(_boundary(g, ids), denom)


def balance(g: GraphLike, s: SetLike) -> Fraction:
    """``min(vol S, vol(V-S)) / vol V``."""
    vol_s = volume(g, s)
    return Fraction(min(vol_s, g.volume_total - vol_s), g.volume_total)


def induce_subgraph(g: GraphLike, active: SetLike) -> SubgraphView:
    """The degree-preserving induced subgraph ``G[active]``."""
    ids = _members(g, active)
    if not len(ids):
        raise GraphError("cannot induce a subgraph on an empty vertex set")
    base = g.base
    mask = np.zeros(base.vertex_count, dtype=bool)
    mask[ids] = True
    mask.setflags(write=False)
    members = VertexSet(tuple(int(u) for u in ids), int(base.degree[ids].sum()))
    return SubgraphView(base, members, mask)


def full_view(g: GraphLike) -> SubgraphView:
    if isinstance(g, SubgraphView):
        return g
    return induce_subgraph(g, range(g.vertex_count))


def _ranges(starts: np.ndarray, ends: np.ndarray) -> np.ndarray:
    """Concatenation of ``arange(s, e)`` for each pair, in order."""
    counts = ends - starts
    total = int(counts.sum())
    if total == 0:
        return np.zeros(0, dtype=np.int64)
    shift = starts - (np.cumsum(counts) - counts)
    return np.arange(total, dtype=np.int64) + np.repeat(shift, counts)
