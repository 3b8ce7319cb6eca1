"""Brute-force reference computations for small graphs.

Nothing here reuses the walk, sweep or cut code of the main path; each
function rebuilds what it needs from the adjacency lists of a
:class:`~localcut.graph.Graph`. Everything is dense or exponential, and the
size guards raise rather than silently truncate.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .graph import Graph

MAX_DENSE = 2048
MAX_EXHAUSTIVE = 14


class OracleSizeError(ValueError):
    pass


def _guard(g: Graph, limit: int) -> None:
    if g.vertex_count > limit:
        raise OracleSizeError(f"oracle limited to {limit} vertices, graph has {g.vertex_count}")


def _adjacency_lists(g: Graph) -> list[list[int]]:
    return [[int(v) for v in g.indices[g.indptr[u]:g.indptr[u + 1]]] for u in range(g.vertex_count)]


def walk_matrix(g: Graph) -> np.ndarray:
    """Dense ``M = (A D^-1 + I) / 2``, loops on the diagonal of ``A``."""
    _guard(g, MAX_DENSE)
    n = g.vertex_count
    adj = np.zeros((n, n))
    for u, nbrs in enumerate(_adjacency_lists(g)):
        for v in nbrs:
            adj[v, u] = 1.0
        adj[u, u] = g.self_loops[u]
    deg = adj.sum(axis=0)
    return (adj / deg + np.eye(n)) / 2


def exact_walk(g: Graph, v: int, t: int) -> np.ndarray:
    """``p_t = M^t chi_v`` as a dense vector."""
    return exact_walk_sequence(g, v, t)[-1]


def exact_walk_sequence(g: Graph, v: int, t: int) -> list[np.ndarray]:
    """``[p_0, ..., p_t]``."""
    m = walk_matrix(g)
    p = np.zeros(g.vertex_count)
    p[v] = 1.0
    out = [p]
    for _ in range(t):
        p = m @ p
        out.append(p)
    return out


def set_conductance(g: Graph, s: Iterable[int]) -> Fraction:
    """Conductance in the whole graph, by direct edge enumeration."""
    s = set(int(u) for u in s)
    deg = [int(d) for d in g.degree]
    vol_s = sum(deg[u] for u in s)
    denom = min(vol_s, sum(deg) - vol_s)
    if not s or denom == 0:
        return Fraction(1)
    adj = _adjacency_lists(g)
    crossing = sum(1 for u in s for v in adj[u] if v not in s)
    return Fraction(crossing, denom)


def min_conductance_exhaustive(g: Graph) -> tuple[tuple[int, ...], Fraction]:
    """Global minimum conductance over all nonempty proper subsets."""
    _guard(g, MAX_EXHAUSTIVE)
    n = g.vertex_count
    if n < 2:
        raise OracleSizeError("need at least two vertices")
    masks = np.arange(1, 2 ** n - 1, dtype=np.int64)
    bits = ((masks[:, None] >> np.arange(n)) & 1).astype(bool)
    deg = g.degree.astype(np.int64)
    vol = bits @ deg
    small = np.minimum(vol, int(deg.sum()) - vol)
    cut = np.zeros(len(masks), dtype=np.int64)
    for u, nbrs in enumerate(_adjacency_lists(g)):
        for v in nbrs:
            if u < v:
                cut += bits[:, u] != bits[:, v]
    best: tuple[tuple[int, ...], Fraction] | None = None
    for i in range(len(masks)):
        value = Fraction(int(cut[i]), int(small[i])) if small[i] > 0 else Fraction(1)
        if best is None or value < best[1]:
            best = (tuple(int(u) for u in np.flatnonzero(bits[i])), value)
    return best


def restricted_walk(g: Graph, s: Iterable[int], t: int) -> np.ndarray:
    """``(D_S M)^t psi_S``: mass of walks from ``psi_S`` that never left ``S``."""
    m = walk_matrix(g)
    keep = np.zeros(g.vertex_count)
    keep[list(s)] = 1.0
    x = keep * g.degree
    x = x / x.sum()
    for _ in range(t):
        x = keep * (m @ x)
    return x


def check_ds_product_bound(g: Graph, s: Iterable[int], p: Sequence[float], q: Sequence[float],
                           t: int, tol: float = 1e-12) -> bool:
    """Whether ``p^T (D_S M)^t q <= p^T M^t q`` within ``tol``."""
    m = walk_matrix(g)
    keep = np.zeros(g.vertex_count)
    keep[list(s)] = 1.0
    restricted = np.asarray(q, dtype=float)
    free = restricted.copy()
    for _ in range(t):
        restricted = keep * (m @ restricted)
        free = m @ free
    p = np.asarray(p, dtype=float)
    return float(p @ restricted) <= float(p @ free) + tol


def sweep_breakpoints(g: Graph, p: Sequence[float]) -> tuple[list[int], list[int], list[float]]:
    """Full sweep over all vertices: order, prefix volumes, prefix masses.

    Ties in ``p(u)/d(u)`` go to the smaller id.
    """
    deg = [int(d) for d in g.degree]
    order = sorted(range(g.vertex_count), key=lambda u: (-p[u] / deg[u], u))
    lambdas, masses = [], []
    vol, mass = 0, 0.0
    for u in order:
        vol += deg[u]
        mass += float(p[u])
        lambdas.append(vol)
        masses.append(mass)
    return order, lambdas, masses


def curve(g: Graph, p: Sequence[float], x: float) -> float:
    """``I(p, x) = max { sum w(u) p(u) : 0 <= w <= 1, sum w(u) d(u) = x }``.

    Solved as a fractional knapsack: fill vertices greedily by ``p/d``.
    """
    deg = [int(d) for d in g.degree]
    if x < -1e-12 or x > sum(deg) + 1e-12:
        raise ValueError(f"x={x} outside the volume range")
    remaining = x
    total = 0.0
    for u in sorted(range(g.vertex_count), key=lambda u: -p[u] / deg[u]):
        if remaining <= 0:
            break
        take = min(1.0, remaining / deg[u])
        total += take * float(p[u])
        remaining -= take * deg[u]
    return total


def prefix_conductances(g: Graph, p: Sequence[float]) -> list[Fraction]:
    """Conductance of every sweep prefix ``S_1 .. S_{n-1}`` of ``p``."""
    order, _, _ = sweep_breakpoints(g, p)
    return [set_conductance(g, order[:j]) for j in range(1, g.vertex_count)]


def truncated_walk_sequence(g: Graph, v: int, eps: float, t: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Dense ``(q_s, r_s)`` for ``s = 0..t``, for cross-checking the sparse walk."""
    m = walk_matrix(g)
    deg = g.degree.astype(float)
    q = np.zeros(g.vertex_count)
    q[v] = 1.0
    r = np.where(q >= deg * eps, q, 0.0)
    out = [(q, r)]
    for _ in range(t):
        q = m @ r
        r = np.where(q >= deg * eps, q, 0.0)
        out.append((q, r))
    return out
