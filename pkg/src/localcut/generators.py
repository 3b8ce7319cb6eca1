"""Synthetic graphs with known low-conductance sets."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph, build_graph


@dataclass(frozen=True, eq=False)
class Generated:
    graph: Graph
    planted: tuple[int, ...]
    kind: str
    params: tuple


def _clique(vertices) -> list[tuple[int, int]]:
    vs = list(vertices)
    return [(vs[i], vs[j]) for i in range(len(vs)) for j in range(i + 1, len(vs))]


def barbell(k: int) -> Generated:
    """Two ``k``-cliques on ``0..k-1`` and ``k..2k-1`` joined by ``(k-1, k)``."""
    if k < 2:
        raise ValueError("barbell needs k >= 2")
    edges = _clique(range(k)) + _clique(range(k, 2 * k)) + [(k - 1, k)]
    return Generated(build_graph(edges), tuple(range(k)), "barbell", (k,))


def ring_of_cliques(r: int, k: int) -> Generated:
    """``r`` cliques of size ``k``; the last vertex of clique ``i`` is joined
    to the first vertex of clique ``i+1`` (cyclically)."""
    if r < 2 or k < 2:
        raise ValueError("ring_of_cliques needs r >= 2 and k >= 2")
    edges = []
    for i in range(r):
        edges += _clique(range(i * k, (i + 1) * k))
    links = {tuple(sorted((i * k + k - 1, ((i + 1) % r) * k))) for i in range(r)}
    edges += sorted(links)
    return Generated(build_graph(edges), tuple(range(k)), "ring_of_cliques", (r, k))


def _random_pairs(lo_a: int, hi_a: int, lo_b: int, hi_b: int, p: float,
                  rng: np.random.Generator, same: bool) -> set[tuple[int, int]]:
    na, nb = hi_a - lo_a, hi_b - lo_b
    possible = na * (na - 1) // 2 if same else na * nb
    target = int(rng.binomial(possible, p)) if possible and p > 0 else 0
    pairs: set[tuple[int, int]] = set()
    while len(pairs) < target:
        need = target - len(pairs)
        us = rng.integers(lo_a, hi_a, size=2 * need + 8)
        vs = rng.integers(lo_b, hi_b, size=2 * need + 8)
        for u, v in zip(us.tolist(), vs.tolist()):
            if u == v:
                continue
            pairs.add((min(u, v), max(u, v)))
            if len(pairs) == target:
                break
    return pairs


def planted_cut(n: int, p_in: float, p_out: float, seed: int = 0) -> Generated:
    """Two blocks of ``n // 2`` and ``n - n // 2`` vertices.

    Each block is a cycle (so it is connected and has no isolated vertex)
    plus ``G(h, p_in)`` edges; ``p_out`` governs edges between blocks. The
    planted set is the block of smaller volume.
    """
    if n < 6:
        raise ValueError("planted_cut needs n >= 6")
    if not (0 <= p_in <= 1 and 0 <= p_out <= 1):
        raise ValueError("probabilities must lie in [0, 1]")
    rng = np.random.default_rng(seed)
    h = n // 2
    blocks = [(0, h), (h, n)]
    edges: set[tuple[int, int]] = set()
    for lo, hi in blocks:
        edges.update((min(u, u + 1 if u + 1 < hi else lo), max(u, u + 1 if u + 1 < hi else lo))
                     for u in range(lo, hi))
        edges.update(_random_pairs(lo, hi, lo, hi, p_in, rng, same=True))
    edges.update(_random_pairs(0, h, h, n, p_out, rng, same=False))
    g = build_graph(sorted(edges))
    vol_a = int(g.degree[:h].sum())
    planted = tuple(range(h)) if 2 * vol_a <= g.total_volume else tuple(range(h, n))
    return Generated(g, planted, "planted_cut", (n, p_in, p_out, seed))


def generate(kind: str, params, seed: int = 0) -> Generated:
    """Dispatch by name: ``barbell``, ``ring_of_cliques`` (alias ``ring``),
    ``planted_cut`` (alias ``planted``)."""
    params = tuple(params)
    if kind == "barbell":
        return barbell(int(params[0]))
    if kind in ("ring_of_cliques", "ring"):
        return ring_of_cliques(int(params[0]), int(params[1]))
    if kind in ("planted_cut", "planted"):
        n, p_in, p_out = int(params[0]), float(params[1]), float(params[2])
        s = int(params[3]) if len(params) > 3 else seed
        return planted_cut(n, p_in, p_out, s)
    raise ValueError(f"unknown generator {kind!r}")
