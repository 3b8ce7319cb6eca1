import itertools
from fractions import Fraction

import numpy as np
import pytest
from scipy.optimize import linprog

from localcut.generators import barbell
from localcut.graph import build_graph
from localcut.oracles import (OracleSizeError, check_ds_product_bound, curve, exact_walk, min_conductance_exhaustive,
                              prefix_conductances, restricted_walk, set_conductance, walk_matrix)

from conftest import c4, k2, path, random_connected, small_corpus, star_with_loop, triangle

CORPUS = small_corpus()


def test_exact_walk_examples():
    np.testing.assert_allclose(exact_walk(k2(), 0, 1), [0.5, 0.5])
    np.testing.assert_allclose(exact_walk(triangle(), 0, 200), [1 / 3] * 3, atol=1e-9)
    assert exact_walk(star_with_loop(), 0, 1)[0] == pytest.approx(5 / 8)


@pytest.mark.parametrize("name", list(CORPUS))
def test_walk_matrix_is_column_stochastic(name):
    m = walk_matrix(CORPUS[name])
    np.testing.assert_allclose(m.sum(axis=0), 1.0, atol=1e-12)
    assert (m >= 0).all()


@pytest.mark.parametrize("name", ["barbell4", "rand10_loops", "ring4x4"])
def test_exact_walk_conserves_mass(name):
    g = CORPUS[name]
    for t in (1, 10, 50):
        assert exact_walk(g, 1, t).sum() == pytest.approx(1.0, abs=1e-12)


def test_exhaustive_minimum_examples():
    assert min_conductance_exhaustive(k2())[1] == 1
    members, value = min_conductance_exhaustive(c4())
    assert value == Fraction(1, 2)
    assert len(members) == 2 and set_conductance(c4(), members) == Fraction(1, 2)
    members, value = min_conductance_exhaustive(barbell(3).graph)
    assert value == Fraction(1, 7)
    assert members in ((0, 1, 2), (3, 4, 5))


def test_exhaustive_minimum_matches_plain_enumeration():
    g = random_connected(8, 0.35, 12, loops=True)
    best = min(set_conductance(g, s) for r in range(1, 8) for s in itertools.combinations(range(8), r))
    assert min_conductance_exhaustive(g)[1] == best


def test_size_guards():
    with pytest.raises(OracleSizeError):
        min_conductance_exhaustive(path(15))
    with pytest.raises(OracleSizeError):
        walk_matrix(path(2049))


def test_restricted_walk_examples():
    g = k2()
    assert restricted_walk(g, [0], 0).sum() == 1
    assert restricted_walk(g, [0], 1).sum() == pytest.approx(0.5)
    assert 1 - 1 * set_conductance(g, [0]) / 2 == Fraction(1, 2)
    # No edges leave a set of conductance zero, so nothing escapes.
    two_parts = build_graph([(0, 1), (2, 3)])
    assert set_conductance(two_parts, [0, 1]) == 0
    assert restricted_walk(two_parts, [0, 1], 25).sum() == pytest.approx(1.0)
    g = barbell(3).graph
    assert restricted_walk(g, range(6), 30).sum() == pytest.approx(1.0)


def test_ds_product_bound_examples():
    g = k2()
    assert check_ds_product_bound(g, [0], [1, 0], [1, 0], 1)
    assert check_ds_product_bound(g, [0], [0, 0], [0, 0], 3)
    g = CORPUS["rand8"]
    rng = np.random.default_rng(1)
    m = walk_matrix(g)
    for _ in range(50):
        s = [u for u in range(8) if rng.random() < 0.5] or [0]
        p, q = rng.random(8), rng.random(8)
        t = int(rng.integers(0, 12))
        assert check_ds_product_bound(g, s, p, q, t)
        # With S = V the restriction is the identity and both sides agree.
        assert check_ds_product_bound(g, range(8), p, q, t, tol=0)
        assert not check_ds_product_bound(g, range(8), p, q, t, tol=-1e-9 * (1 + p @ m @ q))


@pytest.mark.parametrize("name", [k for k, g in CORPUS.items() if g.vertex_count <= 8])
def test_escaping_mass_small(name):
    g = CORPUS[name]
    n = g.vertex_count
    for r in range(1, n + 1):
        for s in itertools.combinations(range(n), r):
            phi = float(set_conductance(g, s)) if r < n else 0.0
            for t in (1, 5, 10):
                assert restricted_walk(g, s, t).sum() >= 1 - t * phi / 2 - 1e-10


@pytest.mark.parametrize("name", ["k2", "star_loop", "barbell3", "rand8", "rand10_loops"])
def test_curve_matches_linear_program(name):
    g = CORPUS[name]
    n = g.vertex_count
    rng = np.random.default_rng(3)
    deg = g.degree.astype(float)
    for _ in range(10):
        p = rng.random(n) * (rng.random(n) < 0.7)
        for x in rng.uniform(0, deg.sum(), 4):
            res = linprog(-p, A_eq=deg[None, :], b_eq=[x], bounds=[(0, 1)] * n, method="highs")
            assert res.status == 0
            assert curve(g, p, x) == pytest.approx(-res.fun, abs=1e-9)


def test_curve_range_error():
    with pytest.raises(ValueError):
        curve(k2(), [1, 0], 3)


@pytest.mark.parametrize("name", [k for k, g in CORPUS.items() if g.vertex_count <= 12])
def test_sweeps_never_beat_exhaustive_minimum(name):
    g = CORPUS[name]
    best = min_conductance_exhaustive(g)[1]
    rng = np.random.default_rng(8)
    for _ in range(10):
        assert min(prefix_conductances(g, rng.random(g.vertex_count))) >= best
