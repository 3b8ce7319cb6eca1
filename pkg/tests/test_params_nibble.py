import math
from fractions import Fraction

import numpy as np
import pytest

from localcut.generators import barbell, planted_cut, ring_of_cliques
from localcut.graph import VertexSet, build_graph, conductance, induce_subgraph
from localcut.nibble import GuaranteeViolation, check_nibble_output, nibble, run_nibble
from localcut.params import (ConstantsProfile, CutReport, as_fraction, ceil_log2, derive_params,
                             paper_constants, practical_constants, profile_by_name, validate_constants,
                             walk_length)
from localcut.sweep import scan_conditions, sweep
from localcut.walk import evolve_truncated

from conftest import k2, small_corpus


def complete(n):
    return build_graph([(u, v) for u in range(n) for v in range(u + 1, n)])


def test_paper_constants():
    p = paper_constants()
    assert p.as_tuple() == (200, 280, 1800, 140, 20, 60)
    assert p.c1 == 200 and p.c5 == 20 and p.c6 == 60
    assert validate_constants(p) == []


def test_practical_constants_valid():
    assert validate_constants(practical_constants()) == []
    assert not practical_constants().waived


def test_validate_reports_violations():
    bad = ConstantsProfile(200, 280, 1800, 10, 20, 60)
    assert "c4 >= 4*c5" in validate_constants(bad)
    assert len(validate_constants(ConstantsProfile(1, 1, 1, 1, 1, 1))) > 1


def test_invalid_profile_rejected_unless_waived():
    g = barbell(3).graph
    bad = ConstantsProfile(1, 1, 1, 1, 1, 1)
    with pytest.raises(ValueError, match="violates"):
        derive_params(g, 0.2, 1, bad)
    waived = ConstantsProfile(1, 1, 1, 1, 1, 1, name="loose", waived=True)
    with pytest.warns(UserWarning):
        derive_params(g, 0.2, 1, waived)


def test_profile_by_name():
    assert profile_by_name("paper") == paper_constants()
    assert profile_by_name("practical") == practical_constants()
    with pytest.raises(ValueError):
        profile_by_name("fast")


def test_as_fraction_and_ceil_log2():
    assert as_fraction(0.2) == Fraction(1, 5)
    assert as_fraction("3/7") == Fraction(3, 7)
    assert [ceil_log2(x) for x in (1, 2, 3, 4, 5, 8, 9)] == [0, 1, 2, 2, 3, 3, 4]
    with pytest.raises(ValueError):
        ceil_log2(0)


def independent_params(vol, phi, b, c):
    """Straight re-evaluation of the defining formulas in floating point."""
    ell = math.ceil(math.log2(vol / 2)) if vol > 2 else 0
    t1 = math.ceil(2 / phi**2 * math.log(c[0] * (ell + 2) * math.sqrt(vol / 2)))
    t_last = (ell + 1) * t1
    return ell, t1, t_last, c[1] * (ell + 2) * t_last, c[2] * (ell + 2) * t_last * 2**b


def test_derive_params_barbell_paper():
    params = derive_params(barbell(3).graph, 0.2, 1, paper_constants())
    assert (params.ell, params.t1, params.t_last) == (3, 395, 1580)
    assert params.f1 == Fraction(1, 2_212_000)
    assert params.eps == Fraction(1, 28_440_000)
    ell, t1, t_last, inv_f1, inv_eps = independent_params(14, 0.2, 1, paper_constants().as_tuple())
    assert (ell, t1, t_last) == (3, 395, 1580)
    assert 1 / params.f1 == inv_f1 and 1 / params.eps == inv_eps


@pytest.mark.parametrize("vol", [3, 5, 7, 14, 16, 17, 100, 1023, 1024, 1025])
@pytest.mark.parametrize("phi", [0.05, 0.2, 0.5])
def test_walk_length_matches_formula(vol, phi):
    for profile in (paper_constants(), practical_constants()):
        expected = independent_params(vol, phi, 0, profile.as_tuple())[:3]
        assert walk_length(as_fraction(phi), vol, profile) == expected


def test_volume_two_gives_ell_zero():
    params = derive_params(k2(), 0.5, 1)
    assert params.ell == 0
    assert params.t_last == params.t1


def test_derive_params_errors():
    g = barbell(3).graph
    for phi in (0, 1, 1.5, -0.1):
        with pytest.raises(ValueError):
            derive_params(g, phi, 1)
    with pytest.raises(ValueError):
        derive_params(g, 0.2, -1)
    with pytest.raises(ValueError):
        derive_params(induce_subgraph(k2(), [0]), 0.2, 1)


def test_params_relations():
    params = derive_params(ring_of_cliques(4, 4).graph, Fraction(1, 7), 3, practical_constants())
    c = params.profile
    assert params.t_last == (params.ell + 1) * params.t1
    assert params.f1 == Fraction(1, c.c2 * (params.ell + 2) * params.t_last)
    assert params.eps == Fraction(1, c.c3 * (params.ell + 2) * params.t_last * 8)
    assert params.c4_threshold == Fraction(1, c.c4 * (params.ell + 2) * 8)
    assert params.t_h(0) == 0 and params.t_h(params.ell + 1) == params.t_last
    with pytest.raises(ValueError):
        params.t_h(params.ell + 2)


@pytest.mark.parametrize("profile", [paper_constants(), practical_constants()])
def test_f1_scales_like_phi_squared_over_log_cubed(profile):
    for phi in (Fraction(1, 2), Fraction(1, 10), Fraction(1, 100)):
        for k in range(1, 61):
            ell, _, t_last = walk_length(phi, 2**k, profile)
            f1 = Fraction(1, profile.c2 * (ell + 2) * t_last)
            assert float(f1) >= 1e-4 * float(phi) ** 2 / k**3


def test_nibble_barbell_practical():
    g = barbell(3).graph
    cut = nibble(g, 0, 0.2, 1, practical_constants())
    assert cut is not None
    assert cut.members.members == (0, 1, 2)
    assert cut.conductance == Fraction(1, 7)
    assert 6 * cut.volume <= 5 * 14
    assert cut.start_vertex == 0 and cut.b == 1


def test_nibble_barbell_paper_profile():
    # The stopping rule already holds after one step, so even the default
    # constants find the bridge cut on this graph.
    cut = nibble(barbell(3).graph, 0, 0.2, 1, paper_constants())
    assert cut is not None
    assert cut.members.members == (0, 1, 2) and cut.found_at_step == 1


def test_nibble_empty_on_expander():
    run = run_nibble(complete(8), 0, 0.1, 1, practical_constants())
    assert run.cut is None
    assert run.settled_at is not None and run.settled_at < run.params.t_last


def full_length_scan(g, v, phi, b, profile):
    """Every step of the walk scanned, with no early stop."""
    params = derive_params(g, phi, b, profile)
    hits = []

    def observe(t, q, r):
        hit = scan_conditions(g, sweep(g, q), params, step=t)
        if hit is not None:
            hits.append(hit[1])
            return True

    evolve_truncated(g, v, params.eps_float, params.t_last, observe)
    return hits[0] if hits else None


@pytest.mark.parametrize("name", ["path6", "rand10_loops", "barbell4", "ring3x3"])
def test_settled_walk_matches_full_length_run(name):
    g = small_corpus()[name]
    for phi in (Fraction(1, 10), Fraction(1, 3)):
        run = run_nibble(g, 0, phi, 1, practical_constants())
        reference = full_length_scan(g, 0, phi, 1, practical_constants())
        if reference is None:
            assert run.cut is None
        else:
            assert run.cut.members == reference.members
            assert run.cut.found_at_step == reference.found_at_step


def test_nibble_inactive_vertex():
    view = induce_subgraph(barbell(3).graph, [0, 1, 2])
    with pytest.raises(ValueError):
        nibble(view, 4, 0.2, 1)


def test_nibble_on_view_stays_inside():
    g = ring_of_cliques(4, 4).graph
    view = induce_subgraph(g, range(12))
    cut = nibble(view, 5, 0.3, 2, practical_constants())
    assert cut is not None
    assert set(cut.members.members) <= set(range(12))
    assert cut.conductance == conductance(view, cut.members)
    assert cut.conductance <= Fraction(3, 10)


@pytest.mark.parametrize("name", list(small_corpus()))
def test_nibble_outputs_obey_guarantee(name):
    g = small_corpus()[name]
    top = max(1, ceil_log2(g.total_volume))
    for v in range(0, g.vertex_count, max(1, g.vertex_count // 4)):
        for phi in (Fraction(1, 10), Fraction(1, 4), Fraction(1, 2)):
            for b in (1, top):
                run = run_nibble(g, v, phi, b, practical_constants())
                if run.cut is not None:
                    assert run.cut.conductance <= phi
                    assert 6 * run.cut.volume <= 5 * g.total_volume
                    assert run.cut.conductance == conductance(g, run.cut.members)
                assert run.stats.work_units <= run.params.t_last * run.params.work_cap
                assert all(vol <= run.params.work_cap for vol in run.stats.support_volumes)


def test_nibble_deterministic():
    g = planted_cut(200, 0.1, 0.005, 3).graph
    a = run_nibble(g, 7, 0.1, 3, practical_constants())
    b = run_nibble(g, 7, 0.1, 3, practical_constants())
    assert a.cut == b.cut
    assert a.stats.support_volumes == b.stats.support_volumes


def test_check_nibble_output_catches_violations():
    g = barbell(3).graph
    everything_but_one = VertexSet.of(g, range(5))
    report = CutReport.for_set(g, everything_but_one, "nibble")
    with pytest.raises(GuaranteeViolation):
        check_nibble_output(g, report, Fraction(9, 10))
    side = CutReport.for_set(g, VertexSet.of(g, [0, 1, 2]), "nibble")
    check_nibble_output(g, side, Fraction(1, 7))
    with pytest.raises(GuaranteeViolation):
        check_nibble_output(g, side, Fraction(1, 8))


def test_b_zero_accepted():
    g = barbell(3).graph
    params = derive_params(g, 0.2, 0, practical_constants())
    assert params.c4_threshold == Fraction(1, 52 * 5)
    cut = nibble(g, 0, 0.2, 0, practical_constants())
    assert cut is None or cut.conductance <= Fraction(1, 5)


def test_work_units_recorded_on_report():
    g = barbell(8).graph
    run = run_nibble(g, 0, 0.2, 2, practical_constants())
    assert run.cut is not None
    assert run.cut.work_units == run.stats.work_units > 0
    assert np.sum(run.stats.support_volumes) == run.stats.work_units
