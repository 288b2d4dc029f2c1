"""Exhaustive-search equivalence oracle.

The oracle is only practical on tiny frames, so every scenario here is
hand-sized and the expected outcomes (including exact shortest-path move
counts) were frozen after independent runs.
"""

import pytest

import dpi2 as d

from conftest import grid


def ring_island():
    # degree-0 island: centre e1, uniform e2 ring (10 content cells)
    return grid(
        """
        . . . . .
        . 2 2 2 .
        . 2 1 2 .
        . 2 2 2 .
        . . . . .
        """
    )


def test_budget_validation(T):
    with pytest.raises(ValueError):
        d.SearchBudget(max_states=0)
    with pytest.raises(ValueError):
        d.SearchBudget(pad_limit=(4, 0))
    # pad_limit smaller than the inputs themselves is rejected at call time
    small = d.SearchBudget(pad_limit=(4, 4))
    g = d.constant_map(T.rect, d.S2, d.BASEPOINT)
    with pytest.raises(ValueError):
        d.homotopy_decide(T, g, small)  # T occupies 5x5 points


def test_mismatched_inputs_rejected(T):
    g = d.constant_map(T.rect, d.make_sphere(1), 1)
    with pytest.raises(ValueError):
        d.homotopy_decide(T, g)
    h = d.border_wrap(T, 1)  # different basepoint
    h2 = d.constant_map(h.rect, d.S2, d.BASEPOINT)
    with pytest.raises(ValueError):
        d.homotopy_decide(h, h2)


def test_map_is_equivalent_to_itself(T):
    res = d.homotopy_decide(T, T, d.SearchBudget(pad_limit=(5, 5), max_states=10))
    assert isinstance(res, d.Equivalent)
    assert res.certificate.moves == ()
    assert d.verify_certificate(res.certificate).ok


def test_one_move_apart():
    f = d.gen_random(3, 3, 3, moves=5)
    mv = None
    for cand in (
        d.SpiderMove((a, b), v)
        for a in (1, 2)
        for b in (1, 2)
        for v in range(6)
    ):
        if d.spider_valid(f, cand) and f.value_at(*cand.at) != cand.new_value:
            mv = cand
            break
    assert mv is not None
    g = d.apply_spider(f, mv)
    res = d.homotopy_decide(f, g, d.SearchBudget(pad_limit=(6, 6)))
    assert isinstance(res, d.Equivalent)
    assert len(res.certificate.moves) == 1
    assert d.verify_certificate(res.certificate).ok


def test_unequal_degree_exhausts_component(T):
    # Within its own frame T's spider component is finite and never meets
    # the constant map, so the search proves exhaustion rather than timing out.
    g = d.constant_map(T.rect, d.S2, d.BASEPOINT)
    res = d.homotopy_decide(T, g, d.SearchBudget(pad_limit=(5, 5), max_states=50_000))
    assert isinstance(res, d.Unknown)
    assert "component exhausted" in res.reason
    assert 0 < res.states_explored < 50_000


def test_state_cap_reported():
    f = d.gen_random(9, 4, 4, moves=30)
    g = d.constant_map(f.rect, d.S2, d.BASEPOINT)
    res = d.homotopy_decide(f, g, d.SearchBudget(pad_limit=(7, 7), max_states=200))
    assert isinstance(res, d.Unknown)
    assert "state" in res.reason and res.states_explored >= 200


def test_degree_zero_island_reaches_constant():
    f = ring_island()
    g = d.constant_map(f.rect, d.S2, d.BASEPOINT)
    res = d.homotopy_decide(f, g, d.SearchBudget(pad_limit=(5, 5), max_states=400_000))
    assert isinstance(res, d.Equivalent)
    # every one of the 10 content cells must change at least once, and a
    # 10-move schedule exists; breadth-first search returns that optimum
    assert len(res.certificate.moves) == 10
    v = d.verify_certificate(res.certificate)
    assert v.ok
    assert res.certificate.end.is_constant()


def test_equivalence_implies_equal_degree():
    found = 0
    for seed in range(12):
        f = d.gen_random(seed, 3, 3, moves=6)
        g = d.gen_random(seed, 3, 3, moves=8)  # same stream, two extra moves
        res = d.homotopy_decide(f, g, d.SearchBudget(pad_limit=(6, 6), max_states=60_000))
        if isinstance(res, d.Equivalent):
            found += 1
            assert d.triangle_count(f) == d.triangle_count(g)
            assert d.verify_certificate(res.certificate).ok
            # endpoints live on the (possibly padded) common frame
            cr = res.certificate.common_rect
            assert res.certificate.end.values == d.trivial_extend(g, cr.m, cr.n).values
    assert found >= 6


def test_oracle_is_deterministic():
    f = d.gen_random(21, 3, 3, moves=7)
    g = d.gen_random(21, 3, 3, moves=9)
    budget = d.SearchBudget(pad_limit=(6, 6), max_states=60_000)
    r1 = d.homotopy_decide(f, g, budget)
    r2 = d.homotopy_decide(f, g, budget)
    assert type(r1) is type(r2)
    if isinstance(r1, d.Equivalent):
        assert d.dump_certificate(r1.certificate) == d.dump_certificate(r2.certificate)
    else:
        assert (r1.states_explored, r1.reason) == (r2.states_explored, r2.reason)


def test_default_budget_applies(T):
    res = d.homotopy_decide(T, T)
    assert isinstance(res, d.Equivalent)


def test_shortest_path_through_padding(zero_map):
    # The two nonzero humps cancel only after the map is rewritten in place;
    # searched at its native frame this needs millions of states, so this is
    # the one deliberately slow test in the suite.
    g = d.constant_map(zero_map.rect, d.S2, d.BASEPOINT)
    res = d.homotopy_decide(
        zero_map, g, d.SearchBudget(pad_limit=(6, 5), max_states=4_500_000)
    )
    assert isinstance(res, d.Equivalent)
    assert len(res.certificate.moves) == 14
    assert d.verify_certificate(res.certificate).ok
