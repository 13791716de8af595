from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from cliq2lab.graphs import DoubleGraph, graph
from cliq2lab.params import Params, sunflower_threshold
from cliq2lab.randomgen import random_large_family, random_set_system
from cliq2lab.sunflower import (
    Sunflower,
    distinct_vertex_sets,
    find_sunflower,
    pluck,
    pluck_step_bound,
    vertex_set_norm,
)


def dg(pos=(), neg=()):
    return DoubleGraph(graph(pos), graph(neg))


def is_sunflower(petals, core, p):
    petals = list(petals)
    if len(petals) != p or len(set(petals)) != p:
        return False
    return all(a & b == core for a, b in combinations(petals, 2))


def test_distinct_vertex_sets():
    fam = [dg([(1, 2)]), dg([(1, 2), (1, 3)])]
    assert distinct_vertex_sets(fam, "+") == {frozenset({1, 2}), frozenset({1, 2, 3})}
    assert distinct_vertex_sets(fam, "-") == {frozenset()}
    assert vertex_set_norm(fam) == 2


def test_disjoint_petals():
    sf = find_sunflower([{1, 2}, {3, 4}, {5, 6}], 3)
    assert set(sf.petals) == {frozenset({1, 2}), frozenset({3, 4}), frozenset({5, 6})}
    assert sf.core == frozenset()


def test_common_core():
    sf = find_sunflower([{1, 2}, {1, 3}, {1, 4}], 3)
    assert sf.core == {1}


def test_no_sunflower_in_a_triangle_of_pairs():
    # {1,2},{1,3},{2,3}: every two meet in a different point
    assert find_sunflower([{1, 2}, {1, 3}, {2, 3}], 3) is None


def test_sunflower_invariants_are_enforced():
    with pytest.raises(ValueError):
        Sunflower((frozenset({1, 2}), frozenset({1, 3}), frozenset({2, 3})), frozenset())


def test_oversized_sets_are_rejected():
    with pytest.raises(ValueError):
        find_sunflower([{1, 2, 3}], 2, ell=2)


@pytest.mark.parametrize("ell, p", [(2, 3), (3, 3)])
def test_always_found_above_threshold(ell, p):
    size = sunflower_threshold(p, ell) + 1
    for seed in range(100):
        sets = random_set_system(seed, size, ell, universe=2 * size)
        sf = find_sunflower(sets, p, ell, exhaustive=False)
        assert sf is not None
        assert is_sunflower(sf.petals, sf.core, p)
        assert set(sf.petals) <= set(sets)


@settings(max_examples=150)
@given(st.lists(st.frozensets(st.integers(1, 6), min_size=1, max_size=3), min_size=1, max_size=12),
       st.integers(2, 4))
def test_exhaustive_search_matches_brute_force(sets, p):
    uniq = sorted(set(sets), key=lambda s: (len(s), sorted(s)))
    brute = any(
        is_sunflower(c, c[0] & c[1], p) for c in combinations(uniq, p)
    )
    sf = find_sunflower(uniq, p)
    assert (sf is not None) == brute
    if sf is not None:
        assert is_sunflower(sf.petals, sf.core, p)


def test_single_pluck_step():
    fam = {dg([(1, 2)]), dg([(1, 3)]), dg([(1, 4)])}
    params = Params(m=4, k=3, ell=2, p=3, L=2)
    out, trace = pluck(fam, params)
    assert out == {dg()}
    assert len(trace) == 1
    step = trace.steps[0]
    assert step.side == "+" and step.sunflower.core == {1}
    assert (step.count_before, step.count_after) == (3, 1)


def test_small_family_is_untouched():
    fam = {dg([(1, 2)], [(3, 4)]), dg([(2, 3)])}
    out, trace = pluck(fam, Params(m=5, k=3))
    assert out == fam and len(trace) == 0


def test_clashing_copies_are_dropped():
    # plucking the positive side to the core {1,2} would clash with -(1,2)
    fam = {dg([(1, 2), (1, 3)], []), dg([(1, 2), (2, 4)], []), dg([(1, 5), (2, 5)], [(1, 2)])}
    params = Params(m=5, k=3, ell=3, p=3, L=2)
    out, trace = pluck(fam, params)
    assert trace.steps[0].dropped == [dg([(1, 5), (2, 5)], [(1, 2)])]
    assert out == {dg([(1, 2)])}


def test_step_bound_value():
    assert pluck_step_bound(10, 4) == Fraction(20, 3)


@pytest.mark.parametrize("seed", range(10))
def test_random_plucks_stay_within_step_bound(seed):
    params = Params(m=12, k=3, ell=3, p=4, L=162)
    fam = random_large_family(seed, 12, 3, 600)
    out, trace = pluck(fam, params)
    assert len(trace) <= pluck_step_bound(vertex_set_norm(fam), params.p)
    assert vertex_set_norm(out) <= params.L
    for step in trace.steps:
        assert step.count_before - step.count_after == params.p - 1
