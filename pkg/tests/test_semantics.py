from itertools import product as cartesian

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cliq2lab.doubletests import enum_pos2, in_cliq2
from cliq2lab.formulas import bot, land, lor, nvar, parse_formula, sem_set, top, var
from cliq2lab.graphs import DoubleGraph, graph
from cliq2lab.params import Caps, Params
from cliq2lab.randomgen import random_family, random_formula
from cliq2lab.semantics import (
    UNDEF,
    Cliq2,
    assignments,
    base,
    char_assignment,
    cliq2_batch,
    equiv_approx,
    equiv_sim,
    eval_batch,
    eval_formula,
    eval_setrep,
    formula_of,
    lemma19_check,
    lemma20_check,
    sweep,
    tri_graph,
    value_agreement_check,
)

U = UNDEF
P5 = Params(m=5, k=3, ell=3, p=4, L=162)

# value tables written out cell by cell, rows and columns in the order 0, 1, U
AND_TABLE = {(0, 0): 0, (0, 1): 0, (0, U): 0, (1, 0): 0, (1, 1): 1, (1, U): U,
             (U, 0): 0, (U, 1): U, (U, U): U}
OR_EXACT = {(0, 0): 0, (0, 1): 1, (0, U): 0, (1, 0): 1, (1, 1): 1, (1, U): 1,
            (U, 0): 0, (U, 1): 1, (U, U): U}
OR_KLEENE = {(0, 0): 0, (0, 1): 1, (0, U): U, (1, 0): 1, (1, 1): 1, (1, U): 1,
             (U, 0): U, (U, 1): 1, (U, U): U}


def dg(pos=(), neg=()):
    return DoubleGraph(graph(pos), graph(neg))


def spine(phi):
    if phi.op == "and":
        return spine(phi.a) + spine(phi.b)
    return [phi]


def naive_eval(phi, theta, mode):
    if phi.op == "T":
        return 1
    if phi.op == "F":
        return 0
    if phi.op == "pos":
        return theta[phi.index - 1]
    if phi.op == "neg":
        return {0: 1, 1: 0, U: U}[theta[phi.index - 1]]
    if phi.op == "or":
        table = OR_EXACT if mode == "exact" else OR_KLEENE
        return table[naive_eval(phi.a, theta, mode), naive_eval(phi.b, theta, mode)]
    lits = {(t.op, t.index) for t in spine(phi) if t.is_literal}
    if any(("neg", i) in lits for o, i in lits if o == "pos"):
        return 0
    return AND_TABLE[naive_eval(phi.a, theta, mode), naive_eval(phi.b, theta, mode)]


def test_three_valued_examples():
    assert eval_formula(lor(var(1), var(2)), (U, 0)) == 0
    assert eval_formula(lor(var(1), var(2)), (U, 0), "kleene") == U
    assert eval_formula(land(var(1), var(2)), (U, 1)) == U
    for v in (0, 1, U):
        assert eval_formula(land(var(1), nvar(1)), (v,)) == 0
    assert eval_formula(top(), ()) == 1 and eval_formula(bot(), ()) == 0


def test_unknown_mode_is_rejected():
    with pytest.raises(ValueError):
        eval_formula(var(1), (1,), "lukasiewicz")


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(["exact", "kleene"]))
def test_evaluation_matches_naive_tables(seed, mode):
    phi = random_formula(seed, 4)
    rows = assignments(0, 81, 4)
    got = eval_batch(phi, rows, mode)
    for r, v in zip(rows, got):
        theta = tuple(int(x) for x in r)
        assert v == naive_eval(phi, theta, mode) == eval_formula(phi, theta, mode)


def test_assignment_enumeration_order():
    rows = assignments(0, 9, 2)
    assert [tuple(r) for r in rows] == list(cartesian((0, 1, U), repeat=2))


def test_formula_of_families():
    assert formula_of(dg([(1, 2)], [(1, 3)]), 4) is land(var(1), nvar(2))
    assert formula_of(frozenset(), 4) is bot()
    assert formula_of(dg(), 4) is top()
    assert eval_setrep(frozenset(), (1,) * 6, 4) == 0


def test_family_evaluation():
    assert eval_setrep({dg([(1, 2)])}, (1, U, U, U, U, U), 4) == 1


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_family_value_is_value_of_its_formula(seed):
    fam = random_family(seed, 4)
    phi = formula_of(fam, 4)
    rng = np.random.default_rng(seed)
    for _ in range(20):
        theta = tuple(int(x) for x in rng.integers(0, 3, 6))
        assert eval_setrep(fam, theta, 4) == eval_formula(phi, theta)


def test_clash_dropping_changes_values_but_not_the_one_set():
    # S(v1 & (v2 | ~v1)) keeps only +[(1,2)(1,3)]; the clashing member is dropped
    phi = parse_formula("(v1 & (v2 | ~v1))")
    assert sem_set(phi, 4) == {dg([(1, 2), (1, 3)])}
    theta = (1, U, 0, 0, 0, 0)
    assert eval_formula(phi, theta) == 0
    assert eval_setrep(sem_set(phi, 4), theta, 4) == U
    theta = (U, 0, 0, 0, 0, 0)
    assert eval_formula(phi, theta, "kleene") == U
    assert eval_setrep(sem_set(phi, 4), theta, 4, "kleene") == 0
    for mode in ("exact", "kleene"):
        assert not value_agreement_check(phi, 4, mode=mode).holds
        assert value_agreement_check(phi, 4, mode=mode, fiber=True).holds


@pytest.mark.parametrize("seed", range(25))
def test_one_sets_agree_with_set_semantics(seed):
    phi = random_formula(seed, 6)
    assert value_agreement_check(phi, 4, fiber=True).holds


def test_equivalences():
    a, b = lor(var(1), var(2)), lor(var(2), var(1))
    assert equiv_sim(a, b, 4).holds and equiv_approx(a, b, 4).holds
    v = equiv_sim(var(1), var(2), 4)
    assert not v.holds and v.exhaustive
    assert v.counterexample == (0, 1, 0, 0, 0, 0)


def test_formula_and_its_sets_are_equivalent():
    for seed in range(20):
        phi = random_formula(seed, 6)
        assert equiv_sim(phi, formula_of(sem_set(phi, 4), 4), 4).holds
        fam = random_family(seed, 4)
        assert equiv_approx(fam, sem_set(formula_of(fam, 4), 4), 4).holds


def test_sampled_sweeps_are_deterministic():
    caps = Caps(assignments=10)
    runs = [equiv_sim(var(1), var(2), 4, caps=caps, seed=3, samples=5000, workers=w) for w in (1, 4)]
    assert not runs[0].exhaustive
    assert runs[0].counterexample == runs[1].counterexample


def test_sweep_reports_least_counterexample_for_any_worker_count():
    def bad(rows):
        return rows.sum(axis=1) == 7

    a = sweep(6, bad, workers=1, block=37)
    b = sweep(6, bad, workers=3, block=37)
    assert a.counterexample == b.counterexample == (0, 0, 1, 2, 2, 2)


def test_characteristic_assignment_round_trip():
    d = dg([(1, 2)], [(1, 3)])
    theta = char_assignment(d, 4)
    assert theta == (1, 0, U, U, U, U)
    assert tri_graph(theta, 4) == d


def test_cliq2_oracle_matches_in_cliq2():
    rows = np.random.default_rng(0).integers(0, 3, size=(400, 10), dtype=np.uint8)
    fast = cliq2_batch(rows, 5, 3)
    for r, v in zip(rows, fast):
        assert v == in_cliq2(tri_graph(r, 5), 3)


def test_base_examples():
    x = {dg([(1, 2)]), dg([(1, 2), (1, 3)])}
    assert base(x) == {dg([(1, 2)])}
    pos2 = frozenset(enum_pos2(5, 3))
    assert base(pos2) == pos2


def test_absorbed_members_do_not_change_the_base():
    x = frozenset({dg([(1, 2)], [(3, 4)]), dg([(2, 3)])})
    y = x | {dg([(1, 2), (1, 5)], [(3, 4)])}
    assert equiv_approx(x, y, 5).holds
    assert base(x) == base(y)


@pytest.mark.parametrize("seed", range(15))
def test_family_and_base_are_equivalent_in_kleene_mode(seed):
    x, y = random_family((seed, 1), 4), random_family((seed, 2), 4)
    rep = lemma19_check(x, y, 4, mode="kleene")
    assert rep.holds


def test_base_equivalence_fails_in_exact_mode_for_absorbed_members():
    # +[(1,2)] absorbs +[(1,2)] -[(1,3)]; at theta = (?,1,..) the second member
    # turns the disjunction from ? into 0 under the exact table
    x = {dg([(1, 2)]), dg([(1, 2)], [(1, 3)])}
    rep = lemma19_check(x, x, 4)
    assert not rep.item1 and rep.item2
    assert eval_setrep(x, (U, 1, U, U, U, U), 4) == 0
    assert eval_setrep(base(x), (U, 1, U, U, U, U), 4) == U


def test_positive_test_formula_characterises_cliq2():
    phi = formula_of(frozenset(enum_pos2(5, 3)), 5)
    rep = lemma20_check(phi, P5)
    assert rep.premise.holds and rep.premise.exhaustive
    assert rep.ac_pos_ok and rep.ac_neg_empty and rep.holds


def test_dropping_a_positive_test_breaks_the_premise():
    pos2 = enum_pos2(5, 3)
    removed = pos2[0]
    phi = formula_of(frozenset(pos2[1:]), 5)
    rep = lemma20_check(phi, P5)
    assert not rep.premise.holds
    assert rep.missing_positive == removed
    # the least witness is an assignment where CLIQ2 holds but phi does not
    theta = rep.premise.counterexample
    assert in_cliq2(tri_graph(theta, 5), 3)
    assert eval_formula(phi, theta) != 1


def test_top_accepts_negative_pairs():
    rep = lemma20_check(top(), P5)
    assert not rep.ac_neg_empty and rep.accepted_negative is not None


def test_cliq2_has_no_full_value_table():
    with pytest.raises(ValueError):
        equiv_sim(var(1), Cliq2(3), 5)
