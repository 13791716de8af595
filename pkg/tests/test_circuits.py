from itertools import product as cartesian

import numpy as np
import pytest

from cliq2lab.circuits import (
    AND,
    NOT,
    NVAR,
    OR,
    TRUE,
    VAR,
    CircuitError,
    RailConflict,
    RailAssignment,
    circuit_size,
    cliq2_rail_circuit,
    demorgan_convert,
    dmn_of_rail_circuit,
    eval_circuit,
    eval_columns,
    graph_of_rail,
    graph_of_tri,
    parse_circuit,
    rail_columns,
    rail_of_tri,
    truth_table,
)
from cliq2lab.doubletests import in_cliq2
from cliq2lab.formulas import nvar, var
from cliq2lab.graphs import DoubleGraph, graph
from cliq2lab.randomgen import random_circuit
from cliq2lab.semantics import UNDEF, Cliq2, assignments, equiv_approx, tri_graph

U = UNDEF


def naive_value(c, beta):
    def go(gid):
        g = c.gates[gid]
        if g.kind == VAR:
            return bool(beta[g.name])
        if g.kind == NVAR:
            return not beta[g.name]
        if g.kind == NOT:
            return not go(g.children[0])
        if g.kind == AND:
            return go(g.children[0]) and go(g.children[1])
        if g.kind == OR:
            return go(g.children[0]) or go(g.children[1])
        return g.kind == TRUE

    return int(go(c.root))


def all_points(c):
    names = c.variables()
    for bits in cartesian((0, 1), repeat=len(names)):
        yield dict(zip(names, bits))


EXAMPLE = "g1 = VAR v1\ng2 = VAR v2\ng3 = NOT g2\ng4 = OR g1 g3\ng5 = NOT g4\nroot g5\n"


def test_parse_and_evaluate():
    c = parse_circuit("g1=VAR v1; g2=NOT g1; root g2")
    assert eval_circuit(c, {"v1": 1}) == 0
    assert eval_circuit(c, {"v1": 0}) == 1
    t = parse_circuit("g1 = TRUE; root g1")
    assert eval_circuit(t, {}) == 1


@pytest.mark.parametrize("bad", [
    "g1 = AND g2 g3 g4; root g1",
    "g1 = VAR v1",
    "g1 = OR g1 g1; root g1",
    "g1 = NOT g9; root g1",
    "g1 = XOR g1 g1; root g1",
])
def test_parse_errors(bad):
    with pytest.raises(CircuitError):
        parse_circuit(bad)


def test_cycles_are_rejected():
    with pytest.raises(CircuitError):
        parse_circuit("g1 = VAR v1; g2 = AND g1 g3; g3 = OR g2 g1; root g3")


def test_double_negation_is_folded_with_a_warning():
    with pytest.warns(UserWarning, match="double negation"):
        c = parse_circuit("g1 = VAR v1; g2 = NOT g1; g3 = NOT g2; root g3")
    assert circuit_size(c) == 1
    assert eval_circuit(c, {"v1": 1}) == 1


def test_sizes():
    assert circuit_size(parse_circuit("g1 = VAR v1; root g1")) == 1
    assert circuit_size(parse_circuit(EXAMPLE)) == 5


def test_conversion_of_the_worked_example():
    c = parse_circuit(EXAMPLE)
    star = demorgan_convert(c)
    assert not star.has_negation()
    assert circuit_size(star) == 3
    kinds = sorted(g.kind for g in star.gates.values())
    assert kinds == sorted([NVAR, VAR, AND])
    for beta in all_points(c):
        assert eval_circuit(star, beta) == eval_circuit(c, beta) == int(not beta["v1"] and beta["v2"])


def test_negation_free_circuit_is_unchanged():
    c = parse_circuit("g1 = VAR v1; g2 = VAR v2; g3 = AND g1 g2; g4 = OR g3 g1; root g4")
    star = demorgan_convert(c)
    assert circuit_size(star) == circuit_size(c)
    assert sorted(g.kind for g in star.gates.values()) == sorted(g.kind for g in c.gates.values())


def test_shared_gate_in_both_polarities_gets_a_twin():
    c = parse_circuit("g1 = VAR v1; g2 = VAR v2; g3 = AND g1 g2; g4 = NOT g3; g5 = OR g3 g4; root g5")
    star = demorgan_convert(c)
    assert circuit_size(c) < circuit_size(star) < 2 * circuit_size(c)
    for beta in all_points(c):
        assert eval_circuit(star, beta) == eval_circuit(c, beta) == 1


def test_negated_root():
    c = parse_circuit("g1 = VAR v1; g2 = VAR v2; g3 = AND g1 g2; g4 = NOT g3; root g4")
    star = demorgan_convert(c)
    for beta in all_points(c):
        assert eval_circuit(star, beta) == 1 - (beta["v1"] & beta["v2"])


@pytest.mark.parametrize("seed", range(200))
def test_random_conversions(seed):
    c = random_circuit(seed)
    star = demorgan_convert(c)
    assert not star.has_negation()
    assert circuit_size(star) <= 2 * circuit_size(c)
    names = c.variables()
    table = truth_table(c, names)
    assert np.array_equal(truth_table(star, names), table)
    for beta, v in zip(all_points(c), table):
        assert naive_value(c, beta) == v


def test_vectorised_evaluation_matches_scalar():
    c = random_circuit(11)
    names = c.variables()
    rows = np.array(list(cartesian((0, 1), repeat=len(names))), dtype=bool)
    cols = {n: rows[:, i] for i, n in enumerate(names)}
    got = eval_columns(c, cols)
    for r, v in zip(rows, got):
        assert v == eval_circuit(c, dict(zip(names, map(int, r))))


def test_rails():
    beta = rail_of_tri((U,) * 6)
    assert beta.x == beta.y == (0,) * 6
    assert graph_of_rail(beta, 4) == DoubleGraph(frozenset(), frozenset())
    d = graph_of_tri((1, 0, U, U, U, U), 4)
    assert d == DoubleGraph(graph([(1, 2)]), graph([(1, 3)]))
    clash = RailAssignment((0, 0, 1, 0, 0, 0), (0, 0, 1, 0, 0, 0))
    with pytest.raises(RailConflict):
        graph_of_rail(clash, 4)


def test_rail_graph_agrees_with_tri_graph():
    rows = assignments(0, 3**6, 6)
    for r in rows[::7]:
        theta = tuple(int(v) for v in r)
        assert graph_of_tri(theta, 4) == tri_graph(theta, 4)
    cols = rail_columns(rows)
    assert not np.any(cols["x3"] & cols["y3"])


def test_rail_circuits_to_formulas():
    assert dmn_of_rail_circuit(parse_circuit("g1 = VAR x5; root g1"), 4) is var(5)
    assert dmn_of_rail_circuit(parse_circuit("g1 = VAR y2; g2 = NOT g1; root g2"), 4) is var(2)
    assert dmn_of_rail_circuit(parse_circuit("g1 = VAR y2; root g1"), 4) is nvar(2)


def test_rail_circuit_for_cliq2():
    c = cliq2_rail_circuit(5, 3)
    rows = assignments(0, 3**10, 10)
    out = eval_columns(c, rail_columns(rows))
    sample = rows[::211]
    for r, v in zip(sample, out[::211]):
        assert bool(v) == in_cliq2(tri_graph(r, 5), 3)
    psi = dmn_of_rail_circuit(c, 5)
    assert equiv_approx(psi, Cliq2(3), 5).holds
