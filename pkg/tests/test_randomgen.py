import pytest

from cliq2lab.circuits import circuit_size
from cliq2lab.formulas import cs
from cliq2lab.graphs import in_d_ell
from cliq2lab.randomgen import (
    CIRCUIT_MAX_GATES,
    CIRCUIT_MAX_VARS,
    FORMULA_MAX_NODES,
    random_circuit,
    random_family,
    random_formula,
    random_large_family,
    random_set_system,
)


def tree_nodes(phi):
    if phi.is_literal:
        return 1
    return 1 + tree_nodes(phi.a) + tree_nodes(phi.b)


def test_generators_are_reproducible():
    assert random_family(5, 5) == random_family(5, 5)
    assert random_formula(5, 10) is random_formula(5, 10)
    a, b = random_circuit(5), random_circuit(5)
    assert a.gates == b.gates and a.root == b.root
    assert random_set_system(5, 10, 3, 9) == random_set_system(5, 10, 3, 9)


@pytest.mark.parametrize("seed", range(50))
def test_shapes_stay_within_limits(seed):
    phi = random_formula(seed, 10)
    assert tree_nodes(phi) <= FORMULA_MAX_NODES
    assert cs(phi) <= FORMULA_MAX_NODES
    c = random_circuit(seed)
    assert circuit_size(c) <= CIRCUIT_MAX_GATES
    assert len(c.variables()) <= CIRCUIT_MAX_VARS
    assert all(in_d_ell(d, 3) for d in random_family(seed, 6))


def test_large_family_reaches_requested_size():
    fam = random_large_family(1, 8, 3, 200)
    assert len(fam) == 200
    assert all(in_d_ell(d, 3) and not d.pos & d.neg for d in fam)


def test_set_systems_are_distinct_and_bounded():
    sets = random_set_system(2, 30, 3, 12)
    assert len(set(sets)) == 30
    assert all(1 <= len(s) <= 3 and s <= set(range(1, 13)) for s in sets)
