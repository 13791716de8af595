"""
Approximating the positive test formula
=======================================

F(POS2) is the disjunction of all 30 positive tests at m = 5.  It decides
CLIQ2 on every partial assignment, accepts exactly the positive tests and
no negative pair, so the two-case experiment applies to it.
"""

from cliq2lab.approx import ac_neg, product
from cliq2lab.doubletests import ColoringPair, enum_pos2
from cliq2lab.formulas import (
    approx_set,
    big_or,
    cs,
    deviation_chain_violations,
    land,
    nvar,
    sem_set,
    theorem13_dichotomy,
    var,
)
from cliq2lab.graphs import DoubleGraph
from cliq2lab.params import Params
from cliq2lab.semantics import formula_of, lemma20_check

params = Params(m=5, k=3, ell=3, p=4, L=162)
phi = formula_of(frozenset(enum_pos2(5, 3)), 5)
print("circuit size of F(POS2):", cs(phi))

rep = lemma20_check(phi, params)
print("decides CLIQ2:", rep.premise.holds, " accepts POS2:", rep.ac_pos_ok, " no negatives:", rep.ac_neg_empty)

for line in theorem13_dichotomy(phi, params).lines():
    print("  ", line)

# With a small threshold L the approximator plucks, and the negative-side
# chain at a conjunction breaks: the constant coloring pair is accepted by
# the approximation but is in none of the sets that should cover it.
small = Params(m=5, k=3, ell=3, p=3, L=8)
sigma = big_or([var(i) for i in range(1, 11)])
tau = big_or([nvar(i) for i in range(1, 6)])
conj = land(sigma, tau)
pair = ColoringPair((1,) * 5, (1,) * 5)

print()
print("plucked sigma holds <+[] -[]>:", DoubleGraph(frozenset(), frozenset()) in approx_set(sigma, small))
print("pair accepted by S(conj):", pair in ac_neg(sem_set(conj, 5), small))
print("pair accepted by AP(conj):", pair in ac_neg(approx_set(conj, small), small))
print("pair accepted by AP(sigma) x AP(tau):",
      pair in ac_neg(product(approx_set(sigma, small), approx_set(tau, small)), small))
for v in deviation_chain_violations(conj, small):
    print(f"chain item {v.item} fails at the root with {len(v.stray)} stray pairs")
