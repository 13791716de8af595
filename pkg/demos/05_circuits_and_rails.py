"""
Pushing negations down and reading circuits on two rails
=========================================================
"""

from cliq2lab.circuits import (
    circuit_size,
    cliq2_rail_circuit,
    demorgan_convert,
    dmn_of_rail_circuit,
    parse_circuit,
    rail_of_tri,
    graph_of_rail,
)
from cliq2lab.formulas import cs
from cliq2lab.semantics import UNDEF, Cliq2, equiv_approx

c = parse_circuit("g1 = VAR v1\ng2 = VAR v2\ng3 = NOT g2\ng4 = OR g1 g3\ng5 = NOT g4\nroot g5\n")
star = demorgan_convert(c)
print(f"size {circuit_size(c)} -> {circuit_size(star)}")
print(star.format())

# On two rails, x_i = 1 puts edge i in the positive part and y_i = 1 in the negative part.
beta = rail_of_tri((1, 0, UNDEF, UNDEF, UNDEF, UNDEF))
print("x =", beta.x, "y =", beta.y)
print("graph:", graph_of_rail(beta, 4))

rail = cliq2_rail_circuit(5, 3)
psi = dmn_of_rail_circuit(rail, 5)
v = equiv_approx(psi, Cliq2(3), 5)
print(f"brute-force CLIQ2 circuit: {circuit_size(rail)} gates, formula size {cs(psi)}, "
      f"decides CLIQ2 on all {v.checked} assignments: {v.holds}")
