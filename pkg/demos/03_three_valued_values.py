"""
Where formula values and set values part ways
=============================================

A formula and its set semantics always agree on where the value is 1.
They need not agree on 0 versus "undefined", because the product of two
families silently drops members whose parts clash.
"""

from cliq2lab.formats import format_assignment, format_family, format_tri
from cliq2lab.formulas import parse_formula, sem_set
from cliq2lab.semantics import UNDEF, eval_formula, eval_setrep

U = UNDEF
m = 4
phi = parse_formula("(v1 & (v2 | ~v1))")
fam = sem_set(phi, m)

# v1 & ~v1 clashes on edge (1,2), so only one member survives
print("S(phi) =", format_family(fam).strip())

for mode, theta in [("exact", (1, U, 0, 0, 0, 0)), ("kleene", (U, 0, 0, 0, 0, 0))]:
    a = eval_formula(phi, theta, mode)
    b = eval_setrep(fam, theta, m, mode)
    print(f"{mode:6s} at {format_assignment(theta)}: formula -> {format_tri(a)}, family -> {format_tri(b)}")

# Under the exact table a disjunct that is 0 still wins over an undefined one,
# while Kleene's table keeps the undefined value.
either = parse_formula("(v1 | v2)")
print("v1 | v2 at v1=?, v2=0:", format_tri(eval_formula(either, (U, 0), "exact")),
      "(exact) vs", format_tri(eval_formula(either, (U, 0), "kleene")), "(kleene)")
