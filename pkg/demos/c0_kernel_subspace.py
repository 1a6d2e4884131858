"""Walk through the c0 construction on a codimension-2 kernel subspace.

We cut c0 down by two summable functionals, pick the column pair with the
largest squared determinant, and read off a norm-one biorthogonal basis
whose corrections come from exact Cramer solves.
"""

from fractions import Fraction

from auerbach import (
    codim1_closed_form,
    construct_basis,
    coord_l1_certificate,
    eval_l1,
    l1_functional,
    rat_format,
    reconstruct,
    select_max_det,
    subspace_spec,
)
from auerbach.verify import oracle_maxdet

# X = ker f1 ∩ ker f2 inside c0
spec = subspace_spec([
    ["1", "0", "1/2"],
    ["0", "1", "2/3"],
])

selection = select_max_det(spec)
print("selected columns:", selection.indices)
print("determinant:", rat_format(selection.det_value))

# the pruned search and the brute-force oracle must agree exactly
assert oracle_maxdet(spec) == selection

basis = construct_basis(spec, selection)
for k in range(1, 5):
    vector = basis.vector(k)
    correction = {j: rat_format(c) for j, c in vector.correction}
    print(f"x{k} = e{vector.unit_index} + correction {correction}")

# every vector really lies in X, with sup norm exactly 1
for k in range(1, 6):
    vector = basis.vector(k)
    assert vector.sup_norm == 1
    for f in spec.functionals:
        assert eval_l1(f, vector) == 0
print("membership and unit norms: exact")

# a member of X, rebuilt from its coordinates beyond the selected columns
member = [Fraction(-1, 2), Fraction(-2, 3), Fraction(1)]
coefficients = reconstruct(basis, member)
print("expansion of", [rat_format(x) for x in member], "->",
      {k: rat_format(c) for k, c in coefficients.items()})

# the coordinates over the selected columns are summable, with certificate
report = coord_l1_certificate(basis, 1)
print("column-1 summability certificate:", report.checks[-1].scope)

# at codimension 1 the closed form is an independent oracle for the solver
f = l1_functional(["1", "1/2", "1/4"])
single = subspace_spec([["1", "1/2", "1/4"]])
assert construct_basis(single, select_max_det(single)) == codim1_closed_form(f)
print("codimension-1 closed form agrees with the Cramer route")
