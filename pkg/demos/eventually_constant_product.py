"""The product basis on eventually-constant vector sequences.

Sequences take values in a d-dimensional sup-norm space and stabilize after
finitely many steps. The basis crosses dyadically weighted scalar profiles
with the coordinate directions; profile 0 is the all-ones sequence and it is
genuinely needed, as the tail-mismatch computation at the end shows.
"""

from fractions import Fraction

from auerbach import CXSystem, rat_format
from auerbach.cx import CXIndex, cx_vector, profile_tail_mismatch

system = CXSystem(2)

print("first eight indices (profile level, coordinate):")
print(" ", [(i.level, i.coord) for i in system.indices(8)])

# exact biorthogonality and unit norms
indices = system.indices(12)
for a in indices:
    assert system.functional_norm(a) == 1
    assert system.vector_norm(system.materialize(a)) == 1
    for b in indices:
        assert system.eval(a, system.materialize(b)) == (1 if a == b else 0)
print("12x12 grid: exactly delta; all norms exactly 1")

# evaluating a functional on a concrete sequence
y = cx_vector(
    [(Fraction(1), Fraction(0)), (Fraction(0), Fraction(1, 2))],
    (Fraction(0), Fraction(0)),
)
value = system.eval(CXIndex(1, 2), y)
print("profile-1 functional on the second coordinate of y:", rat_format(value))

# why the all-ones profile cannot be dropped: targeting (s, t, t, ...) with
# step profiles alone leaves a residual that doubles with every extra row
print("\nresidual when targeting (1, 0, 0, ...) without the all-ones row:")
for rows in range(1, 7):
    gap = profile_tail_mismatch(Fraction(1), Fraction(0), rows)
    print(f"  rows 1..{rows}: residual {rat_format(gap)}")
print("only s = -t closes:",
      rat_format(profile_tail_mismatch(Fraction(1), Fraction(-1), 6)))

# with the all-ones row included, the same target expands exactly
one_dim = CXSystem(1)
target = cx_vector([(Fraction(1),)], (Fraction(0),))
print("\nwith the all-ones row, (1, 0, 0, ...) has coefficients:",
      rat_format(one_dim.eval(CXIndex(0, 1), target)), "and",
      rat_format(one_dim.eval(CXIndex(1, 1), target)))
