"""Tour of the recursively built tree-space bases.

Spaces are indexed by ordinals below omega**omega: alpha = 1 is the space of
convergent sequences, successor steps wrap block sequences with a tail
constant, limit steps climb a fundamental sequence. Basis vectors are finite
trees; functionals weight block constants dyadically and evaluate exactly.
"""

import random

from auerbach import (
    SumSystem,
    Top,
    element,
    element_norm,
    enumerate_indices,
    equals,
    eval_functional,
    expand,
    format_index,
    functional_norm,
    materialize,
    rat_format,
)
from auerbach.ck import combine
from auerbach.ordinals import SpaceDesc, block_space, ord_parse
from auerbach.verify import random_tree

space = SpaceDesc(ord_parse("w^2"))
print("blocks of the w^2 space climb the fundamental sequence:")
for j in range(1, 5):
    print(f"  block {j} lives in the space of", block_space(space, j).alpha)

print("\nfirst twelve basis indices:")
indices = enumerate_indices(space, 12)
print(" ", [format_index(i) for i in indices])

print("\nstep vector T2 as a finite tree (tail 1, -2 on block 2, -1 before):")
from auerbach.ck import element_to_dict
print(" ", element_to_dict(materialize(space, Top(2))))

# exact biorthogonality on a small grid
vectors = [materialize(space, i) for i in indices]
for a, fa in enumerate(indices):
    for b, xb in enumerate(vectors):
        assert eval_functional(space, fa, xb) == (1 if a == b else 0)
print("\n12x12 biorthogonality grid: exactly delta")

for i in indices:
    assert element_norm(materialize(space, i)) == 1
    assert functional_norm(space, i) == 1
print("all vector and functional norms: exactly 1")

# the indicator of the first point of the sequence space c
c_space = SpaceDesc(ord_parse("1"))
indicator = element({1: element({}, 1)}, 0)
coefficients = expand(c_space, indicator)
print("\nindicator of the first point expands as:",
      {format_index(i): rat_format(c) for i, c in coefficients.items()})

# random finite trees expand and re-sum exactly, coefficients = functional values
rng = random.Random(13)
tree = random_tree(rng, space)
coefficients = expand(space, tree)
assert equals(combine(coefficients, space), tree)
for i, c in coefficients.items():
    assert eval_functional(space, i, tree) == c
print("random tree expansion: exact round-trip,",
      len(coefficients), "nonzero coefficients")

# two copies of the same space, summed in sup norm
double = SumSystem(SpaceDesc(ord_parse("w^2"), 2))
pair = double.indices(6)
for a in pair:
    for b in pair:
        value = double.eval(a, double.materialize(b))
        assert value == (1 if a == b else 0)
print("\ntwo-copy system keeps exact cross-copy biorthogonality")
