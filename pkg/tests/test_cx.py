"""Eventually-constant vector sequences: product basis, degeneracy to the
c-space system at dimension 1, and the essential all-ones row."""

import random
from fractions import Fraction

import pytest

from auerbach.ck import Top, element_norm, eval_functional, materialize
from auerbach.cx import (
    CXIndex,
    CXSystem,
    CXVector,
    cx_vector,
    cx_vector_from_dict,
    cx_vector_to_dict,
    profile_tail_mismatch,
)
from auerbach.ordinals import SpaceDesc, ord_parse
from auerbach.verify import random_tree

Y1 = SpaceDesc(ord_parse("1"))


def y1_to_sequence(tree, d1=True) -> CXVector:
    """A c-space tree as an eventually-constant scalar sequence."""
    top = tree.max_block
    entries = []
    for k in range(1, top + 1):
        child = tree.child(k)
        value = (child.tail if child else Fraction(0)) + tree.tail
        entries.append((value,))
    return CXVector(tuple(entries), (tree.tail,))


def test_indices_enumeration_order():
    system = CXSystem(2)
    assert system.indices(5) == [
        CXIndex(0, 1),
        CXIndex(0, 2),
        CXIndex(1, 1),
        CXIndex(1, 2),
        CXIndex(2, 1),
    ]


def test_rejects_dimension_zero():
    with pytest.raises(ValueError):
        CXSystem(0)


def test_biorthogonality_and_norms():
    for d in (1, 2, 3):
        system = CXSystem(d)
        indices = system.indices(20)
        for a in indices:
            assert system.functional_norm(a) == 1
            assert system.vector_norm(system.materialize(a)) == 1
            for b in indices:
                value = system.eval(a, system.materialize(b))
                assert value == (1 if a == b else 0)


def test_coordinate_orthogonality_same_level():
    system = CXSystem(3)
    value = system.eval(CXIndex(1, 2), system.materialize(CXIndex(1, 3)))
    assert value == 0


def test_unit_norm_of_product_vectors():
    system = CXSystem(2)
    assert system.vector_norm(system.materialize(CXIndex(1, 2))) == 1


def test_dimension_one_coincides_with_c_space_system():
    system = CXSystem(1)
    for n in range(8):
        # the materialized sequences agree entry by entry
        assert system.materialize(CXIndex(n, 1)) == y1_to_sequence(
            materialize(Y1, Top(n))
        )
    rng = random.Random(23)
    for _ in range(30):
        tree = random_tree(rng, Y1)
        sequence = y1_to_sequence(tree)
        for n in range(8):
            assert system.eval(CXIndex(n, 1), sequence) == eval_functional(
                Y1, Top(n), tree
            )
        assert system.vector_norm(sequence) == element_norm(tree)


def test_constant_profiles_need_the_all_ones_row():
    # targeting (1, 0, 0, ...) without the all-ones profile leaves a residual
    # that doubles with each extra row instead of closing
    for rows in range(1, 10):
        gap = profile_tail_mismatch(Fraction(1), Fraction(0), rows)
        assert gap == Fraction(2) ** (rows - 1) * Fraction(-1)
        assert gap != 0
    # while s = -t profiles are plain multiples of the first step profile
    for rows in range(1, 10):
        assert profile_tail_mismatch(Fraction(1), Fraction(-1), rows) == 0
    # and with the all-ones row the same target expands exactly
    system = CXSystem(1)
    target = cx_vector([(Fraction(1),)], (Fraction(0),))
    coeffs = {
        CXIndex(0, 1): Fraction(1, 2),
        CXIndex(1, 1): Fraction(-1, 2),
    }
    for index in system.indices(10):
        expected = coeffs.get(index, Fraction(0))
        assert system.eval(index, target) == expected


def test_vector_json_round_trip():
    y = cx_vector(
        [(Fraction(1), Fraction(0)), (Fraction(0), Fraction(1, 2))],
        (Fraction(0), Fraction(0)),
    )
    data = cx_vector_to_dict(y)
    assert data == {
        "entries": [["1", "0"], ["0", "1/2"]],
        "tail_vector": ["0", "0"],
    }
    assert cx_vector_from_dict(data) == y


def test_vector_dimension_mismatch():
    with pytest.raises(ValueError):
        cx_vector([(Fraction(1),)], (Fraction(0), Fraction(0)))
