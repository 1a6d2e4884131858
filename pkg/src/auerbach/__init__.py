"""Exact constructions of Auerbach bases in classical sequence and function spaces.

Three families of norm-one biorthogonal systems are built and certified with
exact rational arithmetic throughout (no floating point anywhere):

* finite-codimension kernel subspaces of c0, via maximal-determinant column
  selection and Cramer solves (:mod:`auerbach.c0`),
* recursively built tree spaces covering continuous functions on countable
  compacta, indexed by ordinals below omega**omega (:mod:`auerbach.ck`),
* eventually-constant sequences valued in a finite-dimensional sup-norm
  space (:mod:`auerbach.cx`).

The :mod:`auerbach.verify` module produces machine-readable certification
reports, and :mod:`auerbach.cli` ties everything into file-based pipelines.
"""

from fractions import Fraction

from .rationals import Rat, RationalParseError, geom_tail, pow2, rat_format, rat_parse
from .matrices import (
    Matrix,
    SingularMatrixError,
    det_exact,
    hadamard_sq_bound,
    solve_cramer,
)
from .c0 import (
    C0Basis,
    C0Vector,
    ColumnSelection,
    DependentFunctionals,
    L1Functional,
    NotInSubspace,
    SubspaceSpec,
    ZeroFunctional,
    codim1_closed_form,
    construct_basis,
    coord_l1_certificate,
    eval_l1,
    l1_functional,
    reconstruct,
    select_max_det,
    subspace_spec,
    validate_spec,
)
from .ordinals import (
    Ordinal,
    OrdinalParseError,
    SpaceDesc,
    block_space,
    classify,
    fundamental_seq,
    ord_format,
    ord_parse,
    predecessor,
)
from .ck import (
    Element,
    InBlock,
    InvalidElementError,
    InvalidIndexError,
    SumIndex,
    SumSystem,
    Top,
    ZERO_ELEMENT,
    canonicalize,
    element,
    element_add,
    element_norm,
    element_scale,
    enumerate_indices,
    equals,
    eval_functional,
    expand,
    format_index,
    functional_norm,
    materialize,
    parse_index,
    validate_element,
    validate_index,
)
from .cx import CXIndex, CXSystem, CXVector, profile_tail_mismatch
from .report import Check, Report, report_to_json

__all__ = [
    "Fraction",
    "Rat",
    "RationalParseError",
    "geom_tail",
    "pow2",
    "rat_format",
    "rat_parse",
    "Matrix",
    "SingularMatrixError",
    "det_exact",
    "hadamard_sq_bound",
    "solve_cramer",
    "C0Basis",
    "C0Vector",
    "ColumnSelection",
    "DependentFunctionals",
    "L1Functional",
    "NotInSubspace",
    "SubspaceSpec",
    "ZeroFunctional",
    "codim1_closed_form",
    "construct_basis",
    "coord_l1_certificate",
    "eval_l1",
    "l1_functional",
    "reconstruct",
    "select_max_det",
    "subspace_spec",
    "validate_spec",
    "Ordinal",
    "OrdinalParseError",
    "SpaceDesc",
    "block_space",
    "classify",
    "fundamental_seq",
    "ord_format",
    "ord_parse",
    "predecessor",
    "Element",
    "InBlock",
    "InvalidElementError",
    "InvalidIndexError",
    "SumIndex",
    "SumSystem",
    "Top",
    "ZERO_ELEMENT",
    "canonicalize",
    "element",
    "element_add",
    "element_norm",
    "element_scale",
    "enumerate_indices",
    "equals",
    "eval_functional",
    "expand",
    "format_index",
    "functional_norm",
    "materialize",
    "parse_index",
    "validate_element",
    "validate_index",
    "CXIndex",
    "CXSystem",
    "CXVector",
    "profile_tail_mismatch",
    "Check",
    "Report",
    "report_to_json",
]
