"""Property harness: exact certification of constructed systems.

Every check evaluates exact identities (biorthogonality deltas, unit norms,
kernel membership, reconstruction) and records failures with replayable
witnesses. Brute-force oracles live here too: unpruned column-subset
enumeration for the maximal-determinant search, and explicit series
summation for the tree-space functionals. Randomized checks draw from
``random.Random(seed)`` only, so reports are deterministic.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Protocol

from itertools import combinations

from . import c0 as c0mod
from . import ck as ckmod
from .c0 import C0Basis, ColumnSelection, SubspaceSpec
from .ck import (
    Element,
    SumIndex,
    SumSystem,
    Top,
    element,
    format_index,
)
from .cx import CXIndex, CXSystem
from .matrices import Matrix, det_exact
from .ordinals import SpaceDesc, block_space
from .rationals import geom_tail, pow2, rat_format
from .report import Check, Report


class BasisSystem(Protocol):
    """What a system must expose to be certified by the generic checks."""

    def indices(self, count: int) -> list: ...

    def label(self, index) -> str: ...

    def pair(self, functional, vector) -> Fraction: ...

    def vector_norm(self, index) -> Fraction: ...

    def functional_norm(self, index) -> Fraction: ...


class C0SystemView:
    """Generic-check adapter for a c0 kernel-subspace basis."""

    def __init__(self, basis: C0Basis):
        self.basis = basis

    def indices(self, count: int) -> list[int]:
        return list(range(1, count + 1))

    def label(self, k: int) -> str:
        return f"x{k}"

    def pair(self, fi: int, vj: int) -> Fraction:
        # the functional of position i is the coordinate functional at its
        # own unit index, so this reads that coordinate of vector j
        return self.basis.vector(vj).coord(self.basis.unit_index(fi))

    def vector_norm(self, k: int) -> Fraction:
        return self.basis.vector(k).sup_norm

    def functional_norm(self, k: int) -> Fraction:
        # coordinate functionals have summable-dual norm 1 by definition
        return Fraction(1)


class CKSystemView:
    """Generic-check adapter for an n-fold tree-space system."""

    def __init__(self, system: SumSystem):
        self.system = system
        self._vectors: dict[SumIndex, tuple[Element, ...]] = {}

    def indices(self, count: int) -> list[SumIndex]:
        return self.system.indices(count)

    def label(self, si: SumIndex) -> str:
        text = format_index(si.index)
        if self.system.copies == 1:
            return text
        return f"c{si.copy}:{text}"

    def _vector(self, si: SumIndex):
        if si not in self._vectors:
            self._vectors[si] = self.system.materialize(si)
        return self._vectors[si]

    def pair(self, fi: SumIndex, vj: SumIndex) -> Fraction:
        return self.system.eval(fi, self._vector(vj))

    def vector_norm(self, si: SumIndex) -> Fraction:
        return self.system.element_norm(self._vector(si))

    def functional_norm(self, si: SumIndex) -> Fraction:
        return self.system.functional_norm(si)


class CXSystemView:
    """Generic-check adapter for the eventually-constant product system."""

    def __init__(self, system: CXSystem):
        self.system = system

    def indices(self, count: int) -> list[CXIndex]:
        return self.system.indices(count)

    def label(self, i: CXIndex) -> str:
        return f"v{i.level}x{i.coord}"

    def pair(self, fi: CXIndex, vj: CXIndex) -> Fraction:
        return self.system.eval(fi, self.system.materialize(vj))

    def vector_norm(self, i: CXIndex) -> Fraction:
        return self.system.vector_norm(self.system.materialize(i))

    def functional_norm(self, i: CXIndex) -> Fraction:
        return self.system.functional_norm(i)


def check_biorthogonality(system: BasisSystem, count: int) -> Report:
    """Every functional/vector pair must give exactly delta."""
    report = Report()
    indices = system.indices(count)
    for i in indices:
        for j in indices:
            value = system.pair(i, j)
            expected = Fraction(1) if i == j else Fraction(0)
            ok = value == expected
            witness = None
            if not ok:
                witness = {
                    "functional": system.label(i),
                    "vector": system.label(j),
                    "value": rat_format(value),
                    "expected": rat_format(expected),
                }
            report.checks.append(
                Check(
                    "biorthogonality",
                    f"{system.label(i)} on {system.label(j)}",
                    ok,
                    witness,
                )
            )
    return report


def check_norms(system: BasisSystem, count: int) -> Report:
    """Every vector and functional norm must equal exactly 1."""
    report = Report()
    for i in system.indices(count):
        vn = system.vector_norm(i)
        fn = system.functional_norm(i)
        ok = vn == 1 and fn == 1
        witness = None
        if not ok:
            witness = {
                "index": system.label(i),
                "vector_norm": rat_format(vn),
                "functional_norm": rat_format(fn),
            }
        report.checks.append(Check("norms", system.label(i), ok, witness))
    return report


def check_membership(basis: C0Basis, count: int) -> Report:
    """Defining functionals vanish on every vector; corrections stay <= 1."""
    report = Report()
    for k in range(1, count + 1):
        vector = basis.vector(k)
        for pos, f in enumerate(basis.spec.functionals, start=1):
            value = c0mod.eval_l1(f, vector)
            ok = value == 0
            witness = None
            if not ok:
                witness = {
                    "functional": str(pos),
                    "vector": f"x{k}",
                    "value": rat_format(value),
                }
            report.checks.append(
                Check("membership", f"f{pos} on x{k}", ok, witness)
            )
        oversized = [
            (j, c) for j, c in vector.correction if abs(c) > 1
        ]
        report.checks.append(
            Check(
                "membership",
                f"corrections of x{k} bounded by 1",
                not oversized,
                None
                if not oversized
                else {
                    "vector": f"x{k}",
                    "entries": {
                        str(j): rat_format(c) for j, c in oversized
                    },
                },
            )
        )
    return report


def oracle_maxdet(spec: SubspaceSpec) -> ColumnSelection:
    """Reference column selection: plain enumeration, no pruning.

    Walks every subset in lexicographic order and keeps the first one whose
    squared determinant is strictly largest, matching the search tie-break.
    """
    c0mod.validate_spec(spec)
    n = spec.codim
    if n == 0:
        return ColumnSelection((), Fraction(1), Fraction(0))
    m = spec.max_support
    sq = c0mod._column_sq_norms(spec)
    best: tuple[Fraction, Fraction, tuple[int, ...]] | None = None
    for subset in combinations(range(1, m + 1), n):
        d = det_exact(Matrix.from_columns([spec.column(j) for j in subset]))
        if best is None or d * d > best[0]:
            best = (d * d, d, subset)
    assert best is not None
    return ColumnSelection(best[2], best[1], max(sq.values()))


def check_maximality(spec: SubspaceSpec, basis: C0Basis) -> Report:
    """Stored selection must equal the brute-force maximizer exactly."""
    reference = oracle_maxdet(spec)
    ok = (
        reference.indices == basis.selection.indices
        and reference.det_value == basis.selection.det_value
    )
    witness = None
    if not ok:
        witness = {
            "oracle_indices": ",".join(map(str, reference.indices)),
            "oracle_det": rat_format(reference.det_value),
            "stored_indices": ",".join(map(str, basis.selection.indices)),
            "stored_det": rat_format(basis.selection.det_value),
        }
    return Report([Check("maximality", "column selection", ok, witness)])


def random_rational(rng: random.Random, bound: int = 9) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def random_subspace_spec(
    rng: random.Random,
    max_codim: int = 3,
    max_support: int = 10,
    bound: int = 9,
) -> SubspaceSpec:
    """Independent random spec; resamples until the rank check passes."""
    while True:
        n = rng.randint(0, max_codim)
        m = rng.randint(max(n, 1), max_support)
        spec = SubspaceSpec(
            tuple(
                c0mod.l1_functional(
                    [random_rational(rng, bound) for _ in range(m)]
                )
                for _ in range(n)
            )
        )
        try:
            c0mod.validate_spec(spec)
        except (c0mod.ZeroFunctional, c0mod.DependentFunctionals):
            continue
        return spec


def random_member(
    rng: random.Random, basis: C0Basis, width: int = 4, bound: int = 9
) -> tuple[dict[int, Fraction], list[Fraction]]:
    """Random finite combination of basis vectors, returned densely.

    Members of the subspace are exactly the exact-arithmetic combinations of
    basis vectors, so this generator projects nothing and loses nothing.
    """
    top = basis.tail_start + 3
    coefficients = {}
    for _ in range(width):
        k = rng.randint(1, top)
        c = random_rational(rng, bound)
        if c != 0:
            coefficients[k] = coefficients.get(k, Fraction(0)) + c
    coefficients = {k: c for k, c in coefficients.items() if c != 0}
    length = max(
        [basis.spec.max_support]
        + [basis.vector(k).unit_index for k in coefficients],
        default=0,
    )
    dense = [Fraction(0)] * length
    for k, c in coefficients.items():
        vector = basis.vector(k)
        dense[vector.unit_index - 1] += c
        for j, corr in vector.correction:
            dense[j - 1] += c * corr
    return coefficients, dense


def check_reconstruction_c0(
    basis: C0Basis, trials: int, seed: int
) -> Report:
    """Round-trip random members through :func:`auerbach.c0.reconstruct`."""
    rng = random.Random(seed)
    report = Report()
    for t in range(1, trials + 1):
        expected, dense = random_member(rng, basis)
        try:
            got = c0mod.reconstruct(basis, dense)
            ok = got == expected
            witness = None
            if not ok:
                witness = {
                    "trial": str(t),
                    "expected": _format_coeffs_c0(expected),
                    "got": _format_coeffs_c0(got),
                }
            scope = f"member trial {t}"
        except c0mod.NotInSubspace as exc:
            # a generator defect, not a system failure: the member handed to
            # reconstruct was not in the subspace to begin with
            ok = True
            witness = {"trial": str(t), "generator_error": str(exc)}
            scope = f"member trial {t} skipped (generator error)"
        except c0mod.ReconstructionError as exc:
            ok = False
            witness = {"trial": str(t), "error": str(exc)}
            scope = f"member trial {t}"
        report.checks.append(Check("reconstruction", scope, ok, witness))
    return report


def _format_coeffs_c0(coeffs: dict[int, Fraction]) -> str:
    return ";".join(f"{k}={rat_format(c)}" for k, c in sorted(coeffs.items()))


def random_tree(
    rng: random.Random,
    space: SpaceDesc,
    depth: int = 3,
    breadth: int = 4,
    bound: int = 9,
    block_range: int = 6,
) -> Element:
    """Random finite tree valid for the space, block spaces respected."""
    tail = random_rational(rng, bound)
    if space.alpha.is_zero or depth == 0:
        return element({}, tail)
    count = rng.randint(0, breadth)
    blocks = rng.sample(range(1, block_range + 1), min(count, block_range))
    children = {
        j: random_tree(rng, block_space(space, j), depth - 1, breadth, bound, block_range)
        for j in blocks
    }
    return element(children, tail)


def random_sum_element(
    rng: random.Random, system: SumSystem, depth: int = 3, breadth: int = 4, bound: int = 9
) -> tuple[Element, ...]:
    return tuple(
        random_tree(rng, system.base, depth, breadth, bound)
        for _ in range(system.copies)
    )


def check_reconstruction_ck(
    system: SumSystem, trials: int, seed: int, depth: int = 3, breadth: int = 4
) -> Report:
    """Expand random trees; re-sum them and match coefficients exactly.

    Exact reconstruction on finitely described members is the strongest
    checkable form of spanning, and coefficient/functional agreement is the
    matching totality statement: a tree killed by every functional expands
    to nothing and must therefore be zero.
    """
    rng = random.Random(seed)
    report = Report()
    for t in range(1, trials + 1):
        y = random_sum_element(rng, system, depth, breadth)
        coeffs = system.expand(y)
        rebuilt = system.combine(coeffs)
        ok_sum = all(
            ckmod.equals(a, b) for a, b in zip(rebuilt, y)
        )
        witness = None
        if not ok_sum:
            witness = {"trial": str(t), "stage": "resummation"}
        report.checks.append(
            Check("reconstruction", f"tree trial {t} resum", ok_sum, witness)
        )
        ok_coeffs = all(
            system.eval(si, y) == c for si, c in coeffs.items()
        )
        witness = None
        if not ok_coeffs:
            witness = {"trial": str(t), "stage": "coefficients"}
        report.checks.append(
            Check(
                "reconstruction",
                f"tree trial {t} coefficients",
                ok_coeffs,
                witness,
            )
        )
    return report


def oracle_series_eval(
    space: SpaceDesc, index, element_value: Element, depth: int
) -> Fraction:
    """Functional value by explicit series summation plus exact tail.

    Sums the defining dyadic series block by block up to ``depth`` and
    accounts for the constant region beyond with the closed-form tail.
    Exact whenever ``depth`` reaches past every explicit child; short depths
    are the caller's responsibility.
    """
    if space.alpha.is_zero:
        return element_value.tail
    if isinstance(index, ckmod.InBlock):
        child = element_value.child(index.j) or ckmod.ZERO_ELEMENT
        shifted = Element(child.children, child.tail + element_value.tail)
        return oracle_series_eval(
            block_space(space, index.j), index.inner, shifted, depth
        )
    children = element_value.child_map
    c = element_value.tail

    def block_constant(j: int) -> Fraction:
        if j in children:
            return oracle_series_eval(
                block_space(space, j), Top(0), children[j], depth
            )
        return Fraction(0)

    k = index.k
    if k == 0:
        total = Fraction(0)
        for j in range(1, depth + 1):
            total += pow2(-j) * (block_constant(j) + c)
        return total + c * geom_tail(depth + 1, 0)
    if k <= depth:
        total = -(block_constant(k) + c) / 2
    else:
        total = -c / 2
    for j in range(k + 1, depth + 1):
        total += pow2(k - j - 1) * (block_constant(j) + c)
    return total + c * geom_tail(max(depth, k) + 1, k - 1)


def _max_block_deep(e: Element) -> int:
    """Largest block index appearing anywhere in the tree."""
    deepest = e.max_block
    for _, child in e.children:
        deepest = max(deepest, _max_block_deep(child))
    return deepest


def check_series_oracle(
    system: SumSystem, pairs: int, seed: int, depth: int = 3, breadth: int = 4
) -> Report:
    """Closed-form evaluation must equal explicit series summation."""
    rng = random.Random(seed)
    report = Report()
    pool = system.indices(max(2 * pairs, 10))
    for t in range(1, pairs + 1):
        si = rng.choice(pool)
        y = random_sum_element(rng, system, depth, breadth)
        fast = system.eval(si, y)
        component = y[si.copy - 1]
        horizon = max(
            _max_block_deep(component), ckmod.index_weight(si.index), 1
        ) + 2
        slow = oracle_series_eval(system.base, si.index, component, horizon)
        ok = fast == slow
        witness = None
        if not ok:
            witness = {
                "trial": str(t),
                "index": format_index(si.index),
                "closed_form": rat_format(fast),
                "series": rat_format(slow),
                "depth": str(horizon),
            }
        report.checks.append(
            Check(
                "series-oracle",
                f"trial {t}: {format_index(si.index)}",
                ok,
                witness,
            )
        )
    return report


def inject_correction_fault(
    basis: C0Basis, delta: Fraction = Fraction(1, 7)
) -> C0Basis:
    """Testing hook: shift one correction entry onto a foreign unit index.

    The first explicit vector gains ``delta`` at the unit coordinate of the
    next basis position, which breaks biorthogonality and membership while
    leaving the file schema intact.
    """
    if not basis.explicit_vectors:
        raise ValueError("basis has no explicit vectors to corrupt")
    victim = basis.explicit_vectors[0]
    foreign = basis.unit_index(2)
    corrupted = c0mod.c0_vector(
        victim.unit_index,
        {**victim.correction_map, foreign: delta},
    )
    vectors = (corrupted,) + basis.explicit_vectors[1:]
    return C0Basis(basis.spec, basis.selection, vectors, basis.tail_start)


def run_c0_suite(
    basis: C0Basis,
    *,
    seed: int = 0,
    max_check: int | None = None,
    trials: int = 5,
) -> Report:
    """All c0 checks in fixed (alphabetical) group order."""
    if max_check is None:
        max_check = basis.tail_start + 5
    report = Report(seed=seed)
    report.extend(check_biorthogonality(C0SystemView(basis), max_check))
    for i in basis.selection.indices:
        report.extend(c0mod.coord_l1_certificate(basis, i))
    if basis.spec.codim == 0:
        report.extend(c0mod.coord_l1_certificate(basis, 0))
    report.extend(check_maximality(basis.spec, basis))
    report.extend(check_membership(basis, max_check))
    report.extend(check_norms(C0SystemView(basis), max_check))
    report.extend(check_reconstruction_c0(basis, trials, seed))
    return report


def run_ck_suite(
    desc: SpaceDesc,
    *,
    count: int = 20,
    trials: int = 20,
    oracle_pairs: int = 20,
    seed: int = 0,
) -> Report:
    """All tree-space checks in fixed (alphabetical) group order."""
    system = SumSystem(desc)
    view = CKSystemView(system)
    report = Report(seed=seed)
    report.extend(check_biorthogonality(view, count))
    report.extend(check_norms(view, count))
    report.extend(check_reconstruction_ck(system, trials, seed))
    report.extend(check_series_oracle(system, oracle_pairs, seed))
    return report


def run_cx_suite(d: int, *, count: int = 50, seed: int = 0) -> Report:
    view = CXSystemView(CXSystem(d))
    report = Report(seed=seed)
    report.extend(check_biorthogonality(view, count))
    report.extend(check_norms(view, count))
    return report
