"""Auerbach bases of finite-codimension kernel subspaces of c0.

A subspace is given as the joint kernel of finitely many finitely supported
summable functionals. Writing D for the matrix whose rows are the functional
coefficients, the construction picks the column set J whose square submatrix
has maximal squared determinant, then pairs every remaining coordinate s with
the vector

    x = e_s + v,    v supported on J,  A @ v = -(column s of D),

solved by Cramer. Maximality of the selection forces every correction entry
to have absolute value at most 1, so each vector has sup norm exactly 1 and
is matched with the coordinate functional at its own unit index. All
arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .matrices import Matrix, det_exact, solve_cramer
from .rationals import rat_format, rat_parse
from .report import Check, Report


class ZeroFunctional(ValueError):
    """A defining functional is identically zero."""

    def __init__(self, position: int):
        self.position = position
        super().__init__(f"functional #{position} is identically zero")


class DependentFunctionals(ValueError):
    """The defining functionals are linearly dependent.

    ``witness`` holds coefficients, one per functional, of a vanishing
    nontrivial combination.
    """

    def __init__(self, witness: tuple[Fraction, ...]):
        self.witness = witness
        pretty = ", ".join(rat_format(c) for c in witness)
        super().__init__(f"dependent functionals; vanishing combination ({pretty})")


class NotInSubspace(ValueError):
    """A vector handed to :func:`reconstruct` lies outside the subspace."""

    def __init__(self, functional: int, value: Fraction):
        self.functional = functional
        self.value = value
        super().__init__(
            f"functional #{functional} evaluates to {rat_format(value)}, not 0"
        )


class SelectionSoundnessError(AssertionError):
    """A correction entry exceeded 1 in absolute value.

    Unreachable for a selection that truly maximizes the squared determinant;
    raised so a broken selection cannot silently produce a non-unit vector.
    """


class ReconstructionError(AssertionError):
    """Internal check failure: the summed expansion missed the target."""


@dataclass(frozen=True)
class L1Functional:
    """Finitely supported summable functional; coefficient i acts on e_i."""

    coeffs: tuple[Fraction, ...]

    def coeff(self, i: int) -> Fraction:
        """Coefficient at 1-based coordinate ``i`` (0 beyond the support)."""
        if 1 <= i <= len(self.coeffs):
            return self.coeffs[i - 1]
        return Fraction(0)

    @property
    def support(self) -> int:
        """Largest coordinate carrying a coefficient (0 for the zero map)."""
        return len(self.coeffs)

    @property
    def norm_l1(self) -> Fraction:
        return sum((abs(c) for c in self.coeffs), Fraction(0))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs


def l1_functional(coeffs: Iterable[Fraction | int | str]) -> L1Functional:
    """Build a functional, converting entries and trimming trailing zeros."""
    values = [c if isinstance(c, Fraction) else _convert(c) for c in coeffs]
    while values and values[-1] == 0:
        values.pop()
    return L1Functional(tuple(values))


def _convert(c: int | str) -> Fraction:
    return rat_parse(c) if isinstance(c, str) else Fraction(c)


@dataclass(frozen=True)
class SubspaceSpec:
    """The subspace cut out as the joint kernel of the listed functionals."""

    functionals: tuple[L1Functional, ...]

    @property
    def codim(self) -> int:
        return len(self.functionals)

    @property
    def max_support(self) -> int:
        return max((f.support for f in self.functionals), default=0)

    def column(self, j: int) -> tuple[Fraction, ...]:
        """Column j of the coefficient matrix D (one entry per functional)."""
        return tuple(f.coeff(j) for f in self.functionals)


def subspace_spec(functionals: Iterable[Iterable[Fraction | int | str]]) -> SubspaceSpec:
    return SubspaceSpec(tuple(l1_functional(f) for f in functionals))


@dataclass(frozen=True)
class ColumnSelection:
    """A maximal column set J with its submatrix determinant.

    ``m_sq`` is the largest squared Euclidean norm among all support columns
    of D; it feeds the summability certificate and the search pruning.
    """

    indices: tuple[int, ...]
    det_value: Fraction
    m_sq: Fraction


@dataclass(frozen=True)
class C0Vector:
    """Unit vector at ``unit_index`` plus a correction supported on J.

    The correction is kept as a sorted tuple of (coordinate, value) pairs
    with zero values dropped.
    """

    unit_index: int
    correction: tuple[tuple[int, Fraction], ...]

    def coord(self, i: int) -> Fraction:
        value = Fraction(1) if i == self.unit_index else Fraction(0)
        for j, c in self.correction:
            if j == i:
                value += c
        return value

    @property
    def correction_map(self) -> dict[int, Fraction]:
        return dict(self.correction)

    @property
    def sup_norm(self) -> Fraction:
        return max([Fraction(1)] + [abs(c) for _, c in self.correction])


def c0_vector(unit_index: int, correction: Mapping[int, Fraction]) -> C0Vector:
    pairs = tuple(sorted((j, c) for j, c in correction.items() if c != 0))
    return C0Vector(unit_index, pairs)


@dataclass(frozen=True)
class C0Basis:
    """The full norm-one biorthogonal family for a kernel subspace.

    Vectors with unit index inside the functional support carry explicit
    corrections; from ``tail_start`` on, every vector is a bare unit vector.
    The paired functional of vector k is the coordinate functional at its
    unit index, so biorthogonality is structural and the substance lives in
    the corrections.
    """

    spec: SubspaceSpec
    selection: ColumnSelection
    explicit_vectors: tuple[C0Vector, ...]
    tail_start: int

    def unit_index(self, k: int) -> int:
        """sigma(k): the unit coordinate of vector k (1-based)."""
        if k < 1:
            raise ValueError("basis positions are 1-based")
        if k < self.tail_start:
            return self.explicit_vectors[k - 1].unit_index
        return k + self.spec.codim

    def vector(self, k: int) -> C0Vector:
        if k < 1:
            raise ValueError("basis positions are 1-based")
        if k < self.tail_start:
            return self.explicit_vectors[k - 1]
        return C0Vector(k + self.spec.codim, ())


def _independence_witness(spec: SubspaceSpec) -> tuple[Fraction, ...] | None:
    """None when the functionals are independent, else a vanishing combination."""
    n = spec.codim
    m = spec.max_support
    rows = [[f.coeff(j) for j in range(1, m + 1)] for f in spec.functionals]
    tags = [
        [Fraction(int(i == t)) for t in range(n)] for i in range(n)
    ]
    rank = 0
    for col in range(m):
        pivot = None
        for i in range(rank, n):
            if rows[i][col] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        tags[rank], tags[pivot] = tags[pivot], tags[rank]
        for i in range(rank + 1, n):
            if rows[i][col] == 0:
                continue
            factor = rows[i][col] / rows[rank][col]
            rows[i] = [x - factor * y for x, y in zip(rows[i], rows[rank])]
            tags[i] = [x - factor * y for x, y in zip(tags[i], tags[rank])]
        rank += 1
        if rank == n:
            return None
    if rank == n:
        return None
    return tuple(tags[rank])


def validate_spec(spec: SubspaceSpec) -> None:
    """Check that the defining functionals are nonzero and independent."""
    for pos, f in enumerate(spec.functionals, start=1):
        if f.is_zero:
            raise ZeroFunctional(pos)
    witness = _independence_witness(spec)
    if witness is not None:
        raise DependentFunctionals(witness)


def _column_sq_norms(spec: SubspaceSpec) -> dict[int, Fraction]:
    return {
        j: sum((x * x for x in spec.column(j)), Fraction(0))
        for j in range(1, spec.max_support + 1)
    }


def _gram_det(columns: Sequence[tuple[Fraction, ...]]) -> Fraction:
    gram = Matrix.from_rows(
        [
            [sum((x * y for x, y in zip(a, b)), Fraction(0)) for b in columns]
            for a in columns
        ]
    )
    return det_exact(gram)


def select_max_det(spec: SubspaceSpec, prune: bool = True) -> ColumnSelection:
    """Pick the column set maximizing the squared submatrix determinant.

    Subsets are explored in lexicographic order and only a strictly larger
    squared determinant displaces the incumbent, so ties resolve to the
    lexicographically smallest set. With ``prune`` enabled, a partial choice
    is discarded when the Gram determinant of its columns times the largest
    remaining squared column norms cannot beat the incumbent; the bound is a
    Hadamard-type upper bound for every completion, so pruning never changes
    the result.
    """
    validate_spec(spec)
    n = spec.codim
    if n == 0:
        return ColumnSelection((), Fraction(1), Fraction(0))
    m = spec.max_support
    cols = {j: spec.column(j) for j in range(1, m + 1)}
    sq = _column_sq_norms(spec)
    m_sq = max(sq.values())

    best_sq: Fraction | None = None
    best_det = Fraction(0)
    best_set: tuple[int, ...] = ()

    def remaining_bound(after: int, count: int) -> Fraction:
        norms = sorted((sq[r] for r in range(after, m + 1)), reverse=True)
        bound = Fraction(1)
        for v in norms[:count]:
            bound *= v
        return bound

    def search(chosen: list[int], start: int) -> None:
        nonlocal best_sq, best_det, best_set
        if len(chosen) == n:
            d = det_exact(Matrix.from_columns([cols[j] for j in chosen]))
            dsq = d * d
            if best_sq is None or dsq > best_sq:
                best_sq, best_det, best_set = dsq, d, tuple(chosen)
            return
        needed = n - len(chosen)
        for j in range(start, m - needed + 2):
            if prune and best_sq is not None:
                bound = _gram_det([cols[r] for r in chosen + [j]])
                bound *= remaining_bound(j + 1, needed - 1)
                if bound <= best_sq:
                    continue
            chosen.append(j)
            search(chosen, j + 1)
            chosen.pop()

    search([], 1)
    if best_sq is None or best_sq == 0:
        # validate_spec guarantees rank n, so some subset is nonsingular
        raise SelectionSoundnessError("no nonsingular column subset found")
    return ColumnSelection(best_set, best_det, m_sq)


def construct_basis(spec: SubspaceSpec, sel: ColumnSelection) -> C0Basis:
    """Build the basis from a maximal selection by Cramer solves.

    Every correction entry is asserted to be at most 1 in absolute value;
    maximality of the selection guarantees it, so a violation means the
    selection was not produced by :func:`select_max_det`.
    """
    n = spec.codim
    m = spec.max_support
    selected = set(sel.indices)
    a = Matrix.from_columns([spec.column(j) for j in sel.indices])
    vectors = []
    for s in range(1, m + 1):
        if s in selected:
            continue
        rhs = [-x for x in spec.column(s)]
        v = solve_cramer(a, rhs) if n else ()
        for value in v:
            if abs(value) > 1:
                raise SelectionSoundnessError(
                    f"correction {rat_format(value)} exceeds 1 at column {s}"
                )
        vectors.append(
            c0_vector(s, {j: value for j, value in zip(sel.indices, v)})
        )
    return C0Basis(spec, sel, tuple(vectors), m - n + 1)


def codim1_closed_form(f: L1Functional) -> C0Basis:
    """Closed-form basis for the kernel of a single functional.

    With p the smallest coordinate of maximal absolute coefficient, vector k
    is e_{sigma(k)} - (a_{sigma(k)}/a_p) e_p where sigma enumerates the other
    coordinates in increasing order. Serves as an independent oracle for the
    Cramer route at codimension 1.
    """
    if f.is_zero:
        raise ZeroFunctional(1)
    peak = max(abs(c) for c in f.coeffs)
    p = next(i for i in range(1, f.support + 1) if abs(f.coeff(i)) == peak)
    spec = SubspaceSpec((f,))
    m_sq = max(c * c for c in f.coeffs)
    sel = ColumnSelection((p,), f.coeff(p), m_sq)
    vectors = []
    for s in range(1, f.support + 1):
        if s == p:
            continue
        vectors.append(c0_vector(s, {p: -f.coeff(s) / f.coeff(p)}))
    return C0Basis(spec, sel, tuple(vectors), f.support)


def eval_l1(f: L1Functional, v: C0Vector) -> Fraction:
    """Exact value of the functional at a basis vector."""
    total = f.coeff(v.unit_index)
    for j, c in v.correction:
        total += f.coeff(j) * c
    return total


def eval_l1_coords(f: L1Functional, coords: Sequence[Fraction]) -> Fraction:
    """Exact value of the functional at a dense finitely supported vector."""
    return sum(
        (f.coeff(i) * x for i, x in enumerate(coords, start=1)), Fraction(0)
    )


def reconstruct(basis: C0Basis, y: Sequence[Fraction]) -> dict[int, Fraction]:
    """Expand a finitely supported member of the subspace in the basis.

    The coefficient of vector k is the coordinate of ``y`` at sigma(k); the
    off-J coordinates match by construction and the J coordinates match
    because the selected submatrix is nonsingular. The summed expansion is
    re-checked coordinate by coordinate before returning.
    """
    coords = [x if isinstance(x, Fraction) else Fraction(x) for x in y]
    for pos, f in enumerate(basis.spec.functionals, start=1):
        value = eval_l1_coords(f, coords)
        if value != 0:
            raise NotInSubspace(pos, value)
    selected = set(basis.selection.indices)
    n = basis.spec.codim
    m = basis.spec.max_support
    complement = [j for j in range(1, m + 1) if j not in selected]
    position = {j: k for k, j in enumerate(complement, start=1)}

    coefficients: dict[int, Fraction] = {}
    for i, value in enumerate(coords, start=1):
        if value == 0 or i in selected:
            continue
        k = position[i] if i <= m else i - n
        coefficients[k] = value

    width = max(len(coords), m)
    acc = [Fraction(0)] * width
    for k, c in coefficients.items():
        vec = basis.vector(k)
        acc[vec.unit_index - 1] += c
        for j, corr in vec.correction:
            acc[j - 1] += c * corr
    padded = coords + [Fraction(0)] * (width - len(coords))
    if acc != padded:
        raise ReconstructionError("expansion does not reproduce the input")
    return coefficients


def coord_l1_certificate(basis: C0Basis, i: int) -> Report:
    """Certify summability of coordinate i across the basis vectors.

    For every explicit vector, checks the squared inequality

        x_k(i)**2 * det(A)**2 <= m_sq**(n-1) * (sum_j |f^j at sigma(k)|)**2,

    and reports the exact sum of |x_k(i)| (tail vectors contribute nothing).
    """
    n = basis.spec.codim
    checks: list[Check] = []
    if n == 0 or i not in basis.selection.indices:
        if n > 0:
            raise ValueError(f"coordinate {i} is not in the selected set")
        checks.append(
            Check("coord-l1", f"column {i}: vacuous, sum 0", True, None)
        )
        return Report(checks)
    det_sq = basis.selection.det_value ** 2
    envelope = basis.selection.m_sq ** (n - 1)
    total = Fraction(0)
    for k, vec in enumerate(basis.explicit_vectors, start=1):
        value = vec.coord(i)
        total += abs(value)
        column_l1 = sum(
            (abs(f.coeff(vec.unit_index)) for f in basis.spec.functionals),
            Fraction(0),
        )
        lhs = value * value * det_sq
        rhs = envelope * column_l1 * column_l1
        ok = lhs <= rhs
        witness = None
        if not ok:
            witness = {
                "k": str(k),
                "lhs": rat_format(lhs),
                "rhs": rat_format(rhs),
            }
        checks.append(
            Check("coord-l1", f"column {i}, vector {k}", ok, witness)
        )
    checks.append(
        Check(
            "coord-l1",
            f"column {i}: sum {rat_format(total)}",
            True,
            {"sum": rat_format(total)},
        )
    )
    return Report(checks)


# --- JSON forms -----------------------------------------------------------

def spec_to_dict(spec: SubspaceSpec) -> dict:
    return {
        "functionals": [
            {"coeffs": [rat_format(c) for c in f.coeffs]}
            for f in spec.functionals
        ]
    }


def spec_from_dict(data: dict) -> SubspaceSpec:
    if not isinstance(data, dict) or "functionals" not in data:
        raise ValueError("subspace file must contain a 'functionals' list")
    raw = data["functionals"]
    if not isinstance(raw, list):
        raise ValueError("'functionals' must be a list")
    functionals = []
    for item in raw:
        if not isinstance(item, dict) or "coeffs" not in item:
            raise ValueError("each functional needs a 'coeffs' list")
        functionals.append(l1_functional([rat_parse(c) for c in item["coeffs"]]))
    return SubspaceSpec(tuple(functionals))


def basis_to_dict(basis: C0Basis) -> dict:
    return {
        "selection": {
            "indices": list(basis.selection.indices),
            "det": rat_format(basis.selection.det_value),
        },
        "vectors": [
            {
                "unit_index": vec.unit_index,
                "correction": {
                    str(j): rat_format(c) for j, c in vec.correction
                },
            }
            for vec in basis.explicit_vectors
        ],
        "tail_start": basis.tail_start,
    }


def basis_from_dict(data: dict, spec: SubspaceSpec) -> C0Basis:
    try:
        indices = tuple(int(j) for j in data["selection"]["indices"])
        det_value = rat_parse(data["selection"]["det"])
        vectors = tuple(
            c0_vector(
                int(item["unit_index"]),
                {int(j): rat_parse(c) for j, c in item["correction"].items()},
            )
            for item in data["vectors"]
        )
        tail_start = int(data["tail_start"])
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed basis file: {exc}") from exc
    sq = _column_sq_norms(spec)
    m_sq = max(sq.values(), default=Fraction(0))
    return C0Basis(spec, ColumnSelection(indices, det_value, m_sq), vectors, tail_start)
