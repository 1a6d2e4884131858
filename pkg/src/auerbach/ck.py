"""Norm-one biorthogonal bases of recursively built tree spaces.

The space of an ordinal alpha >= 1 consists of pairs (block sequence, tail
constant): a null sequence of members of smaller block spaces plus a scalar
added everywhere. A finitely described member is stored as a finite tree:
a sparse map from block indices to child trees, plus the tail constant; the
value at a point is the sum of tail constants along its path.

Basis vectors carry symbolic indices. ``Top(0)`` is the constant-1 function;
``Top(k)`` for k >= 1 is the step function worth -1 on block k, 0 before and
+1 after; ``InBlock(j, i)`` embeds basis vector i of block j's space (the
block constant ``Top(0)`` is omitted inside blocks, since the top family
already spans the block-constant profiles). The paired functionals weight
block constants with dyadic coefficients whose infinite tails are summed in
closed form, so every evaluation is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Union

from .ordinals import SpaceDesc, block_space
from .rationals import geom_tail, pow2, rat_format, rat_parse


class InvalidIndexError(ValueError):
    """The symbolic index does not belong to the space."""


class InvalidElementError(ValueError):
    """The tree is not a valid member of the space."""


@dataclass(frozen=True)
class Element:
    """Finite tree: sorted (block index, child) pairs plus a tail constant."""

    children: tuple[tuple[int, "Element"], ...] = ()
    tail: Fraction = Fraction(0)

    def child(self, j: int) -> "Element | None":
        for index, sub in self.children:
            if index == j:
                return sub
        return None

    @property
    def child_map(self) -> dict[int, "Element"]:
        return dict(self.children)

    @property
    def max_block(self) -> int:
        return self.children[-1][0] if self.children else 0

    @property
    def is_zero(self) -> bool:
        """Structural zero test; use :func:`equals` for semantic equality."""
        return not self.children and self.tail == 0


ZERO_ELEMENT = Element()


def element(children: Mapping[int, Element] | None = None, tail: Fraction | int | str = 0) -> Element:
    """Build a tree from a children mapping and a tail constant."""
    items = sorted((children or {}).items())
    for j, sub in items:
        if j < 1:
            raise ValueError("block indices are 1-based")
        if not isinstance(sub, Element):
            raise TypeError("children must be Elements")
    if isinstance(tail, str):
        tail = rat_parse(tail)
    return Element(tuple(items), Fraction(tail))


@dataclass(frozen=True)
class Top:
    """Top-level basis index k >= 0 (k = 0 is the constant function)."""

    k: int


@dataclass(frozen=True)
class InBlock:
    """Basis index of block j's space, embedded at block j."""

    j: int
    inner: "BasisIndex"


BasisIndex = Union[Top, InBlock]


def format_index(i: BasisIndex) -> str:
    """Text form ``T<k>`` / ``B<j>.<inner>``."""
    if isinstance(i, Top):
        return f"T{i.k}"
    return f"B{i.j}.{format_index(i.inner)}"


def parse_index(text: str) -> BasisIndex:
    if not isinstance(text, str) or not text:
        raise InvalidIndexError("empty index text")
    head, _, rest = text.partition(".")
    if head.startswith("T"):
        if rest:
            raise InvalidIndexError(f"trailing text after {head!r}")
        if not head[1:].isdigit():
            raise InvalidIndexError(f"bad index text: {text!r}")
        return Top(int(head[1:]))
    if head.startswith("B"):
        if not head[1:].isdigit() or not rest:
            raise InvalidIndexError(f"bad index text: {text!r}")
        return InBlock(int(head[1:]), parse_index(rest))
    raise InvalidIndexError(f"bad index text: {text!r}")


def index_weight(i: BasisIndex) -> int:
    if isinstance(i, Top):
        return i.k
    return i.j + index_weight(i.inner)


def index_sort_key(i: BasisIndex) -> tuple:
    """Enumeration order: weight, then Top before InBlock, then by block."""
    if isinstance(i, Top):
        return (index_weight(i), 0, (i.k,))
    return (index_weight(i), 1, (i.j,) + index_sort_key(i.inner))


def validate_index(space: SpaceDesc, i: BasisIndex) -> bool:
    """Whether the index names a basis vector of the (single-copy) space.

    The scalar base space has the single index Top(0). Inside blocks the
    constant index Top(0) is omitted, so InBlock(j, inner) needs inner to be
    a non-constant index of block j's space.
    """
    _require_single(space)
    if isinstance(i, Top):
        if i.k < 0:
            return False
        return i.k == 0 if space.alpha.is_zero else True
    if space.alpha.is_zero or i.j < 1:
        return False
    if isinstance(i.inner, Top) and i.inner.k == 0:
        return False
    return validate_index(block_space(space, i.j), i.inner)


def _require_single(space: SpaceDesc) -> None:
    if space.copies != 1:
        raise ValueError("operation is defined on a single copy; use SumSystem")


def _indices_of_weight(space: SpaceDesc, w: int) -> list[BasisIndex]:
    if space.alpha.is_zero:
        return [Top(0)] if w == 0 else []
    found: list[BasisIndex] = [Top(w)]
    for j in range(1, w):
        block = block_space(space, j)
        found.extend(InBlock(j, inner) for inner in _indices_of_weight(block, w - j))
    return found


def enumerate_indices(space: SpaceDesc, count: int) -> list[BasisIndex]:
    """First ``count`` indices in the deterministic weight order.

    Weight of Top(k) is k; weight of InBlock(j, inner) is j plus the inner
    weight. Within a weight, Top comes first, then blocks in increasing
    order, each listing its inner indices recursively in the same order.
    """
    _require_single(space)
    out: list[BasisIndex] = []
    w = 0
    while len(out) < count:
        out.extend(_indices_of_weight(space, w))
        w += 1
    return out[:count]


def validate_element(space: SpaceDesc, e: Element) -> None:
    """Raise unless the tree is a member of the (single-copy) space."""
    _require_single(space)
    if not isinstance(e, Element):
        raise InvalidElementError("not an Element")
    if space.alpha.is_zero:
        if e.children:
            raise InvalidElementError("scalar-space members have no blocks")
        return
    for j, sub in e.children:
        validate_element(block_space(space, j), sub)


def materialize(space: SpaceDesc, i: BasisIndex) -> Element:
    """The basis vector named by an index, as a canonical finite tree.

    Top(k) for k >= 1 stores -1 on blocks before k and -2 on block k against
    a tail of 1, which realizes the step profile (0, ..., 0, -1, 1, 1, ...).
    """
    if not validate_index(space, i):
        raise InvalidIndexError(
            f"{format_index(i)} is not an index of this space"
        )
    return _materialize(space, i)


def _materialize(space: SpaceDesc, i: BasisIndex) -> Element:
    if isinstance(i, Top):
        if i.k == 0:
            return Element((), Fraction(1))
        children = {j: Element((), Fraction(-1)) for j in range(1, i.k)}
        children[i.k] = Element((), Fraction(-2))
        return element(children, Fraction(1))
    block = block_space(space, i.j)
    return element({i.j: _materialize(block, i.inner)}, Fraction(0))


def eval_functional(space: SpaceDesc, i: BasisIndex, y: Element) -> Fraction:
    """Exact value of the functional paired with index ``i`` at ``y``.

    With y = (children, c) and g_j the block-constant functional of block j
    applied to child j (0 when absent):

    * Top(0):  c + sum over children of 2**(-j) * g_j,
    * Top(k):  -g_k/2 + sum over children past k of 2**(k-j-1) * g_j
      (the tail-constant contributions cancel exactly),
    * InBlock(j, inner): inner's functional at child j with its tail raised
      by c.

    All infinite tails collapse into the closed-form dyadic sums.
    """
    if not validate_index(space, i):
        raise InvalidIndexError(
            f"{format_index(i)} is not an index of this space"
        )
    validate_element(space, y)
    return _eval(space, i, y)


def _eval(space: SpaceDesc, i: BasisIndex, y: Element) -> Fraction:
    if space.alpha.is_zero:
        return y.tail
    if isinstance(i, InBlock):
        child = y.child(i.j) or ZERO_ELEMENT
        shifted = Element(child.children, child.tail + y.tail)
        return _eval(block_space(space, i.j), i.inner, shifted)
    if i.k == 0:
        total = y.tail
        for j, child in y.children:
            g = _eval(block_space(space, j), Top(0), child)
            total += pow2(-j) * g
        return total
    total = Fraction(0)
    for j, child in y.children:
        if j < i.k:
            continue
        g = _eval(block_space(space, j), Top(0), child)
        if j == i.k:
            total -= g / 2
        else:
            total += pow2(i.k - j - 1) * g
    return total


def element_norm(y: Element) -> Fraction:
    """Exact sup norm of the represented function."""
    lo, hi = _attained_range(y)
    return max(abs(lo), abs(hi))


def _attained_range(y: Element) -> tuple[Fraction, Fraction]:
    # the tail constant itself is always attained: only finitely many
    # blocks carry children, all others sit at the accumulated constant
    lo = hi = y.tail
    for _, child in y.children:
        clo, chi = _attained_range(child)
        lo = min(lo, clo + y.tail)
        hi = max(hi, chi + y.tail)
    return lo, hi


_TAIL_PROBE = 4


def functional_norm(space: SpaceDesc, i: BasisIndex) -> Fraction:
    """Exact dual norm of the functional paired with ``i``; always 1.

    Computed as total variation: block-constant functionals have norm 1,
    verified recursively block by block; past a finite probe prefix the
    per-block norms are asserted equal to 1 and the remaining dyadic tail is
    summed in closed form.
    """
    if not validate_index(space, i):
        raise InvalidIndexError(
            f"{format_index(i)} is not an index of this space"
        )
    return _tv(space, i)


def _tv(space: SpaceDesc, i: BasisIndex) -> Fraction:
    if space.alpha.is_zero:
        return Fraction(1)
    if isinstance(i, InBlock):
        return _tv(block_space(space, i.j), i.inner)
    if space.alpha.is_successor:
        # one block space serves every index, so the dyadic weights sum
        # exactly: total 2**-j over j >= 1 is 1, and for k >= 1 the
        # half-plus-tail split is 1/2 + 1/2
        t = _const_tv(block_space(space, 1))
        if i.k == 0:
            return t * geom_tail(1, 0)
        return t / 2 + t * geom_tail(i.k + 1, i.k - 1)
    if i.k == 0:
        total = Fraction(0)
        for j in range(1, _TAIL_PROBE + 1):
            total += pow2(-j) * _probed_const_tv(space, j)
        return total + geom_tail(_TAIL_PROBE + 1, 0)
    total = _probed_const_tv(space, i.k) / 2
    for j in range(i.k + 1, i.k + _TAIL_PROBE + 1):
        total += pow2(i.k - j - 1) * _probed_const_tv(space, j)
    return total + geom_tail(i.k + _TAIL_PROBE + 1, i.k - 1)


def _probed_const_tv(space: SpaceDesc, j: int) -> Fraction:
    value = _const_tv(block_space(space, j))
    if value != 1:
        raise AssertionError(
            f"block {j} constant functional has norm {rat_format(value)}, not 1"
        )
    return value


@lru_cache(maxsize=None)
def _const_tv(space: SpaceDesc) -> Fraction:
    return _tv(space, Top(0))


# --- linear structure ------------------------------------------------------

def canonicalize(y: Element) -> Element:
    """Drop children that are recursively zero; equality is defined here."""
    kept = []
    for j, child in y.children:
        sub = canonicalize(child)
        if sub.children or sub.tail != 0:
            kept.append((j, sub))
    return Element(tuple(kept), y.tail)


def element_add(a: Element, b: Element) -> Element:
    """Pointwise sum of the represented functions, in canonical form."""
    return canonicalize(_add_raw(a, b))


def _add_raw(a: Element, b: Element) -> Element:
    merged = dict(a.children)
    for j, child in b.children:
        merged[j] = _add_raw(merged[j], child) if j in merged else child
    return Element(tuple(sorted(merged.items())), a.tail + b.tail)


def element_scale(c: Fraction | int, a: Element) -> Element:
    """Pointwise scalar multiple, in canonical form."""
    c = Fraction(c)
    if c == 0:
        return ZERO_ELEMENT
    return _scale_raw(c, canonicalize(a))


def _scale_raw(c: Fraction, a: Element) -> Element:
    return Element(
        tuple((j, _scale_raw(c, child)) for j, child in a.children),
        c * a.tail,
    )


def equals(a: Element, b: Element) -> bool:
    """Exact equality of the represented functions."""
    return canonicalize(a) == canonicalize(b)


def combine(coeffs: Mapping[BasisIndex, Fraction], space: SpaceDesc) -> Element:
    """Sum of coefficient * materialized vector over a finite index map."""
    total = ZERO_ELEMENT
    for i, c in sorted(coeffs.items(), key=lambda kv: index_sort_key(kv[0])):
        total = element_add(total, element_scale(c, materialize(space, i)))
    return total


def expand(space: SpaceDesc, y: Element) -> dict[BasisIndex, Fraction]:
    """Exact finite expansion of a tree in the basis of its space.

    Children expand recursively; their non-constant coefficients embed as
    InBlock coefficients. What remains is a block-constant profile, and the
    Top coefficients fall out of a triangular back-substitution over the
    full block constants q_j (child constant coefficient plus the ambient
    tail, or just the tail where no child sits): starting from the running
    sum S = tail, each step j emits (S - q_j)/2 and replaces S by
    (S + q_j)/2, finishing with the constant coefficient S itself.

    The result satisfies both soundness identities: summing it back
    reproduces ``y`` exactly, and every coefficient equals the value of the
    matching functional at ``y``. Zero coefficients are omitted.
    """
    validate_element(space, y)
    return _expand(space, canonicalize(y))


def _expand(space: SpaceDesc, y: Element) -> dict[BasisIndex, Fraction]:
    if space.alpha.is_zero:
        return {Top(0): y.tail} if y.tail != 0 else {}
    coeffs: dict[BasisIndex, Fraction] = {}
    children = y.child_map
    c = y.tail
    top = y.max_block
    block_constant: dict[int, Fraction] = {}
    for j in range(1, top + 1):
        if j in children:
            inner = _expand(block_space(space, j), children[j])
            block_constant[j] = inner.pop(Top(0), Fraction(0)) + c
            for idx, value in inner.items():
                coeffs[InBlock(j, idx)] = value
        else:
            block_constant[j] = c
    running = c
    for j in range(top, 0, -1):
        beta = (running - block_constant[j]) / 2
        running = (running + block_constant[j]) / 2
        if beta != 0:
            coeffs[Top(j)] = beta
    if running != 0:
        coeffs[Top(0)] = running
    return coeffs


# --- n-fold sums -----------------------------------------------------------

@dataclass(frozen=True)
class SumIndex:
    """Index of one copy's basis vector inside an n-fold sup-norm sum."""

    copy: int
    index: BasisIndex


SumElement = tuple[Element, ...]


class SumSystem:
    """Basis machinery for the n-fold sup-norm sum of a tree space.

    Basis vector (copy, i) places the single-space vector of i in that copy
    and zero elsewhere; its functional reads only that copy, which makes the
    cross-copy biorthogonality zeros exact. With one copy the system is the
    single-space system with indices wrapped in ``SumIndex``.
    """

    def __init__(self, desc: SpaceDesc):
        if desc.alpha.is_zero:
            raise ValueError("sum systems require alpha >= 1")
        self.desc = desc
        self.base = desc.single

    @property
    def copies(self) -> int:
        return self.desc.copies

    def indices(self, count: int) -> list[SumIndex]:
        if count <= 0:
            return []
        per_copy = -(-count // self.copies)
        stream = enumerate_indices(self.base, per_copy)
        out = [
            SumIndex(copy, i)
            for i in stream
            for copy in range(1, self.copies + 1)
        ]
        return out[:count]

    def zero(self) -> SumElement:
        return tuple(ZERO_ELEMENT for _ in range(self.copies))

    def validate(self, y: SumElement) -> None:
        if len(y) != self.copies:
            raise InvalidElementError(
                f"expected {self.copies} components, got {len(y)}"
            )
        for component in y:
            validate_element(self.base, component)

    def materialize(self, si: SumIndex) -> SumElement:
        self._check_copy(si)
        vector = materialize(self.base, si.index)
        return tuple(
            vector if copy == si.copy else ZERO_ELEMENT
            for copy in range(1, self.copies + 1)
        )

    def eval(self, si: SumIndex, y: SumElement) -> Fraction:
        self._check_copy(si)
        self.validate(y)
        if not validate_index(self.base, si.index):
            raise InvalidIndexError(
                f"{format_index(si.index)} is not an index of this space"
            )
        return _eval(self.base, si.index, y[si.copy - 1])

    def element_norm(self, y: SumElement) -> Fraction:
        self.validate(y)
        return max(element_norm(component) for component in y)

    def functional_norm(self, si: SumIndex) -> Fraction:
        self._check_copy(si)
        return functional_norm(self.base, si.index)

    def expand(self, y: SumElement) -> dict[SumIndex, Fraction]:
        self.validate(y)
        coeffs: dict[SumIndex, Fraction] = {}
        for copy, component in enumerate(y, start=1):
            for idx, value in expand(self.base, component).items():
                coeffs[SumIndex(copy, idx)] = value
        return coeffs

    def combine(self, coeffs: Mapping[SumIndex, Fraction]) -> SumElement:
        parts = [ZERO_ELEMENT] * self.copies
        for si, c in coeffs.items():
            self._check_copy(si)
            parts[si.copy - 1] = element_add(
                parts[si.copy - 1],
                element_scale(c, materialize(self.base, si.index)),
            )
        return tuple(parts)

    def _check_copy(self, si: SumIndex) -> None:
        if not 1 <= si.copy <= self.copies:
            raise ValueError(
                f"copy {si.copy} out of range 1..{self.copies}"
            )


# --- JSON forms -------------------------------------------------------------

def element_to_dict(y: Element) -> dict:
    return {
        "tail": rat_format(y.tail),
        "children": {str(j): element_to_dict(sub) for j, sub in y.children},
    }


def element_from_dict(data: dict) -> Element:
    if not isinstance(data, dict):
        raise ValueError("element must be a JSON object")
    tail = rat_parse(data.get("tail", "0"))
    children = {}
    for key, sub in (data.get("children") or {}).items():
        j = int(key)
        children[j] = element_from_dict(sub)
    return element(children, tail)


def sum_element_to_list(y: SumElement) -> list:
    return [element_to_dict(component) for component in y]


def sum_element_from_list(data: list, copies: int) -> SumElement:
    if not isinstance(data, list) or len(data) != copies:
        raise ValueError(f"expected a list of {copies} elements")
    return tuple(element_from_dict(item) for item in data)
