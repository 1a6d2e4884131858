"""Ordinals below omega**omega in Cantor normal form, and space descriptors.

An ordinal is a strictly decreasing list of (exponent, coefficient) terms;
the text grammar writes ``w^2*3+w+5`` for omega**2*3 + omega + 5. Limit
ordinals get a fixed fundamental sequence so that every recursively built
block structure is deterministic. A :class:`SpaceDesc` names the n-fold
sup-norm sum of the tree space attached to an ordinal; ``alpha = 0`` is the
scalar base space and only ever appears as a block of the alpha = 1 space.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import total_ordering


class OrdinalParseError(ValueError):
    """Raised for text outside the ordinal grammar or non-canonical forms."""


@total_ordering
@dataclass(frozen=True)
class Ordinal:
    """Cantor normal form: terms (exponent, coefficient), exponents strictly
    decreasing, coefficients positive; the empty sum is 0."""

    terms: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        previous = None
        for exponent, coefficient in self.terms:
            if exponent < 0 or coefficient < 1:
                raise ValueError(f"bad CNF term ({exponent}, {coefficient})")
            if previous is not None and exponent >= previous:
                raise ValueError("CNF exponents must strictly decrease")
            previous = exponent

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_successor(self) -> bool:
        return bool(self.terms) and self.terms[-1][0] == 0

    @property
    def is_limit(self) -> bool:
        return bool(self.terms) and self.terms[-1][0] > 0

    def __lt__(self, other: "Ordinal") -> bool:
        return self.terms < other.terms

    def __str__(self) -> str:
        return ord_format(self)


ZERO = Ordinal()
ONE = Ordinal(((0, 1),))
OMEGA = Ordinal(((1, 1),))


def natural(n: int) -> Ordinal:
    if n < 0:
        raise ValueError("ordinals are non-negative")
    return Ordinal(((0, n),)) if n else ZERO


_TERM_RE = re.compile(r"^(?:w(?:\^(\d+))?(?:\*(\d+))?|(\d+))$")


def ord_parse(text: str) -> Ordinal:
    """Parse ``term ('+' term)*`` with term = w^NAT[*NAT] | w[*NAT] | NAT.

    The terms must already be in canonical order (strictly decreasing
    exponents, positive coefficients); "0" alone denotes the zero ordinal.
    """
    if not isinstance(text, str) or not text.strip():
        raise OrdinalParseError("empty ordinal text")
    text = text.strip()
    if text == "0":
        return ZERO
    terms: list[tuple[int, int]] = []
    for piece in text.split("+"):
        match = _TERM_RE.match(piece)
        if not match:
            raise OrdinalParseError(f"bad ordinal term: {piece!r}")
        exp_text, coeff_text, nat_text = match.groups()
        if nat_text is not None:
            exponent, coefficient = 0, int(nat_text)
        else:
            exponent = int(exp_text) if exp_text is not None else 1
            coefficient = int(coeff_text) if coeff_text is not None else 1
        if coefficient == 0:
            raise OrdinalParseError(f"zero coefficient in term {piece!r}")
        if terms and exponent >= terms[-1][0]:
            raise OrdinalParseError(
                f"non-canonical ordinal: exponent {exponent} does not decrease"
            )
        terms.append((exponent, coefficient))
    return Ordinal(tuple(terms))


def ord_format(o: Ordinal) -> str:
    """Canonical text form; inverse of :func:`ord_parse` on its output."""
    if o.is_zero:
        return "0"
    pieces = []
    for exponent, coefficient in o.terms:
        if exponent == 0:
            pieces.append(str(coefficient))
            continue
        head = "w" if exponent == 1 else f"w^{exponent}"
        pieces.append(head if coefficient == 1 else f"{head}*{coefficient}")
    return "+".join(pieces)


def classify(o: Ordinal) -> str:
    """'zero', 'successor', or 'limit'."""
    if o.is_zero:
        return "zero"
    return "successor" if o.is_successor else "limit"


def predecessor(o: Ordinal) -> Ordinal:
    """The ordinal just below a successor."""
    if not o.is_successor:
        raise ValueError(f"{o} is not a successor ordinal")
    exponent, coefficient = o.terms[-1]
    head = o.terms[:-1]
    if coefficient > 1:
        return Ordinal(head + ((exponent, coefficient - 1),))
    return Ordinal(head)


def fundamental_seq(beta: Ordinal, j: int) -> Ordinal:
    """j-th member of the canonical increasing sequence with supremum beta.

    Writing beta = gamma + w^m * c with m >= 1, the j-th member is
    gamma + w^m*(c-1) + w^(m-1)*j; it strictly increases in j.
    """
    if not beta.is_limit:
        raise ValueError(f"{beta} is not a limit ordinal")
    if j < 1:
        raise ValueError("sequence positions are 1-based")
    m, c = beta.terms[-1]
    head = beta.terms[:-1]
    if c > 1:
        head = head + ((m, c - 1),)
    return Ordinal(head + ((m - 1, j),))


@dataclass(frozen=True)
class SpaceDesc:
    """n-fold sup-norm sum of the tree space of an ordinal.

    User-facing descriptors require alpha >= 1; alpha = 0 names the scalar
    base space that shows up as the block space of alpha = 1.
    """

    alpha: Ordinal
    copies: int = 1

    def __post_init__(self) -> None:
        if self.copies < 1:
            raise ValueError("a space has at least one copy")

    @property
    def single(self) -> "SpaceDesc":
        return self if self.copies == 1 else SpaceDesc(self.alpha, 1)


def block_space(desc: SpaceDesc, j: int) -> SpaceDesc:
    """Space of block j inside the tree space of ``desc``.

    Successor ordinals use the predecessor space for every block; limit
    ordinals follow the fundamental sequence, so the blocks climb toward the
    limit. Block indices are 1-based.
    """
    if desc.copies != 1:
        raise ValueError("block structure is defined on a single copy")
    if j < 1:
        raise ValueError("block indices are 1-based")
    if desc.alpha.is_zero:
        raise ValueError("the scalar space has no blocks")
    if desc.alpha.is_successor:
        return SpaceDesc(predecessor(desc.alpha))
    return SpaceDesc(fundamental_seq(desc.alpha, j))


def space_to_dict(desc: SpaceDesc) -> dict:
    return {"alpha": ord_format(desc.alpha), "copies": desc.copies}


def space_from_dict(data: dict) -> SpaceDesc:
    if not isinstance(data, dict) or "alpha" not in data:
        raise ValueError("space descriptor needs an 'alpha' field")
    alpha = ord_parse(data["alpha"])
    copies = int(data.get("copies", 1))
    return SpaceDesc(alpha, copies)
