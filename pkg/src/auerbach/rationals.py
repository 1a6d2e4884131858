"""Exact rational scalars: parsing, formatting, and dyadic tail sums.

Every numeric quantity in this package is a :class:`fractions.Fraction`;
nothing is ever rounded. Text emission always uses the lowest-terms fraction
form, with integers written without a denominator.
"""

from __future__ import annotations

import re
from fractions import Fraction

Rat = Fraction

_FRACTION_RE = re.compile(r"^-?[0-9]+(?:/[0-9]+)?$")
_DECIMAL_RE = re.compile(r"^-?[0-9]+\.[0-9]+$")


class RationalParseError(ValueError):
    """Raised for text outside the rational grammar."""


def rat_parse(text: str) -> Fraction:
    """Parse ``['-'] digits ['/' digits]`` or a finite decimal literal.

    Decimal literals convert exactly ("0.125" -> 1/8). A fraction literal
    must have a nonzero denominator.
    """
    if not isinstance(text, str):
        raise RationalParseError(f"expected string, got {type(text).__name__}")
    if _FRACTION_RE.match(text):
        num, _, den = text.partition("/")
        if den:
            if int(den) == 0:
                raise RationalParseError(f"zero denominator in {text!r}")
            return Fraction(int(num), int(den))
        return Fraction(int(num))
    if _DECIMAL_RE.match(text):
        return Fraction(text)
    raise RationalParseError(f"not a rational literal: {text!r}")


def rat_format(value: Fraction) -> str:
    """Lowest-terms text form; integers print without a denominator."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def pow2(exponent: int) -> Fraction:
    """2**exponent as an exact rational; the exponent may be negative."""
    return Fraction(2) ** exponent


def geom_tail(start: int, shift: int) -> Fraction:
    """Closed form of the dyadic tail sum of 2**(shift - j) over j >= start.

    Equals 2**(shift - start + 1). ``start`` must be at least 1; the shift
    may be any integer.
    """
    if start < 1:
        raise ValueError(f"tail must start at index >= 1, got {start}")
    return pow2(shift - start + 1)
