"""Norm-one biorthogonal basis for eventually-constant vector sequences.

Members are sequences in a d-dimensional sup-norm space that are constant
from some point on, stored as an explicit prefix plus the limit vector. The
basis is the product of dyadically weighted scalar profiles with the
standard coordinate basis: profile 0 is the all-ones sequence, profile
n >= 1 is the step (0, ..., 0, -1, 1, 1, ...) with the -1 at position n.
Functionals pair each profile's dyadic weights with the coordinate
functional, tails summed in closed form.

Profile 0 is essential: without its row, the triangular system for a
constant-profile target (s, t, t, ...) forces a running sum that doubles its
error at every step, so such targets with s != -t are unreachable by finite
combinations of the step profiles alone. :func:`profile_tail_mismatch`
exposes that defect computationally.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .rationals import geom_tail, pow2, rat_format, rat_parse


@dataclass(frozen=True)
class CXIndex:
    """Basis index: profile level n >= 0 and coordinate m in 1..d."""

    level: int
    coord: int


@dataclass(frozen=True)
class CXVector:
    """Eventually-constant sequence of d-vectors: explicit prefix + limit."""

    entries: tuple[tuple[Fraction, ...], ...]
    tail: tuple[Fraction, ...]

    @property
    def prefix_len(self) -> int:
        return len(self.entries)

    def term(self, k: int) -> tuple[Fraction, ...]:
        """k-th sequence member, 1-based; the tail vector beyond the prefix."""
        if k < 1:
            raise ValueError("sequence positions are 1-based")
        return self.entries[k - 1] if k <= len(self.entries) else self.tail


def cx_vector(entries: Sequence[Sequence[Fraction]], tail: Sequence[Fraction]) -> CXVector:
    d = len(tail)
    rows = tuple(tuple(Fraction(x) for x in row) for row in entries)
    if any(len(row) != d for row in rows):
        raise ValueError("entry vectors must match the tail dimension")
    return CXVector(rows, tuple(Fraction(x) for x in tail))


class CXSystem:
    """Basis machinery for eventually-constant sequences valued in R^d."""

    def __init__(self, d: int):
        if d < 1:
            raise ValueError("the value space needs dimension >= 1")
        self.d = d

    def indices(self, count: int) -> list[CXIndex]:
        """Level-by-level enumeration: (0,1)..(0,d), (1,1)..(1,d), ..."""
        out = []
        level = 0
        while len(out) < count:
            for m in range(1, self.d + 1):
                out.append(CXIndex(level, m))
            level += 1
        return out[:count]

    def _unit(self, m: int) -> tuple[Fraction, ...]:
        return tuple(
            Fraction(1) if c == m else Fraction(0)
            for c in range(1, self.d + 1)
        )

    def _zero(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(0) for _ in range(self.d))

    def validate_index(self, i: CXIndex) -> bool:
        return i.level >= 0 and 1 <= i.coord <= self.d

    def materialize(self, i: CXIndex) -> CXVector:
        if not self.validate_index(i):
            raise ValueError(f"({i.level}, {i.coord}) is not an index")
        unit = self._unit(i.coord)
        if i.level == 0:
            return CXVector((), unit)
        prefix = [self._zero()] * (i.level - 1)
        prefix.append(tuple(-x for x in unit))
        return CXVector(tuple(prefix), unit)

    def eval(self, i: CXIndex, y: CXVector) -> Fraction:
        """Exact functional value; the constant tail sums in closed form."""
        if not self.validate_index(i):
            raise ValueError(f"({i.level}, {i.coord}) is not an index")
        if len(y.tail) != self.d:
            raise ValueError("vector dimension mismatch")
        m = i.coord - 1
        n = i.level
        limit = y.tail[m]
        if n == 0:
            total = Fraction(0)
            for k in range(1, y.prefix_len + 1):
                total += pow2(-k) * y.term(k)[m]
            return total + limit * geom_tail(y.prefix_len + 1, 0)
        horizon = max(y.prefix_len, n)
        total = -y.term(n)[m] / 2
        for k in range(n + 1, horizon + 1):
            total += pow2(n - k - 1) * y.term(k)[m]
        return total + limit * geom_tail(horizon + 1, n - 1)

    def vector_norm(self, y: CXVector) -> Fraction:
        """Sup over all sequence members of the max-abs coordinate."""
        values = [abs(x) for x in y.tail]
        for row in y.entries:
            values.extend(abs(x) for x in row)
        return max(values)

    def functional_norm(self, i: CXIndex) -> Fraction:
        """Sum of absolute dyadic weights; exactly 1 for every index."""
        if not self.validate_index(i):
            raise ValueError(f"({i.level}, {i.coord}) is not an index")
        if i.level == 0:
            return geom_tail(1, 0)
        return Fraction(1, 2) + geom_tail(i.level + 1, i.level - 1)


def profile_tail_mismatch(s: Fraction, t: Fraction, rows: int) -> Fraction:
    """Residual tail error when targeting (s, t, t, ...) without profile 0.

    Solving the triangular system over step profiles 1..rows to match the
    first ``rows`` sequence entries leaves the running coefficient sum at
    t + 2**(rows-1) * (-s - t) instead of the required t; the returned
    mismatch is zero exactly when s = -t, so every other constant-tailed
    profile needs the all-ones row.
    """
    if rows < 1:
        raise ValueError("need at least one row")
    s, t = Fraction(s), Fraction(t)
    running = -s
    for _ in range(2, rows + 1):
        beta = running - t
        running += beta
    return running - t


# --- JSON form ---------------------------------------------------------------

def cx_vector_to_dict(y: CXVector) -> dict:
    return {
        "entries": [[rat_format(x) for x in row] for row in y.entries],
        "tail_vector": [rat_format(x) for x in y.tail],
    }


def cx_vector_from_dict(data: dict) -> CXVector:
    if not isinstance(data, dict) or "tail_vector" not in data:
        raise ValueError("vector file needs 'entries' and 'tail_vector'")
    tail = [rat_parse(x) for x in data["tail_vector"]]
    entries = [[rat_parse(x) for x in row] for row in data.get("entries", [])]
    return cx_vector(entries, tail)
