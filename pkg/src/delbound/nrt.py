"""Ordered Hamming space combinatorics.

Vectors live in n blocks of length r over the alphabet Z_q. The shape of
a vector counts blocks by the position of their rightmost nonzero entry;
shapes index the distance classes of the space the way plain Hamming
weight classes do for r = 1, and the metric is the shape-weighted sum
sum_i i e_i. Weights w(e) are exact rationals so counting identities can
be asserted with equality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ValidationError

_ENUM_BUDGET = 10 ** 6


@dataclass(frozen=True)
class ShapeVector:
    """Counts (e_1, ..., e_r) of blocks by rightmost-nonzero position."""

    e: tuple
    r: int
    n: int

    def __post_init__(self):
        if len(self.e) != self.r:
            raise ValidationError("shape needs exactly r entries")
        if any((not isinstance(v, int)) or v < 0 for v in self.e):
            raise ValidationError("shape entries must be nonnegative integers")
        if sum(self.e) > self.n:
            raise ValidationError("shape entries sum past the number of blocks")

    @property
    def e0(self) -> int:
        return self.n - sum(self.e)


def _compositions(r: int, limit: int):
    if r == 0:
        yield ()
        return
    for first in range(limit + 1):
        for rest in _compositions(r - 1, limit - first):
            yield (first,) + rest


def enumerate_shapes(r: int, n: int):
    """All shapes for n blocks of length r, lexicographic, C(n+r, r) many."""
    if r < 1 or n < 1:
        raise ValidationError("enumerate_shapes needs r >= 1 and n >= 1")
    total = math.comb(n + r, r)
    if total > _ENUM_BUDGET:
        raise ValidationError(
            "shape enumeration budget exceeded: C(%d, %d) = %d" % (n + r, r, total)
        )
    out = [ShapeVector(e=e, r=r, n=n) for e in _compositions(r, n)]
    assert len(out) == total
    return out


def shape_of(x, r: int) -> ShapeVector:
    """Shape of a vector given as a flat sequence of n blocks of length r."""
    x = tuple(x)
    if r < 1 or len(x) % r != 0:
        raise ValidationError("vector length must be a positive multiple of r")
    n = len(x) // r
    counts = [0] * r
    for block_start in range(0, len(x), r):
        block = x[block_start : block_start + r]
        rightmost = 0
        for pos in range(r, 0, -1):
            if block[pos - 1] != 0:
                rightmost = pos
                break
        if rightmost > 0:
            counts[rightmost - 1] += 1
    return ShapeVector(e=tuple(counts), r=r, n=n)


def shape_weight(e: ShapeVector, q: int) -> Fraction:
    """Probability w(e) of the shape under the uniform measure, exact.

    Block probabilities are p_i = (q-1) q^(i-r-1) for i >= 1 and
    p_0 = q^-r; w(e) is the multinomial n! prod p_i^{e_i} / e_i!.
    """
    if q < 2:
        raise ValidationError("alphabet size must be at least 2")
    r, n = e.r, e.n
    w = Fraction(math.factorial(n))
    w *= Fraction(1, q ** r) ** e.e0 / math.factorial(e.e0)
    for i in range(1, r + 1):
        ei = e.e[i - 1]
        w *= Fraction(q - 1, q ** (r + 1 - i)) ** ei / math.factorial(ei)
    return w


def nrt_weight(x, r: int) -> int:
    """sum_i i e_i of the vector's shape."""
    shape = shape_of(x, r)
    return sum(i * shape.e[i - 1] for i in range(1, r + 1))


def nrt_distance(x, y, q: int, r: int) -> int:
    """Shape-weighted distance between two vectors over Z_q."""
    x, y = tuple(x), tuple(y)
    if len(x) != len(y):
        raise ValidationError("dimension mismatch: %d vs %d" % (len(x), len(y)))
    diff = tuple((a - b) % q for a, b in zip(x, y))
    return nrt_weight(diff, r)
