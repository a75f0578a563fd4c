"""Small exact Delsarte linear program on binary Hamming spaces.

Ground truth for everything else: each certified polynomial bound must
sit at or above the LP optimum, and the LP optimum at or above the size
of any explicit code. The primal solved here is

    maximize 1 + sum_{j=d}^{n} B_j
    subject to B_j >= 0 and sum_j B_j K_i(j) >= -C(n, i) for i = 1..n,

with integer Krawtchouk coefficients from the explicit alternating sum,
so the rational mode is exact end to end. Sizes are capped at n <= 14
where a dense Bland-rule simplex is instantaneous.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import NumericError, ValidationError


def krawtchouk(n: int, i: int, j: int) -> int:
    """Integer Krawtchouk value K_i(j) = sum_l (-1)^l C(j,l) C(n-j, i-l)."""
    return sum(
        (-1) ** l * math.comb(j, l) * math.comb(n - j, i - l)
        for l in range(max(0, i - (n - j)), min(i, j) + 1)
    )


@dataclass(frozen=True)
class LPSolution:
    """Optimum of one Delsarte LP instance."""

    n: int
    d: int
    value: object
    B: tuple
    status: str
    mode: str

    @property
    def value_float(self) -> float:
        return float(self.value)

    def to_json(self) -> dict:
        out = {
            "schema": 1,
            "n": self.n,
            "d": self.d,
            "value": float(self.value),
            "status": self.status,
            "mode": self.mode,
            "B": {str(j): float(v) for j, v in self.B},
        }
        if self.mode == "exact":
            out["value_exact"] = str(self.value)
        return out


def _simplex_max(A, b, c, exact: bool):
    """Dense tableau simplex for max c.x s.t. A.x <= b, x >= 0, b >= 0.

    Bland's smallest-index rule throughout, which cannot cycle; speed is
    irrelevant at these sizes. Returns (status, optimum, x).
    """
    m, nv = len(A), len(c)
    if exact:
        zero, eps = Fraction(0), Fraction(0)
        conv = Fraction
    else:
        zero, eps = 0.0, 1e-10
        conv = float
    ncols = nv + m + 1
    tab = []
    for i in range(m):
        row = [conv(v) for v in A[i]] + [zero] * m + [conv(b[i])]
        row[nv + i] = conv(1)
        tab.append(row)
    obj = [-conv(v) for v in c] + [zero] * m + [zero]
    basis = list(range(nv, nv + m))

    for _ in range(50000):
        col = next((j for j in range(ncols - 1) if obj[j] < -eps), None)
        if col is None:
            x = [zero] * (nv + m)
            for i, bv in enumerate(basis):
                x[bv] = tab[i][-1]
            return "optimal", obj[-1], x[:nv]
        pivot_row, best = None, None
        for i in range(m):
            if tab[i][col] > eps:
                ratio = tab[i][-1] / tab[i][col]
                if (
                    best is None
                    or ratio < best
                    or (ratio == best and basis[i] < basis[pivot_row])
                ):
                    pivot_row, best = i, ratio
        if pivot_row is None:
            return "unbounded", None, None
        piv = tab[pivot_row][col]
        tab[pivot_row] = [v / piv for v in tab[pivot_row]]
        for i in range(m):
            if i != pivot_row and tab[i][col] != zero:
                factor = tab[i][col]
                tab[i] = [v - factor * p for v, p in zip(tab[i], tab[pivot_row])]
        if obj[col] != zero:
            factor = obj[col]
            obj = [v - factor * p for v, p in zip(obj, tab[pivot_row])]
        basis[pivot_row] = col
    raise NumericError("simplex iteration cap exceeded")


def delsarte_lp(n: int, d: int, mode: str = "float") -> LPSolution:
    """LP optimum for binary codes of length n, minimum distance d."""
    if not (isinstance(n, int) and isinstance(d, int) and 1 <= d <= n <= 14):
        raise ValidationError(
            "delsarte_lp needs integers 1 <= d <= n <= 14, got n=%r d=%r" % (n, d)
        )
    if mode not in ("float", "exact"):
        raise ValidationError("mode must be 'float' or 'exact'")
    js = list(range(d, n + 1))
    A = [[-krawtchouk(n, i, j) for j in js] for i in range(1, n + 1)]
    b = [math.comb(n, i) for i in range(1, n + 1)]
    c = [1] * len(js)
    status, opt, x = _simplex_max(A, b, c, exact=(mode == "exact"))
    if status != "optimal":
        return LPSolution(n=n, d=d, value=math.inf, B=(), status=status, mode=mode)
    one = Fraction(1) if mode == "exact" else 1.0
    value = one + opt
    B = tuple((j, x[t]) for t, j in enumerate(js))
    return LPSolution(n=n, d=d, value=value, B=B, status="optimal", mode=mode)


def hamming_distance(u, v) -> int:
    if len(u) != len(v):
        raise ValidationError("length mismatch in hamming_distance")
    return sum(1 for a, b in zip(u, v) if a != b)


def min_distance(code) -> int:
    """Smallest pairwise Hamming distance, by exhaustive comparison."""
    return min(hamming_distance(u, v) for u, v in itertools.combinations(code, 2))


def repetition_code(n: int):
    return [(0,) * n, (1,) * n]


def even_weight_code(n: int):
    """All length-n words of even weight: 2^(n-1) words at distance 2."""
    return [w for w in itertools.product((0, 1), repeat=n) if sum(w) % 2 == 0]


def hamming_code_7_4():
    """The 16-word length-7 code of minimum distance 3."""
    gen = (
        (1, 0, 0, 0, 1, 1, 0),
        (0, 1, 0, 0, 1, 0, 1),
        (0, 0, 1, 0, 0, 1, 1),
        (0, 0, 0, 1, 1, 1, 1),
    )
    words = []
    for bits in itertools.product((0, 1), repeat=4):
        word = tuple(
            sum(bit * row[t] for bit, row in zip(bits, gen)) % 2 for t in range(7)
        )
        words.append(word)
    return words
