"""Measure spaces on [-1, 1] and their moment functionals.

A space is described by a MeasureSpec: either a discrete measure given by
nodes and weights (binary Hamming space), a continuous measure realized
through Gauss quadrature generated from its own recurrence coefficients
(unit sphere), or a user-supplied recurrence (custom).

Besides the base measure dmu, two modified measures are used throughout:

    minus      (1 - x) dmu
    plusminus  (1 - x^2) dmu

Both are kept unnormalized; the orthonormal systems built on them absorb
the total mass into their constant term.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError


class Variant(enum.Enum):
    """Which measure a computation runs against."""

    BASE = "base"
    MINUS = "minus"
    PLUSMINUS = "plusminus"


@dataclass(frozen=True)
class MeasureSpec:
    """Immutable description of a measure on [-1, 1].

    kind is one of "hamming", "sphere", "custom". Discrete measures carry
    explicit nodes and weights; continuous ones are defined entirely by
    recurrence coefficients (closed-form for the sphere, user-supplied for
    custom) and integrated by Gauss rules of exact order.
    """

    kind: str
    params: tuple
    nodes: tuple | None = None
    weights: tuple | None = None
    ab: tuple | None = None

    @property
    def discrete(self) -> bool:
        return self.nodes is not None

    def label(self) -> str:
        if self.params:
            return "%s:%s" % (self.kind, ":".join(str(p) for p in self.params))
        return self.kind

    def to_json(self) -> dict:
        out = {"kind": self.kind, "params": list(self.params)}
        if self.discrete:
            out["nodes"] = list(self.nodes)
            out["weights"] = list(self.weights)
        return out


def hamming_space(n: int) -> MeasureSpec:
    """Binary Hamming space of length n, as a measure on [-1, 1].

    Nodes are x_j = 1 - 2j/n for j = 0..n and the weight of x_j is
    C(n, j) 2^-n, the distance distribution of the whole space.
    """
    if not isinstance(n, int) or n < 1:
        raise ValidationError("hamming_space requires an integer n >= 1, got %r" % (n,))
    nodes = tuple((n - 2 * j) / n for j in range(n + 1))
    denom = 2 ** n
    weights = tuple(math.comb(n, j) / denom for j in range(n + 1))
    return MeasureSpec(kind="hamming", params=(n,), nodes=nodes, weights=weights)


def sphere_space(d: int) -> MeasureSpec:
    """Unit sphere in R^d, projected to the inner-product variable.

    The induced measure on [-1, 1] has density proportional to
    (1 - x^2)^((d-3)/2). Nothing is stored beyond d; all integration is
    done by Gauss rules built from the recurrence coefficients.
    """
    if not isinstance(d, int) or d < 3:
        raise ValidationError("sphere_space requires an integer d >= 3, got %r" % (d,))
    return MeasureSpec(kind="sphere", params=(d,))


def custom_space(a, b) -> MeasureSpec:
    """Measure defined only through orthonormal recurrence coefficients.

    The caller supplies a_0..a_{M-1} and b_0..b_{M-1}; polynomials up to
    degree M are then available. The measure is treated as continuous and
    integrated by Gauss rules derived from these coefficients.
    """
    a = tuple(float(v) for v in a)
    b = tuple(float(v) for v in b)
    if len(a) != len(b):
        raise ValidationError("custom_space needs equally long a and b sequences")
    if not a:
        raise ValidationError("custom_space needs at least one coefficient pair")
    if any(v <= 0 for v in a):
        raise ValidationError("custom_space off-diagonal coefficients must be positive")
    return MeasureSpec(kind="custom", params=(), ab=(a, b))


def variant_multiplier(variant: Variant, x):
    """Pointwise density of the variant measure against the base one."""
    x = np.asarray(x, dtype=float)
    if variant is Variant.BASE:
        return np.ones_like(x)
    if variant is Variant.MINUS:
        return 1.0 - x
    if variant is Variant.PLUSMINUS:
        return (1.0 - x) * (1.0 + x)
    raise ValidationError("unknown variant %r" % (variant,))


def node_weights(spec: MeasureSpec, variant: Variant):
    """Nodes and variant-adjusted weights of a discrete measure."""
    if not spec.discrete:
        raise ValidationError("node_weights is only defined for discrete measures")
    x = np.array(spec.nodes, dtype=float)
    w = np.array(spec.weights, dtype=float) * variant_multiplier(variant, x)
    return x, w


def max_degree(spec: MeasureSpec, variant: Variant = Variant.BASE):
    """Largest usable polynomial degree for the given system, or None.

    A discrete measure supported on m points determines orthonormal
    polynomials up to degree m - 1 only; the minus and plusminus variants
    kill one and two support points respectively. Continuous measures have
    no cap (None), except custom recurrences which end where the supplied
    coefficients do.
    """
    if spec.discrete:
        _, w = node_weights(spec, variant)
        return int(np.count_nonzero(w > 0.0)) - 1
    if spec.kind == "custom":
        return len(spec.ab[0])
    return None


def variant_mass(spec: MeasureSpec, variant: Variant) -> float:
    """Total mass of the variant measure (1 for any base measure)."""
    if variant is Variant.BASE:
        return 1.0
    return moment_functional(
        spec, Variant.BASE, lambda x: variant_multiplier(variant, x), degree=2
    )


def moment_functional(spec: MeasureSpec, variant: Variant, f, degree: int) -> float:
    """Evaluate F(f), F^-(f) or F^+-(f) for a polynomial evaluator f.

    The degree bound lets the continuous path pick a Gauss rule that is
    exact for the integrand; discrete measures are summed exactly.
    """
    if spec.discrete:
        x, w = node_weights(spec, variant)
        vals = np.asarray(f(x), dtype=float)
        out = float(np.dot(w, vals))
    else:
        total = degree + (0 if variant is Variant.BASE else 2)
        m = total // 2 + 1
        x, w = quadrature(spec, variant, m)
        vals = np.asarray(f(x), dtype=float)
        out = float(np.dot(w, vals))
    if not math.isfinite(out):
        from .errors import NumericError

        raise NumericError("moment functional overflowed for %s" % spec.label())
    return out


def quadrature(spec: MeasureSpec, variant: Variant, m: int):
    """m-point Gauss rule for the (possibly unnormalized) variant measure.

    Nodes are the eigenvalues of the order-m truncation of the measure's
    Jacobi matrix; weights are the Christoffel numbers 1 / K_{m-1}(x, x).
    Exact for polynomials of degree <= 2m - 1. The weights sum to the
    variant's total mass, so unnormalized variants integrate as such.
    """
    if m < 1:
        raise ValidationError("quadrature needs m >= 1")
    cap = max_degree(spec, variant)
    if cap is not None and m > cap + 1:
        raise ValidationError(
            "quadrature order %d exceeds the %d-point support of %s/%s"
            % (m, cap + 1, spec.label(), variant.value)
        )
    from . import orthopoly

    rc = orthopoly.recurrence_coeffs(spec, variant, m - 1)
    if m == 1:
        return np.array([rc.b[0]]), np.array([rc.mass])
    nodes = orthopoly.tridiagonal_eigenvalues(rc.b[:m], rc.a[: m - 1])
    table = orthopoly.eval_basis_table(spec, variant, m - 1, nodes)
    weights = 1.0 / np.sum(table * table, axis=0)
    return nodes, weights
