"""Membership tests for the feasible cone of the linear programming bound.

A polynomial f qualifies at parameter s when f <= 0 on [-1, s], its mean
fhat_0 is strictly positive, and every other Fourier coefficient in the
base orthonormal system is nonnegative. cone_certificate audits all three
conditions and returns an immutable, serializable verdict; nothing in this
package reports a bound without a passing certificate attached.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .orthopoly import discrete_basis_table, eval_basis_table
from .spaces import MeasureSpec, Variant, max_degree, node_weights, quadrature


@dataclass(frozen=True)
class Tolerances:
    """Acceptance slacks for the three cone conditions.

    coeff: how far below zero a coefficient fhat_i (i >= 1) may dip.
    pos: how much of fhat_0 must be strictly positive.
    sign: how far above zero f may rise on the audit set.
    """

    coeff: float = 1e-9
    pos: float = 1e-12
    sign: float = 1e-9

    def to_json(self) -> dict:
        return {"coeff": self.coeff, "pos": self.pos, "sign": self.sign}


def fourier_expand(spec: MeasureSpec, f, n: int) -> np.ndarray:
    """Coefficients fhat_0..fhat_n of f in the base orthonormal system.

    Discrete measures are summed exactly over their nodes; continuous ones
    use a Gauss rule exact through degree 2n, so the expansion of any
    polynomial of degree <= n is exact up to rounding.
    """
    if n < 0:
        raise ValidationError("expansion degree must be nonnegative")
    if spec.discrete:
        cap = max_degree(spec, Variant.BASE)
        if n > cap:
            raise ValidationError(
                "a %d-node measure determines only %d coefficients; degree %d "
                "overflows" % (cap + 1, cap + 1, n)
            )
        x, w = node_weights(spec, Variant.BASE)
        table = discrete_basis_table(spec, Variant.BASE)[: n + 1]
        return table @ (w * np.asarray(f(x), dtype=float))
    x, w = quadrature(spec, Variant.BASE, n + 1)
    table = eval_basis_table(spec, Variant.BASE, n, x)
    return table @ (w * np.asarray(f(x), dtype=float))


@dataclass(frozen=True)
class ConeCertificate:
    """Auditable record of a cone membership decision."""

    s: float
    fhat: tuple
    min_coeff_index: int
    min_coeff_value: float
    max_on_audit: float
    argmax: float
    audit_size: int
    tolerances: Tolerances
    verdict: str
    reason: str | None = None

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "verdict": self.verdict,
            "reason": self.reason,
            "s": self.s,
            "fhat": list(self.fhat),
            "min_coeff_index": self.min_coeff_index,
            "min_coeff_value": self.min_coeff_value,
            "max_on_audit": self.max_on_audit,
            "argmax": self.argmax,
            "audit_size": self.audit_size,
            "tolerances": self.tolerances.to_json(),
        }

    @property
    def certificate_id(self) -> str:
        canonical = json.dumps(self.to_json(), sort_keys=True)
        return hashlib.sha256(canonical.encode()).hexdigest()[:12]


def _audit_points(spec: MeasureSpec, f, s: float, degree: int) -> np.ndarray:
    """Points of [-1, s] where the sign of f is checked.

    For a discrete measure the support nodes inside [-1, s] decide the
    question exactly: the bound theorem constrains f only at attainable
    distances, so node values are necessary and sufficient there. On a
    continuous measure the condition is interval-wide, so the audit takes
    a 2048-point uniform grid, both endpoints, and every stationary point
    of f inside the interval, located by bisection on sign changes of the
    derivative.
    """
    if spec.discrete:
        x = np.array(spec.nodes)
        pts = x[x <= s]
        if pts.size == 0:
            pts = np.array([-1.0])
        return pts
    grid = np.linspace(-1.0, s, 2048)
    stationary = _stationary_points(f, s, degree)
    return np.concatenate([grid, stationary])


def _stationary_points(f, s: float, degree: int) -> np.ndarray:
    """Roots of f' in [-1, s] via a fine sign grid plus bisection.

    The derivative comes from an exact-degree Chebyshev fit of f, so for
    the polynomials used here it is the true derivative up to rounding.
    """
    deg = max(degree, 1)
    xs = np.cos(np.pi * np.arange(deg + 1) / deg)
    cheb = np.polynomial.chebyshev.Chebyshev.fit(xs, np.asarray(f(xs)), deg)
    dcheb = cheb.deriv()
    fine = np.linspace(-1.0, s, 8192)
    vals = dcheb(fine)
    sign = np.sign(vals)
    flips = np.nonzero(sign[:-1] * sign[1:] < 0)[0]
    roots = []
    for i in flips:
        lo, hi = fine[i], fine[i + 1]
        flo = dcheb(lo)
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            fm = dcheb(mid)
            if flo * fm <= 0:
                hi = mid
            else:
                lo, flo = mid, fm
            if hi - lo < 1e-13:
                break
        roots.append(0.5 * (lo + hi))
    exact_hits = fine[vals == 0.0]
    if exact_hits.size:
        roots.extend(exact_hits.tolist())
    return np.array(roots) if roots else np.empty(0)


def cone_certificate(
    spec: MeasureSpec, f, s: float, tolerances: Tolerances | None = None
) -> ConeCertificate:
    """Audit f against the cone conditions at parameter s.

    f must be callable on arrays. A degree attribute on f bounds the
    expansion; without one, a discrete space expands over its full basis
    (exact for any function on the nodes) while a continuous space has no
    such fallback and refuses.
    """
    if not (-1.0 <= s < 1.0):
        raise ValidationError("cone parameter s must lie in [-1, 1), got %r" % (s,))
    tol = tolerances or Tolerances()
    degree = getattr(f, "degree", None)
    if spec.discrete:
        cap = max_degree(spec, Variant.BASE)
        degree = cap if degree is None else min(int(degree), cap)
    elif degree is None:
        raise ValidationError(
            "certificates on continuous spaces need f to carry a degree"
        )
    else:
        degree = int(degree)
    fhat = fourier_expand(spec, f, degree)

    tail = fhat[1:]
    if tail.size:
        min_idx = int(np.argmin(tail)) + 1
        min_val = float(tail[min_idx - 1])
    else:
        min_idx, min_val = 0, float(fhat[0])

    audit = _audit_points(spec, f, s, degree)
    vals = np.asarray(f(audit), dtype=float)
    arg = int(np.argmax(vals))
    max_val = float(vals[arg])
    argmax = float(audit[arg])

    verdict, reason = "pass", None
    if not (fhat[0] > tol.pos):
        verdict = "fail"
        reason = "fhat_0 = %.6e is not positive beyond tolerance %g" % (fhat[0], tol.pos)
    elif tail.size and min_val < -tol.coeff:
        verdict = "fail"
        reason = "fhat_%d = %.6e is negative beyond tolerance %g" % (
            min_idx,
            min_val,
            tol.coeff,
        )
    elif max_val > tol.sign:
        verdict = "fail"
        reason = "f(%.6g) = %.6e exceeds 0 beyond tolerance %g on [-1, s]" % (
            argmax,
            max_val,
            tol.sign,
        )

    return ConeCertificate(
        s=float(s),
        fhat=tuple(float(v) for v in fhat),
        min_coeff_index=min_idx,
        min_coeff_value=min_val,
        max_on_audit=max_val,
        argmax=argmax,
        audit_size=int(audit.size),
        tolerances=tol,
        verdict=verdict,
        reason=reason,
    )
