"""Extremal polynomials and the code-size bound f(1)/fhat_0.

Three families are built here, all normalized to f(1) = 1:

    mrrw      (x - s) K_k(x, s)^2            over the base kernel
    lev_odd   (x - s) K_k^-(x, s)^2          over the minus kernel
    lev_even  (x - s)(x + 1) K_k^+-(x, s)^2  over the plusminus kernel

Construction never asserts cone membership; the feasibility module owns
that decision, and bound_for_distance refuses to return a value without a
passing certificate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegreeBudgetError,
    NotCertifiedError,
    NumericError,
    SingularOperatorError,
    ValidationError,
)
from .feasibility import ConeCertificate, Tolerances, cone_certificate, fourier_expand
from .orthopoly import (
    discrete_basis_table,
    eval_basis_table,
    largest_zero,
    recurrence_coeffs,
)
from .spaces import MeasureSpec, Variant, max_degree, node_weights

_WINDOW_TIE_TOL = 1e-12
_LEV_DEGREE_CAP = 128


@dataclass(frozen=True)
class BoundPolynomial:
    """A candidate polynomial for the code-size bound, with f(1) = 1."""

    method: str
    degree: int
    s: float
    c: float
    fhat: tuple
    eval_fn: object = field(repr=False, compare=False)
    k: int | None = None

    def __call__(self, x):
        out = self.eval_fn(np.atleast_1d(np.asarray(x, dtype=float)))
        return float(out[0]) if np.isscalar(x) else out


@dataclass(frozen=True)
class BoundResult:
    """A certified bound value together with everything needed to audit it."""

    method: str
    space: MeasureSpec
    s: float
    degree: int
    bound: float
    certificate: ConeCertificate
    d: int | None = None
    closed_form: float | None = None
    baselines: tuple = ()

    def __post_init__(self):
        if not self.certificate.passed:
            raise NotCertifiedError(
                "refusing to build a BoundResult on a failed certificate: %s"
                % self.certificate.reason,
                certificate=self.certificate,
            )

    def to_json(self) -> dict:
        out = {
            "schema": 1,
            "space": self.space.label(),
            "method": self.method,
            "s": self.s,
            "degree": self.degree,
            "bound": self.bound,
            "certificate_id": self.certificate.certificate_id,
            "baselines": {k: v for k, v in self.baselines},
        }
        if self.space.kind == "hamming":
            out["n"] = self.space.params[0]
        if self.d is not None:
            out["d"] = self.d
        if self.closed_form is not None:
            out["closed_form"] = self.closed_form
        return out


def _kernel_values(spec, basis, k, s, x):
    ps = eval_basis_table(spec, basis, k, s)[:, 0]
    return ps @ eval_basis_table(spec, basis, k, x)


def _expand_degree(spec: MeasureSpec, degree: int) -> int:
    if spec.discrete:
        return min(degree, max_degree(spec, Variant.BASE))
    return degree


def _finish_poly(spec, method, k, s, degree, raw_eval) -> BoundPolynomial:
    raw_at_one = float(raw_eval(np.array([1.0]))[0])
    if raw_at_one == 0.0:
        raise SingularOperatorError(
            "%s normalization undefined: f(1) = 0 at k=%d, s=%r" % (method, k, s)
        )
    c = 1.0 / raw_at_one
    if not math.isfinite(c):
        raise NumericError("%s normalization overflowed at k=%d, s=%r" % (method, k, s))

    def eval_fn(x, _c=c, _raw=raw_eval):
        return _c * _raw(x)

    fhat = fourier_expand(spec, eval_fn, _expand_degree(spec, degree))
    return BoundPolynomial(
        method=method,
        degree=degree,
        s=float(s),
        c=c,
        fhat=tuple(float(v) for v in fhat),
        eval_fn=eval_fn,
        k=k,
    )


def mrrw_poly(spec: MeasureSpec, k: int, s: float) -> BoundPolynomial:
    """c (x - s) K_k(x, s)^2 over the base kernel, degree 2k + 1."""
    if s >= 1.0:
        raise ValidationError("mrrw_poly needs s < 1")
    ps = eval_basis_table(spec, Variant.BASE, k, s)[:, 0]

    def raw(x, _ps=ps, _s=s):
        kern = _ps @ eval_basis_table(spec, Variant.BASE, k, x)
        return (x - _s) * kern * kern

    return _finish_poly(spec, "mrrw", k, s, 2 * k + 1, raw)


def mrrw_bound_closed(spec: MeasureSpec, k: int, s: float) -> float:
    """Closed-form value -(1-s) K_k(1,s)^2 / (a_k p_{k+1}(s) p_k(s)).

    Only meaningful strictly inside the window x_k < s < x_{k+1} between
    consecutive largest zeros; outside it the expression is rejected.
    """
    lo = largest_zero(spec, Variant.BASE, k)
    hi = largest_zero(spec, Variant.BASE, k + 1)
    if not (lo < s < hi):
        raise ValidationError(
            "closed-form bound needs x_k < s < x_{k+1}, got s=%r outside (%r, %r)"
            % (s, lo, hi)
        )
    table_s = eval_basis_table(spec, Variant.BASE, k + 1, s)[:, 0]
    kern_one = float(_kernel_values(spec, Variant.BASE, k, s, np.array([1.0]))[0])
    a_k = recurrence_coeffs(spec, Variant.BASE, k).a[k]
    denom = a_k * table_s[k + 1] * table_s[k]
    if denom == 0.0:
        raise SingularOperatorError("closed-form denominator vanished at s=%r" % (s,))
    return -(1.0 - s) * kern_one * kern_one / denom


def lev_odd_poly(spec: MeasureSpec, k: int, s: float) -> BoundPolynomial:
    """c (x - s) K_k^-(x, s)^2 over the minus kernel, degree 2k + 1."""
    if s >= 1.0:
        raise ValidationError("lev_odd_poly needs s < 1")
    ps = eval_basis_table(spec, Variant.MINUS, k, s)[:, 0]

    def raw(x, _ps=ps, _s=s):
        kern = _ps @ eval_basis_table(spec, Variant.MINUS, k, x)
        return (x - _s) * kern * kern

    return _finish_poly(spec, "lev_odd", k, s, 2 * k + 1, raw)


def lev_even_poly(spec: MeasureSpec, k: int, s: float) -> BoundPolynomial:
    """c (x - s)(x + 1) K_k^+-(x, s)^2 over the plusminus kernel, degree 2k + 2."""
    if s >= 1.0:
        raise ValidationError("lev_even_poly needs s < 1")
    ps = eval_basis_table(spec, Variant.PLUSMINUS, k, s)[:, 0]

    def raw(x, _ps=ps, _s=s):
        kern = _ps @ eval_basis_table(spec, Variant.PLUSMINUS, k, x)
        return (x - _s) * (x + 1.0) * kern * kern

    return _finish_poly(spec, "lev_even", k, s, 2 * k + 2, raw)


def lev_degree_select(spec: MeasureSpec, s: float):
    """Kernel degree and parity whose validity window contains s.

    Windows tile the s axis: [x_k^+-, x_{k+1}^-] belongs to the odd
    polynomial with kernel degree k (endpoints included), and the open gap
    (x_{k+1}^-, x_{k+1}^+-) to the even one with the same kernel degree.
    Ties at shared endpoints go to the odd variant. Raises when s lies
    beyond every available window.
    """
    if s >= 1.0:
        raise ValidationError("lev_degree_select needs s < 1")
    cap_minus = max_degree(spec, Variant.MINUS)
    cap_pm = max_degree(spec, Variant.PLUSMINUS)
    k_top = _LEV_DEGREE_CAP
    if cap_minus is not None:
        k_top = min(k_top, cap_minus - 1)
    for k in range(k_top + 1):
        left = largest_zero(spec, Variant.PLUSMINUS, k) if (
            cap_pm is None or k <= cap_pm
        ) else None
        right = largest_zero(spec, Variant.MINUS, k + 1)
        if left is not None and left - _WINDOW_TIE_TOL <= s <= right + _WINDOW_TIE_TOL:
            return k, "odd"
        if left is None and s <= right + _WINDOW_TIE_TOL:
            # No plusminus system this deep; the odd window degenerates to
            # everything up to x_{k+1}^-.
            return k, "odd"
        even_ok = cap_pm is None or k + 1 <= cap_pm
        if even_ok:
            pm_right = largest_zero(spec, Variant.PLUSMINUS, k + 1)
            if right + _WINDOW_TIE_TOL < s < pm_right - _WINDOW_TIE_TOL:
                return k, "even"
    raise DegreeBudgetError(
        "degree budget exceeded: no Levenshtein window of %s reaches s=%r"
        % (spec.label(), s)
    )


def bound_value(spec: MeasureSpec, f: BoundPolynomial) -> float:
    """f(1)/fhat_0 with f(1) = 1 enforced, i.e. 1/fhat_0.

    The mean must clear the same positivity floor the certificate uses;
    a denominator inside the noise band would quietly turn roundoff into
    an arbitrarily large "bound".
    """
    fhat0 = f.fhat[0]
    if fhat0 <= Tolerances().pos:
        cert = cone_certificate(spec, f, f.s)
        raise NotCertifiedError(
            "polynomial is outside the cone: fhat_0 = %r" % (fhat0,), certificate=cert
        )
    return 1.0 / fhat0


def classical_baselines(n: int, d: int) -> tuple:
    """Textbook upper bounds attached to reports for context."""
    e = (d - 1) // 2
    ball = sum(math.comb(n, j) for j in range(e + 1))
    out = [
        ("singleton", float(2 ** (n - d + 1))),
        ("sphere_packing", (2 ** n) / ball),
    ]
    if 2 * d > n:
        out.append(("plotkin", 2 * d / (2 * d - n)))
    return tuple(out)


def _mrrw_scan(spec: MeasureSpec, s: float, tolerances=None):
    """All certified MRRW candidates at this s, cheapest check first.

    The mean of c (x - s) K_k^2 changes sign at the window edges, so a
    vectorized sign precheck over every k narrows the field to the one or
    two degrees worth a full certificate.
    """
    n = spec.params[0]
    table = discrete_basis_table(spec, Variant.BASE)
    ps = eval_basis_table(spec, Variant.BASE, n, s)[:, 0]
    x, w = node_weights(spec, Variant.BASE)
    kinc = np.cumsum(ps[:, None] * table, axis=0)
    raw_means = (kinc * kinc) @ (w * (x - s))
    results = []
    for k in range(n):
        if raw_means[k] <= 0.0:
            continue
        try:
            poly = mrrw_poly(spec, k, s)
        except (SingularOperatorError, NumericError):
            continue
        cert = cone_certificate(spec, poly, s, tolerances)
        if not cert.passed:
            continue
        value = bound_value(spec, poly)
        try:
            closed = mrrw_bound_closed(spec, k, s)
        except (ValidationError, SingularOperatorError):
            closed = None
        results.append((value, k, poly, cert, closed))
    return results


def bound_for_distance(spec: MeasureSpec, d: int, method: str = "lev",
                       tolerances=None) -> BoundResult:
    """Certified bound for codes of minimum distance d in Hamming space.

    Maps d to s = 1 - 2d/n (a support node), picks the polynomial degree
    (auto window for lev and spectral, a full scan minimized over k for
    mrrw), and attaches classical baseline values for the report. Raises
    NotCertifiedError rather than returning any uncertified number.
    """
    if spec.kind != "hamming":
        raise ValidationError("bound_for_distance applies to Hamming spaces only")
    n = spec.params[0]
    if not (isinstance(d, int) and 1 <= d <= n):
        raise ValidationError("distance must satisfy 1 <= d <= n, got %r" % (d,))
    s = spec.nodes[d]
    baselines = classical_baselines(n, d)

    if method == "mrrw":
        results = _mrrw_scan(spec, s, tolerances)
        if not results:
            raise NotCertifiedError(
                "no MRRW degree certifies at n=%d, d=%d (s=%r)" % (n, d, s)
            )
        best = min(r[0] for r in results)
        # values within relative 1e-9 are float-level ties; report the
        # lowest-degree certified candidate among them
        tied = [r for r in results if r[0] <= best * (1.0 + 1e-9)]
        value, k, poly, cert, closed = min(tied, key=lambda r: r[1])
        return BoundResult(
            method="mrrw", space=spec, s=s, degree=poly.degree, bound=value,
            certificate=cert, d=d, closed_form=closed, baselines=baselines,
        )

    if method == "lev":
        k, parity = lev_degree_select(spec, s)
        poly = lev_odd_poly(spec, k, s) if parity == "odd" else lev_even_poly(spec, k, s)
        cert = cone_certificate(spec, poly, s, tolerances)
        if not cert.passed:
            raise NotCertifiedError(
                "Levenshtein polynomial failed certification at n=%d, d=%d: %s"
                % (n, d, cert.reason),
                certificate=cert,
            )
        return BoundResult(
            method=poly.method, space=spec, s=s, degree=poly.degree,
            bound=bound_value(spec, poly), certificate=cert, d=d,
            baselines=baselines,
        )

    if method == "spectral":
        from . import spectral

        k = _base_window_index(spec, s)
        if k is None:
            raise NotCertifiedError(
                "s=%r sits on a window boundary; no spectral bound at n=%d, d=%d"
                % (s, n, d)
            )
        result = spectral.spectral_recover_bound(spec, Variant.BASE, k, s,
                                                 tolerances=tolerances)
        return BoundResult(
            method=result.method, space=spec, s=s, degree=result.degree,
            bound=result.bound, certificate=result.certificate, d=d,
            closed_form=result.closed_form, baselines=baselines,
        )

    raise ValidationError("unknown method %r" % (method,))


def bound_for_s(spec: MeasureSpec, s: float, method: str = "lev", k=None,
                tolerances=None) -> BoundResult:
    """Certified bound at an explicit threshold s in [-1, 1).

    Works on any space, discrete or continuous. The kernel degree is
    selected automatically (lev by its window tiling, mrrw and spectral by
    the base window containing s); mrrw and spectral accept an explicit k
    override. Raises NotCertifiedError rather than returning an
    uncertified number.
    """
    s = float(s)
    if not (-1.0 <= s < 1.0):
        raise ValidationError("s must lie in [-1, 1), got %r" % (s,))

    if method == "lev":
        if k is not None:
            raise ValidationError(
                "the Levenshtein construction picks its own degree; drop k"
            )
        k_sel, parity = lev_degree_select(spec, s)
        poly = (lev_odd_poly(spec, k_sel, s) if parity == "odd"
                else lev_even_poly(spec, k_sel, s))
        cert = cone_certificate(spec, poly, s, tolerances)
        if not cert.passed:
            raise NotCertifiedError(
                "Levenshtein polynomial failed certification at s=%r on %s: %s"
                % (s, spec.label(), cert.reason),
                certificate=cert,
            )
        return BoundResult(
            method=poly.method, space=spec, s=s, degree=poly.degree,
            bound=bound_value(spec, poly), certificate=cert,
        )

    if method == "mrrw":
        kk = k if k is not None else _base_window_index(spec, s)
        if kk is None:
            raise NotCertifiedError(
                "s=%r is outside every open window of %s" % (s, spec.label())
            )
        poly = mrrw_poly(spec, kk, s)
        cert = cone_certificate(spec, poly, s, tolerances)
        if not cert.passed:
            raise NotCertifiedError(
                "MRRW polynomial failed certification at s=%r, k=%d on %s: %s"
                % (s, kk, spec.label(), cert.reason),
                certificate=cert,
            )
        try:
            closed = mrrw_bound_closed(spec, kk, s)
        except (ValidationError, SingularOperatorError):
            closed = None
        return BoundResult(
            method="mrrw", space=spec, s=s, degree=poly.degree,
            bound=bound_value(spec, poly), certificate=cert, closed_form=closed,
        )

    if method == "spectral":
        from . import spectral

        kk = k if k is not None else _base_window_index(spec, s)
        if kk is None:
            raise NotCertifiedError(
                "s=%r is outside every open window of %s" % (s, spec.label())
            )
        return spectral.spectral_recover_bound(spec, Variant.BASE, kk, s,
                                               tolerances=tolerances)

    raise ValidationError("unknown method %r" % (method,))


def _base_window_index(spec: MeasureSpec, s: float):
    """The unique k with x_k < s < x_{k+1}, or None on a boundary."""
    cap = max_degree(spec, Variant.BASE)
    top = cap - 1 if cap is not None else _LEV_DEGREE_CAP
    for k in range(top + 1):
        lo = largest_zero(spec, Variant.BASE, k)
        hi = largest_zero(spec, Variant.BASE, k + 1)
        if lo < s < hi:
            return k
        if s <= lo:
            return None
    return None


def polynomial_from_fourier(spec: MeasureSpec, coeffs, s: float,
                            normalize: bool = False) -> BoundPolynomial:
    """Wrap explicit base-system coefficients as a BoundPolynomial.

    Used by the verify front end; coefficients are taken as given unless
    normalize is set, in which case the polynomial is rescaled to f(1)=1.
    """
    coeffs = np.asarray(list(coeffs), dtype=float)
    if coeffs.size == 0:
        raise ValidationError("need at least one coefficient")
    degree = coeffs.size - 1
    cap = max_degree(spec, Variant.BASE)
    if cap is not None and degree > cap:
        raise ValidationError(
            "coefficient list of length %d overflows max degree %d" % (coeffs.size, cap)
        )

    def raw(x, _c=coeffs, _deg=degree):
        return _c @ eval_basis_table(spec, Variant.BASE, _deg, x)

    if normalize:
        return _finish_poly(spec, "custom", None, s, degree, raw)
    return BoundPolynomial(
        method="custom", degree=degree, s=float(s), c=1.0,
        fhat=tuple(float(v) for v in coeffs), eval_fn=raw, k=None,
    )
