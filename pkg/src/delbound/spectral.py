"""Bounds from rank-one perturbations of truncated Jacobi matrices.

The kernel K_k(., s) is an eigenfunction of the operator

    T_k(s) = J_k + rho_k e_k e_k^T,   rho_k = a_k p_{k+1}(s) / p_k(s),

with eigenvalue s, and for s between consecutive largest zeros it is the
top (Perron-Frobenius) eigenfunction. That makes the extremal polynomial
constructions recoverable from pure linear algebra: diagonalize, take the
top eigenvector, square. This module exercises that route and the
s-independent variant where the corner weight is pinned at x = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constructions import (
    BoundPolynomial,
    BoundResult,
    _finish_poly,
    bound_value,
    mrrw_bound_closed,
)
from .errors import (
    NotCertifiedError,
    NumericError,
    SingularOperatorError,
    ValidationError,
)
from .feasibility import cone_certificate
from .orthopoly import (
    JacobiOperator,
    eval_basis_table,
    jacobi_matrix,
    largest_zero,
    recurrence_coeffs,
)
from .spaces import MeasureSpec, Variant

__all__ = [
    "JacobiOperator",
    "EigenPair",
    "build_Tk",
    "top_eigenpair",
    "verify_kernel_eigen",
    "spectral_recover_bound",
    "spectral_bound_fixed",
]

_RESIDUAL_CONTRACT = 1e-9
_TIE_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class EigenPair:
    """Eigenvalue, unit eigenvector with v_0 > 0, and the achieved residual."""

    eigenvalue: float
    vector: np.ndarray
    residual: float


def build_Tk(spec: MeasureSpec, basis: Variant, k: int, s: float) -> JacobiOperator:
    """The perturbed operator T_k(s) with corner weight a_k p_{k+1}(s)/p_k(s)."""
    table = eval_basis_table(spec, basis, k + 1, s)[:, 0]
    pk, pk1 = float(table[k]), float(table[k + 1])
    if abs(pk) <= 1e-12:
        raise SingularOperatorError(
            "p_%d(%r) = %.3e vanishes (s sits on a zero of the degree-%d "
            "polynomial); corner weight undefined" % (k, s, pk, k)
        )
    a_k = recurrence_coeffs(spec, basis, k).a[k]
    plain = jacobi_matrix(spec, basis, k)
    return JacobiOperator(
        diag=plain.diag, off=plain.off, basis=basis, rho=a_k * pk1 / pk
    )


def _sign_fix(v: np.ndarray) -> np.ndarray:
    for entry in v:
        if entry != 0.0:
            return -v if entry < 0 else v
    return v


def top_eigenpair(T) -> EigenPair:
    """Largest eigenvalue and unit eigenvector of a symmetric operator.

    Accepts a JacobiOperator or a plain symmetric matrix. When the top of
    the spectrum is tied within 1e-12 the entrywise positive candidate is
    preferred, matching the Perron-Frobenius pick for irreducible
    operators.
    """
    m = T.matrix() if hasattr(T, "matrix") else np.asarray(T, dtype=float)
    w, vecs = np.linalg.eigh(m)
    idx = len(w) - 1
    for j in range(len(w) - 2, -1, -1):
        if w[idx] - w[j] > _TIE_TOL:
            break
        cand = _sign_fix(vecs[:, j])
        if np.all(cand > 0.0):
            idx = j
    v = _sign_fix(vecs[:, idx].copy())
    lam = float(w[idx])
    residual = float(np.linalg.norm(m @ v - lam * v))
    if residual > _RESIDUAL_CONTRACT:
        raise NumericError(
            "eigenpair residual %.3e breaks the %.0e contract for order %d"
            % (residual, _RESIDUAL_CONTRACT, m.shape[0])
        )
    v.flags.writeable = False
    return EigenPair(eigenvalue=lam, vector=v, residual=residual)


def verify_kernel_eigen(spec: MeasureSpec, basis: Variant, k: int,
                        s: float) -> EigenPair:
    """Check the kernel eigenfunction identity and return the verified pair.

    v = (p_0(s), ..., p_k(s)) must satisfy T_k(s) v = s v, and when s lies
    strictly between the largest zeros x_k and x_{k+1} this v must also be
    the top eigenvector with strictly positive entries. The residual is
    taken on the unit-scaled vector and must stay below 1e-9; any
    violation raises NumericError rather than returning.
    """
    T = build_Tk(spec, basis, k, s)
    v = _sign_fix(eval_basis_table(spec, basis, k, s)[:, 0].copy())
    v /= np.linalg.norm(v)
    m = T.matrix()
    residual = float(np.linalg.norm(m @ v - s * v))
    if residual > _RESIDUAL_CONTRACT:
        raise NumericError(
            "kernel eigenfunction residual %.3e at k=%d, s=%r" % (residual, k, s)
        )
    lo = largest_zero(spec, basis, k)
    hi = largest_zero(spec, basis, k + 1)
    if lo < s < hi:
        pair = top_eigenpair(T)
        if abs(pair.eigenvalue - s) > 1e-10:
            raise NumericError(
                "top eigenvalue %r drifted from s=%r inside the window"
                % (pair.eigenvalue, s)
            )
        if not np.all(pair.vector > 0.0):
            raise NumericError(
                "Perron-Frobenius violation: top eigenvector has nonpositive "
                "entries at k=%d, s=%r" % (k, s)
            )
        overlap = abs(float(pair.vector @ v))
        if overlap < 1.0 - 1e-8:
            raise NumericError(
                "kernel vector is not the top eigenvector (overlap %.12f)" % overlap
            )
    v.flags.writeable = False
    return EigenPair(eigenvalue=float(s), vector=v, residual=residual)


def _eigenfunction_poly(spec, basis, k, s, vector, method) -> BoundPolynomial:
    v = np.asarray(vector, dtype=float)
    extra_root = basis is Variant.PLUSMINUS
    degree = 2 * k + (2 if extra_root else 1)

    def raw(x, _v=v, _s=s, _extra=extra_root):
        f = _v @ eval_basis_table(spec, basis, k, x)
        out = (x - _s) * f * f
        if _extra:
            out = out * (x + 1.0)
        return out

    return _finish_poly(spec, method, k, s, degree, raw)


def spectral_recover_bound(spec: MeasureSpec, basis: Variant, k: int, s: float,
                           tolerances=None) -> BoundResult:
    """Bound rebuilt from the top eigenfunction of T_k(s).

    Squaring the top eigenfunction and multiplying by (x - s) (plus the
    (x + 1) root in the plusminus basis) reproduces the kernel-based
    constructions; for the base basis the result is checked against the
    closed form to 1e-7 relative before it is reported.
    """
    T = build_Tk(spec, basis, k, s)
    pair = top_eigenpair(T)
    poly = _eigenfunction_poly(spec, basis, k, s, pair.vector, "spectral")
    cert = cone_certificate(spec, poly, s, tolerances)
    if not cert.passed:
        raise NotCertifiedError(
            "spectral polynomial failed certification at k=%d, s=%r: %s"
            % (k, s, cert.reason),
            certificate=cert,
        )
    value = bound_value(spec, poly)
    closed = None
    if basis is Variant.BASE:
        closed = mrrw_bound_closed(spec, k, s)
        if not math.isclose(value, closed, rel_tol=1e-7):
            raise NumericError(
                "spectral route %.12g disagrees with closed form %.12g" % (value, closed)
            )
    return BoundResult(
        method="spectral", space=spec, s=float(s), degree=poly.degree,
        bound=value, certificate=cert, closed_form=closed,
    )


def spectral_bound_fixed(spec: MeasureSpec, k: int, sign_variant: str = "subtractive",
                         tolerances=None) -> BoundResult:
    """s-independent bound from the corner weight pinned at x = 1.

    Builds J_k + sigma rho_k(1) e_k e_k^T with rho_k(1) = a_k p_{k+1}(1)/p_k(1)
    and sigma chosen by sign_variant. The additive choice carries
    (p_i(1)) as top eigenvector with eigenvalue exactly 1, which makes the
    value formula degenerate, so it is rejected; the subtractive choice
    lands the top eigenvalue lambda_k inside the top window and the
    certified value min(4 a_k p_{k+1}(1) p_k(1)/(1 - lambda_k), 1/Fhat_0)
    is returned. Uncertified variants are suppressed with a diagnostic.
    """
    if k < 1:
        raise ValidationError("spectral_bound_fixed needs k >= 1")
    if sign_variant not in ("subtractive", "additive"):
        raise ValidationError("sign_variant must be 'subtractive' or 'additive'")
    sigma = -1.0 if sign_variant == "subtractive" else 1.0
    table = eval_basis_table(spec, Variant.BASE, k + 1, 1.0)[:, 0]
    pk, pk1 = float(table[k]), float(table[k + 1])
    a_k = recurrence_coeffs(spec, Variant.BASE, k).a[k]
    rho_one = a_k * pk1 / pk
    plain = jacobi_matrix(spec, Variant.BASE, k)
    T = JacobiOperator(diag=plain.diag, off=plain.off, basis=Variant.BASE,
                       rho=sigma * rho_one)
    pair = top_eigenpair(T)
    lam = pair.eigenvalue
    if 1.0 - lam <= 1e-12:
        raise SingularOperatorError(
            "1 - lambda_k = %.3e is degenerate for the %s variant at k=%d"
            % (1.0 - lam, sign_variant, k)
        )
    poly = _eigenfunction_poly(spec, Variant.BASE, k, lam, pair.vector,
                               "spectral_fixed")
    cert = cone_certificate(spec, poly, lam, tolerances)
    if not cert.passed:
        raise NotCertifiedError(
            "fixed-operator polynomial failed certification (variant %s, k=%d): %s"
            % (sign_variant, k, cert.reason),
            certificate=cert,
        )
    closed = 4.0 * a_k * pk1 * pk / (1.0 - lam)
    value = min(closed, bound_value(spec, poly))
    return BoundResult(
        method="spectral_fixed", space=spec, s=lam, degree=poly.degree,
        bound=value, certificate=cert, closed_form=closed,
    )
