"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes, so library code should raise the most
specific class that applies instead of bare ValueError.
"""

from __future__ import annotations


class DelboundError(Exception):
    """Base class for all package errors."""


class ValidationError(DelboundError):
    """Malformed or out-of-range input (bad n, d, degree, descriptor)."""


class DegreeBudgetError(DelboundError):
    """No polynomial of admissible degree covers the requested parameter."""


class NotCertifiedError(DelboundError):
    """A bound was requested but the feasibility certificate failed.

    Carries the failed certificate when one was produced.
    """

    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class SingularOperatorError(DelboundError):
    """A construction hit a removable singularity (p_k(s) = 0, c undefined)."""


class NumericError(DelboundError):
    """Internal numeric failure: solver non-convergence, iteration cap, overflow."""
