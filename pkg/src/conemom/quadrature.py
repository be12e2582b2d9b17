"""Adaptive quadrature of the profile integrands.

Every integral in the potential module has the form

    integral over [a, b] of (w0 + w1 x) * ((1+x)^m / P(x))^e  dx,   e in {1, 1/2},

so one kernel covers t, F, G and s.  The heavy lifting lives in
:mod:`conemom.quadcore`, which picks the compiled or pure-Python backend.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from conemom import quadcore
from conemom.config import default_tol
from conemom.errors import OutsideDomain, QuadratureBudgetExceeded

DEFAULT_LIMIT = 4000


@dataclass(frozen=True)
class QuadResult:
    value: float
    error: float
    neval: int


def integrate_profile(
    coeffs: Sequence[float],
    m: int,
    a: float,
    b: float,
    w0: float = 1.0,
    w1: float = 0.0,
    half: bool = False,
    abstol: Optional[float] = None,
    limit: int = DEFAULT_LIMIT,
) -> QuadResult:
    """Integrate (w0 + w1 x) g(x) from a to b, g = (1+x)^m/P or its square root.

    Orientation is respected (a > b flips the sign).  Raises OutsideDomain if
    P is not positive at some node and QuadratureBudgetExceeded if the error
    target is not met within ``limit`` subintervals.
    """
    a = float(a)
    b = float(b)
    if a == b:
        return QuadResult(0.0, 0.0, 0)
    tol = default_tol() if abstol is None else float(abstol)
    sign = 1.0
    if a > b:
        a, b, sign = b, a, -1.0
    value, err, neval, status = quadcore.gk_integrate(
        tuple(coeffs), int(m), float(w0), float(w1), bool(half), a, b, tol, int(limit)
    )
    if status == quadcore.STATUS_DOMAIN:
        raise OutsideDomain(f"profile is not positive somewhere in [{a!r}, {b!r}]")
    if status == quadcore.STATUS_LIMIT:
        raise QuadratureBudgetExceeded(
            f"error estimate {err:.3g} above tolerance {tol:.3g} on [{a!r}, {b!r}] "
            f"after {neval} evaluations"
        )
    return QuadResult(sign * value, err, neval)
