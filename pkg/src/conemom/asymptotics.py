"""Closed forms for the Ricci-flat bundle profile (kappa = 2, c = 0).

With tau0 = 2^(1/(m+1)) - 1 the inversion of t(tau) is explicit,

    tau(t) = (e^(2t) + 1)^(1/(m+1)) - 1,

and after the rescaling r = r~^(m+1) the Kaehler potential is

    f(r~) = X + 1/(m+1) sum_j zeta^j log(X - zeta^j),  X = (r~^(2m+2) + 1)^(1/(m+1)),

zeta a primitive (m+1)-th root of unity.  f - r~^2 is tiny compared with
r~^2, so f is evaluated with mpmath at raised precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import mpmath
import numpy as np

from conemom.errors import BranchCutHit, CertificationFailed

WORK_DPS = 80
IMAG_TOL = 1e-12
BRANCH_TOL = 1e-12


def closed_form_tau(m: int, t: float) -> float:
    """(e^(2t) + 1)^(1/(m+1)) - 1, without overflow for large t."""
    t = float(t)
    if t > 0:
        lg = 2.0 * t + math.log1p(math.exp(-2.0 * t))
    else:
        lg = math.log1p(math.exp(2.0 * t))
    return math.expm1(lg / (m + 1))


def closed_form_tau0(m: int) -> float:
    return math.expm1(math.log(2.0) / (m + 1))


def bundle_phi(m: int, tau: float) -> float:
    """phi for kappa = 2, c = 0 with phi(0) = 0, phi'(0) = 2."""
    return 2.0 / (m + 1) * ((1.0 + tau) - (1.0 + tau) ** (-m))


def _potential_mp(m: int, r_tilde) -> mpmath.mpf:
    r = mpmath.mpf(r_tilde)
    if not r > 0:
        raise BranchCutHit(f"r~ must be positive, got {r_tilde!r}")
    n = m + 1
    X = mpmath.root(r ** (2 * n) + 1, n)
    total = mpmath.mpc(0)
    for j in range(n):
        z = mpmath.expjpi(mpmath.mpf(2 * j) / n)
        arg = X - z
        if abs(arg) < BRANCH_TOL:
            raise BranchCutHit(f"log argument X - zeta^{j} vanishes at r~ = {r_tilde!r}")
        total += z * mpmath.log(arg)
    f = X + total / n
    scale = max(mpmath.mpf(1), abs(f))
    if abs(mpmath.im(f)) > IMAG_TOL * scale:
        raise CertificationFailed(f"imaginary part {float(mpmath.im(f)):.3g} did not cancel")
    return mpmath.re(f)


def closed_form_potential(m: int, r_tilde: float) -> float:
    """Real part of the closed-form potential f(r~)."""
    with mpmath.workdps(WORK_DPS):
        return float(_potential_mp(m, r_tilde))


def potential_excess(m: int, r_tilde: float) -> float:
    """f(r~) - r~^2, computed before rounding to binary64."""
    with mpmath.workdps(WORK_DPS):
        r = mpmath.mpf(r_tilde)
        return float(_potential_mp(m, r) - r * r)


@dataclass(frozen=True)
class AsymptoticReport:
    m: int
    fitted_coefficient: float
    predicted_coefficient: Fraction
    fitted_exponent: float
    fit_window: tuple[float, float]
    relative_error: float
    remainder_exponent_estimate: float

    @property
    def exponent_error(self) -> float:
        """Relative deviation of the fitted exponent from -2m."""
        return abs(self.fitted_exponent + 2 * self.m) / (2 * self.m)

    @property
    def remainder_error(self) -> float:
        """Relative deviation of the remainder exponent from -(4m+2)."""
        return abs(self.remainder_exponent_estimate + 4 * self.m + 2) / (4 * self.m + 2)

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "fitted_coefficient": self.fitted_coefficient,
            "predicted_coefficient": str(self.predicted_coefficient),
            "fitted_exponent": self.fitted_exponent,
            "fit_window": list(self.fit_window),
            "relative_error": self.relative_error,
            "remainder_exponent_estimate": self.remainder_exponent_estimate,
        }


def predicted_coefficient(m: int) -> Fraction:
    return Fraction(-1, m * (m + 1))


def fit_expansion(m: int, window: tuple[float, float] = (10.0, 100.0), samples: int = 41) -> AsymptoticReport:
    """Least-squares fit of log|f - r~^2| against log r~ on the window.

    The remainder exponent comes from a second fit of
    log|f - r~^2 - a r~^(-2m)| with the predicted a.
    """
    lo, hi = map(float, window)
    if not 5.0 <= lo < hi:
        raise ValueError(f"fit window must satisfy 5 <= lo < hi, got {window!r}")
    pred = predicted_coefficient(m)
    xs, ys, rs = [], [], []
    with mpmath.workdps(WORK_DPS):
        a = mpmath.mpf(pred.numerator) / pred.denominator
        for k in range(samples):
            r = mpmath.mpf(lo) * (mpmath.mpf(hi) / lo) ** (mpmath.mpf(k) / (samples - 1))
            ex = _potential_mp(m, r) - r * r
            rem = ex - a * r ** (-2 * m)
            xs.append(float(mpmath.log(r)))
            ys.append(float(mpmath.log(abs(ex))))
            rs.append(float(mpmath.log(abs(rem))))
        sign = 1.0 if ex > 0 else -1.0
    slope, intercept = np.polyfit(xs, ys, 1)
    rslope, _ = np.polyfit(xs, rs, 1)
    coeff = sign * math.exp(intercept)
    rel = abs(coeff - float(pred)) / abs(float(pred))
    return AsymptoticReport(m, coeff, pred, float(slope), (lo, hi), rel, float(rslope))


def excess_rows(m: int, r_values: Iterable[float]) -> list[tuple[float, float, float]]:
    """(r~, f, f - r~^2) rows for plotting."""
    rows = []
    with mpmath.workdps(WORK_DPS):
        for r in r_values:
            f = _potential_mp(m, r)
            rows.append((float(r), float(f), float(f - mpmath.mpf(r) ** 2)))
    return rows


# -- roots of unity -----------------------------------------------------------


@dataclass(frozen=True)
class UnityRootsIdentitySpec:
    order: int

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be positive")

    @property
    def roots(self) -> np.ndarray:
        j = np.arange(self.order)
        return np.exp(2j * np.pi * j / self.order)


def unity_roots_identity(spec: UnityRootsIdentitySpec, x: Sequence[complex]) -> float:
    """max |sum_j zeta^j prod_{i != j} (x - zeta^i) - (m+1)| over the samples."""
    z = spec.roots
    x = np.asarray(x, dtype=complex).reshape(-1, 1)
    diffs = x - z.reshape(1, -1)
    total = np.zeros(x.shape[0], dtype=complex)
    for j in range(spec.order):
        others = np.delete(diffs, j, axis=1)
        total += z[j] * np.prod(others, axis=1)
    return float(np.max(np.abs(total - spec.order))) if len(total) else 0.0


def cross_check_tau(m: int, ts: Iterable[float], tol: float | None = None) -> float:
    """max |closed_form_tau - tau_of_time| on the bundle profile."""
    from conemom.potential import tau_of_time
    from conemom.profile import profile

    pr = profile(m, 2, 0, "bundle").with_tau0(Fraction(closed_form_tau0(m)))
    return max((abs(closed_form_tau(m, t) - tau_of_time(pr, t, tol)) for t in ts), default=0.0)
