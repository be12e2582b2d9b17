"""Geometric verdicts for a profile: ends, completeness, Einstein, c0.

Completeness follows the endpoint test: the metric is complete towards
tau = 0 iff phi vanishes there to order >= 2, towards a finite b iff phi
vanishes at b to order >= 2, and towards tau = infinity iff phi grows at
most quadratically.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from conemom.config import default_tol
from conemom.curvature import ONE_PLUS_TAU, RationalFunction, phi_rf
from conemom.errors import ConemomError, DegenerateProfile, SignAssumptionFailed
from conemom.exactalg import (
    Poly,
    SturmChain,
    isolate_real_roots,
    root_multiplicity_in,
    root_order_at,
    smallest_positive_root,
)
from conemom.profile import (
    INF,
    BoundaryPreset,
    Profile,
    RootInterval,
    c_affine_parts,
    positivity_domain,
)


@dataclass(frozen=True)
class EndpointBehavior:
    order_at_zero: int
    b: Union[RootInterval, float]
    order_at_b: Optional[int]
    growth_degree: Optional[int]
    t1_infinite: bool
    t2_infinite: bool
    s_complete_at_zero: bool
    s_complete_at_b: bool

    @property
    def b_finite(self) -> bool:
        return self.b != INF

    @property
    def cusp_at_b(self) -> bool:
        """Order > 2 at a finite b; reported, not interpreted."""
        return self.order_at_b is not None and self.order_at_b > 2

    def to_json(self) -> dict:
        return {
            "order_at_zero": self.order_at_zero,
            "b": "inf" if self.b == INF else self.b.to_json(),
            "order_at_b": self.order_at_b,
            "growth_degree": self.growth_degree,
            "t1_infinite": self.t1_infinite,
            "t2_infinite": self.t2_infinite,
            "s_complete_at_zero": self.s_complete_at_zero,
            "s_complete_at_b": self.s_complete_at_b,
            "cusp_at_b": self.cusp_at_b,
        }


def endpoint_behavior(pr: Profile) -> EndpointBehavior:
    b = positivity_domain(pr)
    P = pr.numerator
    k0 = root_order_at(P, 0)
    if b == INF:
        growth = P.degree - pr.m
        order_b = None
        t2_inf = growth <= 1
        complete_b = growth <= 2
    else:
        growth = None
        order_b = root_multiplicity_in(P, b.lo, b.hi)
        t2_inf = order_b >= 1
        complete_b = order_b >= 2
    return EndpointBehavior(
        order_at_zero=k0,
        b=b,
        order_at_b=order_b,
        growth_degree=growth,
        t1_infinite=k0 >= 1,
        t2_infinite=t2_inf,
        s_complete_at_zero=k0 >= 2,
        s_complete_at_b=complete_b,
    )


def einstein_check(pr: Profile) -> Optional[Fraction]:
    """alpha with rho = alpha omega, found by elimination, or None.

    With H = m phi/(1+tau) + phi', the two conditions are
    kappa - H = alpha (1+tau) and -H' = alpha.  The first forces
    alpha = (kappa - H)/(1+tau) to be a constant function; the second is
    then checked independently.
    """
    phi = phi_rf(pr)
    H = phi * pr.m / ONE_PLUS_TAU + phi.derivative()
    alpha = ((pr.kappa - H) / ONE_PLUS_TAU).constant_value()
    if alpha is None:
        return None
    if not (-H.derivative() - alpha).is_zero():
        return None
    return alpha


class Verdict(str, enum.Enum):
    CompleteScalarFlat = "CompleteScalarFlat"
    CompleteNegativeCSC = "CompleteNegativeCSC"
    CompletePositiveCSC = "CompletePositiveCSC"
    CompleteEinstein = "CompleteEinstein"
    IncompleteAtZeroSection = "IncompleteAtZeroSection"
    IncompleteAtOuterEnd = "IncompleteAtOuterEnd"
    IncompleteBothEnds = "IncompleteBothEnds"


# (complete at 0, complete at b) -> verdict for incomplete metrics
_INCOMPLETE = {
    (False, True): Verdict.IncompleteAtZeroSection,
    (True, False): Verdict.IncompleteAtOuterEnd,
    (False, False): Verdict.IncompleteBothEnds,
}


def _sign(q: Fraction) -> str:
    return "+" if q > 0 else ("0" if q == 0 else "-")


@dataclass(frozen=True)
class Regime:
    """A hypothesis set with the verdict the construction promises for it."""

    tag: str
    statement: str
    bc: str
    kappa_sign: str
    c_rule: str  # "zero", "negative", "einstein", "nonpositive"
    verdict: Verdict
    einstein: Optional[str]  # None, "never", or a formula tag

    def applies(self, pr: Profile) -> bool:
        if pr.bc.tag != self.bc or _sign(pr.kappa) != self.kappa_sign:
            return False
        m, kappa, c = pr.m, pr.kappa, pr.c
        if self.c_rule == "zero":
            return c == 0
        if self.c_rule == "negative":
            return c < 0
        if self.c_rule == "nonpositive":
            return c <= 0
        if self.c_rule == "cone-einstein":
            return c == (m + 1) * kappa
        if self.c_rule == "bundle-einstein":
            return c == (m + 1) * (kappa - 2) and c <= 0
        raise AssertionError(self.c_rule)


# Ordered: the first matching row wins.
REGIMES: tuple[Regime, ...] = (
    Regime("cone/kappa+/c0", "complete scalar-flat metric on the whole cone",
           "cone", "+", "zero", Verdict.CompleteScalarFlat, "never"),
    Regime("cone/kappa+/c-", "complete negative CSC metric on a neighbourhood of the apex",
           "cone", "+", "negative", Verdict.CompleteNegativeCSC, "never"),
    Regime("cone/kappa0/c-", "complete negative CSC metric, no borderline case",
           "cone", "0", "negative", Verdict.CompleteNegativeCSC, "never"),
    Regime("cone/kappa-/einstein", "complete Kaehler-Einstein metric with alpha = kappa",
           "cone", "-", "cone-einstein", Verdict.CompleteEinstein, "alpha=kappa"),
    Regime("bundle/einstein", "Einstein with alpha = kappa - 2, incomplete at the zero section",
           "bundle", "+", "bundle-einstein", Verdict.IncompleteAtZeroSection, "alpha=kappa-2"),
    Regime("bundle/kappa0/einstein", "Einstein with alpha = -2, incomplete at the zero section",
           "bundle", "0", "bundle-einstein", Verdict.IncompleteAtZeroSection, "alpha=kappa-2"),
    Regime("bundle/kappa-/einstein", "Einstein with alpha = kappa - 2, incomplete at the zero section",
           "bundle", "-", "bundle-einstein", Verdict.IncompleteAtZeroSection, "alpha=kappa-2"),
    Regime("bundle/kappa+/c<=0", "CSC metric complete near infinity, not at the zero section",
           "bundle", "+", "nonpositive", Verdict.IncompleteAtZeroSection, "never"),
    Regime("bundle/kappa0/c<=0", "CSC metric complete near infinity, not at the zero section",
           "bundle", "0", "nonpositive", Verdict.IncompleteAtZeroSection, "never"),
)


def find_regime(pr: Profile) -> Optional[Regime]:
    return next((r for r in REGIMES if r.applies(pr)), None)


@dataclass(frozen=True)
class ClassificationReport:
    behavior: EndpointBehavior
    complete: bool
    einstein: Optional[Fraction]
    verdict: Verdict
    regime: Optional[str]
    expected_verdict: Optional[Verdict]

    @property
    def matches_regime(self) -> Optional[bool]:
        if self.expected_verdict is None:
            return None
        return self.expected_verdict == self.verdict

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "complete": self.complete,
            "einstein": None if self.einstein is None else {"alpha": str(self.einstein)},
            "behavior": self.behavior.to_json(),
            "regime": self.regime,
            "expected_verdict": None if self.expected_verdict is None else self.expected_verdict.value,
            "matches_regime": self.matches_regime,
        }


def theorem_verdict(pr: Profile) -> ClassificationReport:
    if pr.numerator.is_zero():
        raise DegenerateProfile("phi vanishes identically; no metric exists")
    beh = endpoint_behavior(pr)
    alpha = einstein_check(pr)
    complete = beh.s_complete_at_zero and beh.s_complete_at_b
    if complete:
        if alpha is not None:
            verdict = Verdict.CompleteEinstein
        elif pr.c == 0:
            verdict = Verdict.CompleteScalarFlat
        elif pr.c < 0:
            verdict = Verdict.CompleteNegativeCSC
        else:
            verdict = Verdict.CompletePositiveCSC
    else:
        verdict = _INCOMPLETE[(beh.s_complete_at_zero, beh.s_complete_at_b)]
    regime = find_regime(pr)
    return ClassificationReport(
        behavior=beh,
        complete=complete,
        einstein=alpha,
        verdict=verdict,
        regime=None if regime is None else regime.tag,
        expected_verdict=None if regime is None else regime.verdict,
    )


# ---------------------------------------------------------------------------
# c0: supremum of scalar curvatures with a positive profile on (0, inf)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class C0Certificate:
    """Exact evidence bracketing c0 in [c_lower, c_upper].

    * ``positive_below``: Sturm count of roots of phi_{c_lower} on (0, inf)
      (must be 0) and the sign of its lowest-order coefficient (must be +1).
    * ``b_value``/``b_derivative``: |phi_{c_upper}(b)| and |phi'_{c_upper}(b)|
      at the borderline point b (None when the infimum is approached at
      infinity).
    * ``B_negative``: Sturm count of roots of B on (0, inf) (must be 0) and
      B(1) < 0.
    * ``root_above``: an isolating interval of the first root of
      phi_{c_upper + tol}.
    """

    c_lower: Fraction
    c_upper: Fraction
    positive_below_roots: int
    positive_below_sign: int
    b_location: str  # "interior", "zero", "infinity"
    b_value: Optional[float]
    b_derivative: Optional[float]
    order_at_b: Optional[int]
    B_roots: int
    B_at_one: Fraction
    root_above: Optional[tuple[Fraction, Fraction]]

    @property
    def ok(self) -> bool:
        return (
            self.positive_below_roots == 0
            and self.positive_below_sign > 0
            and self.B_roots == 0
            and self.B_at_one < 0
            and self.root_above is not None
        )

    def to_json(self) -> dict:
        return {
            "c_lower": str(self.c_lower),
            "c_upper": str(self.c_upper),
            "positive_below": {
                "sturm_roots": self.positive_below_roots,
                "sign_near_zero": self.positive_below_sign,
            },
            "double_root": {
                "location": self.b_location,
                "abs_phi": self.b_value,
                "abs_dphi": self.b_derivative,
                "order": self.order_at_b,
            },
            "B_negative": {"sturm_roots": self.B_roots, "B_at_1": str(self.B_at_one)},
            "root_above": None
            if self.root_above is None
            else {"lo": str(self.root_above[0]), "hi": str(self.root_above[1])},
        }


@dataclass(frozen=True)
class C0Result:
    c0: float
    b: float
    certificate: C0Certificate
    tol: float
    m: int
    kappa: Fraction
    bc: BoundaryPreset

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "kappa": str(self.kappa),
            "bc": str(self.bc),
            "tol": self.tol,
            "c0": self.c0,
            "b": self.b,
            "certificate": self.certificate.to_json(),
            "certified": self.certificate.ok,
        }


def _limit_ratio(A: Poly, negB: Poly, at: str) -> Union[Fraction, float]:
    """lim A/negB at 0+ or infinity (negB > 0 near the limit)."""
    if A.is_zero():
        return Fraction(0)
    if at == "zero":
        ka, kb = A.low_order(), negB.low_order()
        a, b = A.coeffs[ka], negB.coeffs[kb]
        if ka > kb:
            return Fraction(0)
        if ka == kb:
            return a / b
        return math.copysign(INF, a)
    da, db = A.degree, negB.degree
    if da < db:
        return Fraction(0)
    if da == db:
        return A.lead / negB.lead
    return math.copysign(INF, A.lead)


def _lowest_sign(p: Poly) -> int:
    if p.is_zero():
        return 0
    return 1 if p.coeffs[p.low_order()] > 0 else -1


def _phi_and_derivative(P: Poly, m: int, x: Fraction) -> tuple[Fraction, Fraction]:
    w = (1 + x) ** m
    val = P(x) / w
    der = P.derivative()(x) / w - m * P(x) / (w * (1 + x))
    return val, der


def solve_c0(m: int, kappa, bc: BoundaryPreset, tol: Optional[float] = None) -> C0Result:
    """c0 = inf_{tau > 0} A(tau)/(-B(tau)) for phi_c = (A + c B)/(1+tau)^m.

    Since B < 0 on (0, inf) (checked, not assumed), phi_c > 0 there iff
    c < A/(-B) everywhere.  The infimum is located exactly: both boundary
    limits are exact rationals, interior candidates are Sturm-isolated roots
    of the Wronskian A'(-B) - A(-B)'.  Evaluating the ratio at a rational
    point x gives an exact upper bound c_upper with phi_{c_upper}(x) = 0;
    a Sturm positivity proof for c_upper - tol gives the lower bound.
    """
    from conemom.exactalg import as_rational

    kappa = as_rational(kappa)
    tol = default_tol() if tol is None else float(tol)
    if not tol > 0:
        raise ConemomError(f"tol must be positive, got {tol}")
    if bc.tag == "cone" and kappa >= 0:
        raise ConemomError("c0 for the cone preset needs kappa < 0")
    if bc.tag == "bundle" and kappa > 0:
        raise ConemomError("c0 for the bundle preset needs kappa <= 0")
    A, B = c_affine_parts(m, kappa, bc)

    if B.is_zero():
        raise SignAssumptionFailed("B vanishes identically")
    B_roots = SturmChain(B).count_open(0, INF)
    B_at_one = B(Fraction(1))
    if B_roots or B_at_one >= 0:
        raise SignAssumptionFailed(
            f"B is not negative on (0, inf): {B_roots} sign change(s), B(1) = {B_at_one}"
        )
    negB = -B

    candidates: list[tuple] = []  # (value, location, point)
    lim0 = _limit_ratio(A, negB, "zero")
    liminf = _limit_ratio(A, negB, "infinity")
    if lim0 == -INF or liminf == -INF:
        raise ConemomError("phi_c is negative near an end for every c; no c0 exists")
    candidates.append((lim0, "zero", Fraction(0)))
    candidates.append((liminf, "infinity", None))
    W = A.derivative() * negB - A * negB.derivative()
    if not W.is_zero():
        for lo, hi in isolate_real_roots(W, 0, None):
            x = hi
            candidates.append((A(x) / negB(x), "interior", x))
    finite = [c for c in candidates if c[0] != INF]
    value, location, point = min(finite, key=lambda c: c[0])
    c_upper = Fraction(value)
    tol_q = Fraction(tol)
    c_lower = c_upper - tol_q

    below = A + B * c_lower
    below_roots = SturmChain(below).count_open(0, INF)
    below_sign = _lowest_sign(below)

    borderline = A + B * c_upper
    if location == "infinity":
        b_val = b_der = None
        order_b = None
        b_float = INF
    else:
        v, d = _phi_and_derivative(borderline, m, point)
        b_val, b_der = float(abs(v)), float(abs(d))
        order_b = root_order_at(borderline, point)
        b_float = float(point)

    above = A + B * (c_upper + tol_q)
    root_above = smallest_positive_root(above)

    cert = C0Certificate(
        c_lower=c_lower,
        c_upper=c_upper,
        positive_below_roots=below_roots,
        positive_below_sign=below_sign,
        b_location=location,
        b_value=b_val,
        b_derivative=b_der,
        order_at_b=order_b,
        B_roots=B_roots,
        B_at_one=B_at_one,
        root_above=root_above,
    )
    return C0Result(float(c_upper), b_float, cert, tol, m, kappa, bc)
