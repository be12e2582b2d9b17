"""Constant-scalar-curvature momentum profiles in closed form.

For scalar curvature c the profile is

    phi(tau) = P(tau) / (1 + tau)^m,
    P(tau)   = kappa/(m+1) (1+tau)^(m+1) - c/((m+1)(m+2)) (1+tau)^(m+2)
               + c1 tau + c2,

with (c1, c2) fixed by the values phi(0), phi'(0).  Only the numerator P is
stored; (1 + tau)^m has no zeros on tau > -1, so all sign and root questions
are questions about P.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional, Union

from conemom.errors import (
    ConemomError,
    DegenerateBoundary,
    DegenerateProfile,
    NotPositiveNearZero,
    PoleAtMinusOne,
)
from conemom.exactalg import DEFAULT_WIDTH, Poly, as_rational, smallest_positive_root

INF = math.inf


@dataclass(frozen=True)
class BoundaryPreset:
    """Initial data phi(0) = v0, phi'(0) = v1.

    ``cone`` (0, 0) closes the cone end smoothly; ``bundle`` (0, 2) is the
    zero-section condition of the line-bundle picture.
    """

    tag: str
    v0: Fraction = Fraction(0)
    v1: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "v0", as_rational(self.v0))
        object.__setattr__(self, "v1", as_rational(self.v1))
        if self.tag not in ("cone", "bundle", "custom"):
            raise ConemomError(f"unknown boundary preset {self.tag!r}")
        if self.v0 < 0:
            raise ConemomError(f"custom boundary needs phi(0) >= 0, got {self.v0}")

    @classmethod
    def cone(cls) -> "BoundaryPreset":
        return cls("cone", 0, 0)

    @classmethod
    def bundle(cls) -> "BoundaryPreset":
        return cls("bundle", 0, 2)

    @classmethod
    def custom(cls, v0, v1) -> "BoundaryPreset":
        return cls("custom", v0, v1)

    @classmethod
    def parse(cls, text: str) -> "BoundaryPreset":
        """``cone``, ``bundle`` or ``custom:v0,v1``."""
        text = text.strip()
        if text == "cone":
            return cls.cone()
        if text == "bundle":
            return cls.bundle()
        if text.startswith("custom:"):
            parts = text[len("custom:"):].split(",")
            if len(parts) != 2:
                raise ConemomError(f"custom preset needs two values: {text!r}")
            return cls.custom(as_rational(parts[0]), as_rational(parts[1]))
        raise ConemomError(f"unknown boundary preset {text!r}")

    def __str__(self) -> str:
        if self.tag == "custom":
            return f"custom:{self.v0},{self.v1}"
        return self.tag

    def to_json(self) -> dict:
        return {"tag": self.tag, "v0": str(self.v0), "v1": str(self.v1)}


ConeSmooth = BoundaryPreset.cone()
BundleSmooth = BoundaryPreset.bundle()


@dataclass(frozen=True)
class ProfileParams:
    m: int
    kappa: Fraction
    c: Fraction
    bc: BoundaryPreset = ConeSmooth

    def __post_init__(self):
        if isinstance(self.m, bool) or not isinstance(self.m, int) or self.m < 1:
            raise ConemomError("m must be ≥ 1")
        object.__setattr__(self, "kappa", as_rational(self.kappa))
        object.__setattr__(self, "c", as_rational(self.c))


@dataclass(frozen=True)
class RootInterval:
    """A real number known to lie in (lo, hi]; exact when lo == hi."""

    lo: Fraction
    hi: Fraction

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    def __float__(self) -> float:
        return float((self.lo + self.hi) / 2)

    def to_json(self) -> dict:
        return {"lo": str(self.lo), "hi": str(self.hi)}


Endpoint = Union[RootInterval, float]  # float is always INF


@dataclass(frozen=True)
class Profile:
    params: ProfileParams
    c1: Fraction
    c2: Fraction
    numerator: Poly
    tau0: Optional[Fraction] = None
    _domain: object = field(default=None, compare=False, repr=False)

    @property
    def m(self) -> int:
        return self.params.m

    @property
    def kappa(self) -> Fraction:
        return self.params.kappa

    @property
    def c(self) -> Fraction:
        return self.params.c

    @property
    def bc(self) -> BoundaryPreset:
        return self.params.bc

    @property
    def denominator(self) -> Poly:
        return Poly.binomial_power(self.m)

    def with_tau0(self, tau0) -> "Profile":
        tau0 = tau0 if isinstance(tau0, Fraction) else Fraction(tau0)
        return replace(self, tau0=tau0)

    def to_json(self) -> dict:
        try:
            b = positivity_domain(self)
            b_json = "inf" if b == INF else b.to_json()
        except (NotPositiveNearZero, DegenerateProfile):
            b_json = None
        return {
            "m": self.m,
            "kappa": str(self.kappa),
            "c": str(self.c),
            "bc": str(self.bc),
            "c1": str(self.c1),
            "c2": str(self.c2),
            "numerator": self.numerator.to_json(),
            "tau0": None if self.tau0 is None else str(self.tau0),
            "b": b_json,
        }


def _closed_form(m: int, kappa: Fraction, c: Fraction, c1: Fraction, c2: Fraction) -> Poly:
    return (
        Poly.binomial_power(m + 1) * (kappa / (m + 1))
        - Poly.binomial_power(m + 2) * (c / ((m + 1) * (m + 2)))
        + Poly([c2, c1])
    )


def integration_constants(params: ProfileParams) -> tuple[Fraction, Fraction]:
    """(c1, c2) from phi(0) = v0 and phi'(0) = v1.

    phi(0) = P(0) and phi'(0) = P'(0) - m P(0); both are affine in (c1, c2).
    """
    m, kappa, c, bc = params.m, params.kappa, params.c, params.bc
    base = _closed_form(m, kappa, c, Fraction(0), Fraction(0))
    p0, dp0 = base(0), base.derivative()(0)
    # unknowns (c1, c2): P(0) = p0 + c2, P'(0) = dp0 + c1
    # rows: [phi(0), phi'(0)] = M (c1, c2) + const
    a11, a12, r1 = Fraction(0), Fraction(1), bc.v0 - p0
    a21, a22, r2 = Fraction(1), Fraction(-m), bc.v1 - (dp0 - m * p0)
    det = a11 * a22 - a12 * a21
    if det == 0:
        raise DegenerateBoundary("boundary conditions do not determine (c1, c2)")
    c1 = (r1 * a22 - a12 * r2) / det
    c2 = (a11 * r2 - r1 * a21) / det
    return c1, c2


def build_profile(params: ProfileParams, tau0=None) -> Profile:
    c1, c2 = integration_constants(params)
    num = _closed_form(params.m, params.kappa, params.c, c1, c2)
    pr = Profile(params, c1, c2, num)
    if tau0 is None:
        tau0 = _default_tau0(pr)
    elif not isinstance(tau0, Fraction):
        tau0 = Fraction(tau0)
    return replace(pr, tau0=tau0)


def profile(m: int, kappa, c, bc: Union[BoundaryPreset, str] = "cone", tau0=None) -> Profile:
    """Shorthand: ``profile(1, 4, 0, "cone")``."""
    if isinstance(bc, str):
        bc = BoundaryPreset.parse(bc)
    return build_profile(ProfileParams(m, as_rational(kappa), as_rational(c), bc), tau0)


def c_affine_parts(m: int, kappa, bc: BoundaryPreset) -> tuple[Poly, Poly]:
    """Numerators (A, B) with P_c = A + c B for every scalar curvature c."""
    kappa = as_rational(kappa)
    p0 = build_profile(ProfileParams(m, kappa, Fraction(0), bc), tau0=0).numerator
    p1 = build_profile(ProfileParams(m, kappa, Fraction(1), bc), tau0=0).numerator
    return p0, p1 - p0


def _default_tau0(pr: Profile) -> Optional[Fraction]:
    try:
        b = positivity_domain(pr)
    except (NotPositiveNearZero, DegenerateProfile):
        return None
    if b == INF:
        return Fraction(1)
    return b.lo / 2


def _check_tau(tau) -> Fraction:
    tau = as_rational(tau)
    if tau <= -1:
        raise PoleAtMinusOne(f"phi has a pole at tau = -1; got tau = {tau}")
    return tau


def eval_phi(pr: Profile, tau) -> Fraction:
    tau = _check_tau(tau)
    return pr.numerator(tau) / (1 + tau) ** pr.m


def eval_phi_prime(pr: Profile, tau) -> Fraction:
    tau = _check_tau(tau)
    m = pr.m
    P = pr.numerator
    return P.derivative()(tau) / (1 + tau) ** m - m * P(tau) / (1 + tau) ** (m + 1)


def phi_float(pr: Profile, tau: float) -> float:
    """Binary64 evaluation; never used for certification."""
    return pr.numerator.eval_float(tau) / (1.0 + tau) ** pr.m


def positivity_domain(pr: Profile, width: Fraction = DEFAULT_WIDTH) -> Endpoint:
    """b with phi > 0 on (0, b): INF, or an isolating interval for b."""
    P = pr.numerator
    if P.is_zero():
        raise DegenerateProfile("phi vanishes identically; no metric exists")
    if P.coeffs[P.low_order()] < 0:
        raise NotPositiveNearZero("phi < 0 immediately to the right of 0")
    if width == DEFAULT_WIDTH and pr._domain is not None:
        return pr._domain
    iv = smallest_positive_root(P, width)
    b = INF if iv is None else RootInterval(*iv)
    if width == DEFAULT_WIDTH:
        object.__setattr__(pr, "_domain", b)
    return b
