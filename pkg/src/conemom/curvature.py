"""Exact curvature identities of the momentum construction.

Everything here is a rational function of tau, normalised by exact
polynomial gcd, so identities are decided by comparing canonical forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from conemom.errors import PoleInDomain, ZeroPolynomial
from conemom.exactalg import Poly, SturmChain, poly_gcd
from conemom.profile import INF, Profile, positivity_domain


class RationalFunction:
    """num/den in lowest terms with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = num if isinstance(num, Poly) else Poly([num])
        den = Poly([1]) if den is None else (den if isinstance(den, Poly) else Poly([den]))
        if den.is_zero():
            raise ZeroPolynomial("rational function with zero denominator")
        if num.is_zero():
            num, den = Poly(), Poly([1])
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
            lead = den.lead
            num, den = num / lead, den / lead
        self.num = num
        self.den = den

    @classmethod
    def poly(cls, p: Poly) -> "RationalFunction":
        return cls(p)

    def __add__(self, other) -> "RationalFunction":
        other = _lift(other)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other) -> "RationalFunction":
        return self + (-_lift(other))

    def __rsub__(self, other) -> "RationalFunction":
        return _lift(other) - self

    def __mul__(self, other) -> "RationalFunction":
        other = _lift(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalFunction":
        other = _lift(other)
        if other.num.is_zero():
            raise ZeroPolynomial("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def derivative(self) -> "RationalFunction":
        return RationalFunction(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def constant_value(self) -> Optional[Fraction]:
        """The constant this function equals identically, or None."""
        if self.num.is_zero():
            return Fraction(0)
        if self.num.degree == 0 and self.den.degree == 0:
            return self.num.coeffs[0] / self.den.coeffs[0]
        return None

    def __call__(self, x):
        return self.num(x) / self.den(x)

    def eval_float(self, x: float) -> float:
        return self.num.eval_float(x) / self.den.eval_float(x)

    def __eq__(self, other) -> bool:
        other = _lift(other)
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"RationalFunction({self.num!r}, {self.den!r})"

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "RationalFunction":
        return cls(Poly.from_json(data["num"]), Poly.from_json(data["den"]))


def _lift(x) -> RationalFunction:
    if isinstance(x, RationalFunction):
        return x
    return RationalFunction(x)


TAU = RationalFunction(Poly.x())
ONE_PLUS_TAU = RationalFunction(Poly([1, 1]))


def phi_rf(pr: Profile) -> RationalFunction:
    return RationalFunction(pr.numerator, pr.denominator)


def scalar_curvature(pr: Profile) -> RationalFunction:
    """m kappa/(1+tau) - P''/(1+tau)^m."""
    m = pr.m
    return (
        RationalFunction(Poly([m * pr.kappa]), Poly([1, 1]))
        - RationalFunction(pr.numerator.derivative(2), pr.denominator)
    )


def scalar_curvature_of(phi: RationalFunction, m: int, kappa) -> RationalFunction:
    """Same formula for an arbitrary profile phi (not necessarily CSC)."""
    w = RationalFunction(Poly.binomial_power(m))
    return RationalFunction(Poly([m * Fraction(kappa)]), Poly([1, 1])) - (w * phi).derivative().derivative() / w


@dataclass(frozen=True)
class RicciCoefficients:
    """rho = A omega^T + B dt ^ d^c t."""

    A: RationalFunction
    B: RationalFunction

    def einstein_constant(self, phi: RationalFunction) -> Optional[Fraction]:
        """alpha with A = alpha (1+tau) and B = alpha phi, if one exists."""
        alpha = (self.A / ONE_PLUS_TAU).constant_value()
        if alpha is None:
            return None
        if not (self.B - phi * alpha).is_zero():
            return None
        return alpha

    def to_json(self) -> dict:
        return {"A": self.A.to_json(), "B": self.B.to_json()}


def ricci_coefficients(pr: Profile) -> RicciCoefficients:
    m = pr.m
    phi = phi_rf(pr)
    dphi = phi.derivative()
    A = pr.kappa - (phi * m + ONE_PLUS_TAU * dphi) / ONE_PLUS_TAU
    B = -((phi * m / ONE_PLUS_TAU).derivative() + dphi.derivative()) * phi
    return RicciCoefficients(A, B)


def laplacian_radial(pr: Profile, u: RationalFunction) -> RationalFunction:
    """Delta u = m/(1+tau) u' phi + (u' phi)' for u = u(tau)."""
    _check_no_pole(pr, u.den)
    return laplacian_from_derivative(pr, u.derivative())


def laplacian_from_derivative(pr: Profile, du: RationalFunction) -> RationalFunction:
    """Radial Laplacian when only u' is rational (e.g. u = log of a polynomial)."""
    phi = phi_rf(pr)
    flux = du * phi
    return flux * pr.m / ONE_PLUS_TAU + flux.derivative()


def _check_no_pole(pr: Profile, den: Poly) -> None:
    if den.degree <= 0:
        return
    b = positivity_domain(pr)
    hi = INF if b == INF else b.lo
    if hi == 0:
        return
    chain = SturmChain(den)
    poles = chain.count_open(0, hi) if hi == INF else chain.count_half_open(0, hi)
    if poles:
        raise PoleInDomain(f"u has {poles} pole(s) inside (0, b)")


def volume_density(pr: Profile) -> RationalFunction:
    """Scalar factor (m+1)(1+tau)^m phi of omega^(m+1)."""
    return RationalFunction(pr.numerator * (pr.m + 1))


def log_numerator_laplacian(pr: Profile) -> RationalFunction:
    """Delta log((1+tau)^m phi) = Delta log P, exactly."""
    P = pr.numerator
    return laplacian_from_derivative(pr, RationalFunction(P.derivative(), P))
