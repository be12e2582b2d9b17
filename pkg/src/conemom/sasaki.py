"""Reduced eta-Einstein bookkeeping: (m, lambda, nu, kappa) and D-homothety."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from conemom.errors import ConemomError, InconsistentEtaEinstein, NonPositiveScale
from conemom.exactalg import as_rational


@dataclass(frozen=True)
class EtaEinsteinData:
    """Constants of an eta-Einstein Sasaki metric Ric = lambda g + nu eta x eta.

    ``m`` is the complex dimension of the leaf spaces (dim_R S = 2m + 1).
    The redundant fields are checked, not normalised: lambda + nu = 2m and
    kappa = lambda + 2 must both hold exactly.
    """

    m: int
    lam: Fraction
    nu: Fraction
    kappa: Fraction

    def __post_init__(self):
        if not isinstance(self.m, int) or self.m < 1:
            raise ConemomError(f"m must be >= 1, got {self.m!r}")
        for name in ("lam", "nu", "kappa"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        if self.lam + self.nu != 2 * self.m:
            raise InconsistentEtaEinstein(
                f"lambda + nu = {self.lam + self.nu}, expected 2m = {2 * self.m}"
            )
        if self.kappa != self.lam + 2:
            raise InconsistentEtaEinstein(
                f"kappa = {self.kappa}, expected lambda + 2 = {self.lam + 2}"
            )

    @classmethod
    def from_lambda(cls, m: int, lam) -> "EtaEinsteinData":
        lam = as_rational(lam)
        return cls(m, lam, 2 * m - lam, lam + 2)

    @classmethod
    def from_kappa(cls, m: int, kappa) -> "EtaEinsteinData":
        return cls.from_lambda(m, as_rational(kappa) - 2)

    @classmethod
    def sasaki_einstein(cls, m: int) -> "EtaEinsteinData":
        return cls.from_lambda(m, 2 * m)

    @property
    def is_sasaki_einstein(self) -> bool:
        return self.lam == 2 * self.m

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "lambda": str(self.lam),
            "nu": str(self.nu),
            "kappa": str(self.kappa),
        }

    @classmethod
    def from_json(cls, data: dict) -> "EtaEinsteinData":
        return cls(int(data["m"]), as_rational(data["lambda"]),
                   as_rational(data["nu"]), as_rational(data["kappa"]))


@dataclass(frozen=True)
class LineBundleData:
    """K_M = L^p and the Sasaki manifold is the circle bundle of L^k."""

    p: int
    k: int

    def __post_init__(self):
        if self.p < 1 or self.k < 1:
            raise ConemomError(f"p and k must be >= 1, got p={self.p}, k={self.k}")


def d_homothety(data: EtaEinsteinData, a) -> EtaEinsteinData:
    """Rescale r -> r^a: lambda' = (lambda + 2 - 2a)/a, kappa' = kappa/a."""
    a = as_rational(a)
    if a <= 0:
        raise NonPositiveScale(f"D-homothety needs a > 0, got {a}")
    lam = (data.lam + 2 - 2 * a) / a
    out = EtaEinsteinData(data.m, lam, 2 * data.m - lam, lam + 2)
    assert out.kappa == data.kappa / a
    return out


def d_homothety_radius(r: float, a) -> float:
    if r <= 0:
        raise NonPositiveScale(f"radius must be positive, got {r}")
    a = float(a)
    if a <= 0:
        raise NonPositiveScale(f"D-homothety needs a > 0, got {a}")
    return math.pow(r, a)


def kappa_for_bundle(b: LineBundleData) -> Fraction:
    return Fraction(2 * b.p, b.k)
