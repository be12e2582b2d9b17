"""Exact identity suite over a parameter grid (backs ``conemom verify``)."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from conemom.classify import einstein_check
from conemom.curvature import phi_rf, ricci_coefficients, scalar_curvature
from conemom.exactalg import Poly
from conemom.profile import BoundaryPreset, ProfileParams, build_profile, eval_phi, eval_phi_prime

GRIDS = {
    "default": {"m": range(1, 6), "c": range(-4, 1)},
    "small": {"m": range(1, 3), "c": range(-2, 1)},
}


def kappa_values(m: int) -> list[int]:
    return [-3, -2, -1, 0, 1, 2, 2 * m + 2]


@dataclass
class IdentityCheck:
    name: str
    cases: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"cases": self.cases, "passed": self.passed, "failures": self.failures[:10]}


def ode_residual(pr) -> Poly:
    """P'' - m kappa (1+tau)^(m-1) + c (1+tau)^m; zero for every CSC profile."""
    m = pr.m
    return (
        pr.numerator.derivative(2)
        - Poly.binomial_power(m - 1) * (m * pr.kappa)
        + Poly.binomial_power(m) * pr.c
    )


def einstein_expected(pr):
    m, kappa, c = pr.m, pr.kappa, pr.c
    if pr.bc.tag == "cone":
        return kappa if c == (m + 1) * kappa else None
    if pr.bc.tag == "bundle":
        return kappa - 2 if c == (m + 1) * (kappa - 2) else None
    raise ValueError(pr.bc)


def run_identity_suite(grid: str = "default") -> dict[str, IdentityCheck]:
    cfg = GRIDS[grid]
    checks = {
        name: IdentityCheck(name)
        for name in ("scalar_curvature", "ode", "boundary", "einstein_rule", "ricci_agreement")
    }
    for m in cfg["m"]:
        for kappa in kappa_values(m):
            cs = [Fraction(c) for c in cfg["c"]]
            # add the Einstein value for each preset so the positive branch is exercised
            extra = {"cone": (m + 1) * kappa, "bundle": (m + 1) * (kappa - 2)}
            for bc in (BoundaryPreset.cone(), BoundaryPreset.bundle()):
                for c in sorted(set(cs) | {Fraction(extra[bc.tag])}):
                    pr = build_profile(ProfileParams(m, Fraction(kappa), c, bc), tau0=Fraction(1))
                    key = {"m": m, "kappa": str(kappa), "c": str(c), "bc": str(bc)}
                    _record(checks["scalar_curvature"], key, scalar_curvature(pr).constant_value() == c)
                    _record(checks["ode"], key, ode_residual(pr).is_zero())
                    _record(
                        checks["boundary"],
                        key,
                        eval_phi(pr, 0) == bc.v0 and eval_phi_prime(pr, 0) == bc.v1,
                    )
                    alpha = einstein_check(pr)
                    _record(checks["einstein_rule"], key, alpha == einstein_expected(pr))
                    ric = ricci_coefficients(pr).einstein_constant(phi_rf(pr))
                    _record(checks["ricci_agreement"], key, ric == alpha)
    return checks


def _record(check: IdentityCheck, key: dict, ok: bool) -> None:
    check.cases += 1
    if not ok:
        check.failures.append(key)
