"""The eleven acceptance criteria, each at its stated tolerance and time budget.

Run with ``pytest tests/test_acceptance.py`` (a summary block lists one
PASS/FAIL line per criterion) or ``python tests/test_acceptance.py``.
"""

import random
import sys
import time
from fractions import Fraction

import numpy as np
import pytest
from _oracles import oracle_c0, random_unimodular

from conemom.asymptotics import (
    UnityRootsIdentitySpec,
    closed_form_tau,
    closed_form_tau0,
    fit_expansion,
    unity_roots_identity,
)
from conemom.classify import (
    Verdict,
    einstein_check,
    endpoint_behavior,
    solve_c0,
    theorem_verdict,
)
from conemom.curvature import phi_rf, ricci_coefficients, scalar_curvature
from conemom.exactalg import SturmChain
from conemom.potential import (
    build_table,
    grid,
    kahler_potential_F,
    kahler_potential_of_tau,
    symplectic_potential_G,
    arclength_s,
    tau_of_time,
    time_of_tau,
)
from conemom.profile import (
    INF,
    BoundaryPreset,
    ProfileParams,
    build_profile,
    c_affine_parts,
    phi_float,
    positivity_domain,
    profile,
)
from conemom.sasaki import EtaEinsteinData, d_homothety
from conemom.toric import ReebVector, ToricDiagram, certify, check_good


class Budget:
    def __init__(self, seconds):
        self.seconds = seconds

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        if exc[0] is None:
            assert self.elapsed < self.seconds, f"took {self.elapsed:.2f}s, budget {self.seconds}s"


def test_c1_csc_identity(criterion):
    criterion(1, "scalar curvature equals c exactly on the full grid")
    with Budget(5):
        n = 0
        for m in range(1, 6):
            for kappa in (-3, -2, -1, 0, 1, 2, 2 * m + 2):
                for c in range(-4, 1):
                    for bc in (BoundaryPreset.cone(), BoundaryPreset.bundle()):
                        pr = build_profile(ProfileParams(m, Fraction(kappa), Fraction(c), bc), tau0=1)
                        assert (scalar_curvature(pr) - c).is_zero(), (m, kappa, c, bc)
                        n += 1
    assert n == 5 * 7 * 5 * 2


def test_c2_scalar_flat_cone(criterion):
    criterion(2, "cone with kappa = 2m+2 is complete scalar-flat; c < 0 complete, t2 finite")
    with Budget(1):
        for m in (1, 2, 3):
            rep = theorem_verdict(profile(m, 2 * m + 2, 0, "cone"))
            assert rep.verdict == Verdict.CompleteScalarFlat and rep.einstein is None
            for c in (-3, -2, -1):
                rep = theorem_verdict(profile(m, 2 * m + 2, c, "cone"))
                assert rep.complete and rep.einstein is None
                assert not rep.behavior.t2_infinite


def test_c3_flat_bundle(criterion):
    criterion(3, "bundle kappa = 2, c = 0 is Ricci-flat, incomplete at 0, complete at infinity")
    with Budget(1):
        for m in (1, 2, 3):
            pr = profile(m, 2, 0, "bundle")
            ric = ricci_coefficients(pr)
            assert ric.A.is_zero() and ric.B.is_zero()
            assert ric.einstein_constant(phi_rf(pr)) == 0
            assert einstein_check(pr) == 0
            beh = endpoint_behavior(pr)
            assert beh.order_at_zero == 1 and not beh.s_complete_at_zero
            assert beh.b == INF and beh.s_complete_at_b


def test_c4_einstein_table(criterion):
    criterion(4, "einstein_check hits alpha = 2p/k - 2 exactly at c = (m+1) alpha")
    others = [Fraction(j, 3) - 4 for j in range(40)]
    with Budget(5):
        for p in (1, 2, 3):
            for k in range(1, 9):
                alpha = Fraction(2 * p, k) - 2
                for m in (1, 2, 3):
                    c_e = (m + 1) * alpha
                    assert einstein_check(profile(m, Fraction(2 * p, k), c_e, "bundle")) == alpha
                    grid_c = [c for c in others if c != c_e][:20]
                    assert len(grid_c) == 20
                    for c in grid_c:
                        assert einstein_check(profile(m, Fraction(2 * p, k), c, "bundle")) is None


def test_c5_c0_certificate(criterion):
    criterion(5, "c0 certificate with exact positivity band and dense-grid oracle")
    tol = 1e-9
    with Budget(10):
        for bc in (BoundaryPreset.cone(), BoundaryPreset.bundle()):
            for m in (1, 2):
                for kappa in (-1, -2, -4):
                    res = solve_c0(m, kappa, bc, tol=tol)
                    cert = res.certificate
                    assert res.c0 < 0
                    assert cert.b_value <= 1e-12 and cert.b_derivative <= 1e-12
                    # independent re-check of the band from the polynomials themselves
                    A, B = c_affine_parts(m, kappa, bc)
                    c0 = cert.c_upper
                    below = A + B * (c0 - Fraction(tol))
                    assert SturmChain(below).count_open(0, INF) == 0
                    assert below.coeffs[below.low_order()] > 0
                    assert SturmChain(A + B * (c0 + Fraction(tol))).count_open(0, INF) >= 1
                    assert abs(res.c0 - oracle_c0(m, kappa, bc)) <= 1e-9


def test_c6_closed_form_flow(criterion):
    criterion(6, "tau_of_time matches the closed form to 1e-10 on 101 points")
    ts = np.linspace(-5.0, 5.0, 101)
    with Budget(10):
        for m in (1, 2, 3, 4):
            pr = profile(m, 2, 0, "bundle").with_tau0(Fraction(closed_form_tau0(m)))
            worst = max(abs(closed_form_tau(m, t) - tau_of_time(pr, t)) for t in ts)
            assert worst <= 1e-10, (m, worst)


def test_c7_asymptotic_expansion(criterion):
    criterion(7, "fitted coefficient, exponent and remainder exponent of f - r^2")
    with Budget(5):
        for m in (1, 2, 3):
            rep = fit_expansion(m, (10.0, 100.0))
            assert rep.relative_error <= 0.01
            assert rep.exponent_error <= 0.02
            assert rep.remainder_error <= 0.10


LEGENDRE_PROFILES = [
    (1, 4, 0, "cone"),
    (2, 6, -1, "cone"),
    (1, 4, 2, "cone"),
    (1, 2, 0, "bundle"),
    (3, 2, 0, "bundle"),
    (2, 3, -1, "bundle"),
]


def test_c8_legendre_duality(criterion):
    criterion(8, "G + F = tau t at 200 points on 6 profiles; finite differences")
    quad_tol = 1e-12
    with Budget(10):
        for args in LEGENDRE_PROFILES:
            pr = profile(*args)
            b = positivity_domain(pr)
            tau0 = float(pr.tau0)
            hi = 10 * tau0 if b == INF else 0.9 * float(b)
            taus = grid(tau0 / 100, hi, 200)
            for x in taus:
                res = symplectic_potential_G(pr, x) + kahler_potential_of_tau(pr, x) - x * time_of_tau(pr, x)
                assert abs(res) <= 2 * quad_tol, (args, x, res)
            table = build_table(pr, taus, quad_tol)
            assert len(table.samples) == 200
            assert max(r.legendre_residual() for r in table.samples) <= 1e-9
            assert table.ok

            for tau in (0.5 * tau0, 1.5 * tau0):
                t, h = time_of_tau(pr, tau), 1e-4
                Fp, F0, Fm = (kahler_potential_F(pr, t + d) for d in (h, 0.0, -h))
                assert abs((Fp - Fm) / (2 * h) - tau) <= 1e-5
                assert abs((Fp - 2 * F0 + Fm) / h**2 - phi_float(pr, tau)) <= 1e-5
                k = 1e-4 * tau
                Gs = [symplectic_potential_G(pr, tau + d) for d in (k, 0.0, -k)]
                assert abs((Gs[0] - 2 * Gs[1] + Gs[2]) / k**2 - 1 / phi_float(pr, tau)) <= 1e-5
                sp = arclength_s(pr, tau_of_time(pr, t + h))
                sm = arclength_s(pr, tau_of_time(pr, t - h))
                assert abs((sp - sm) / (2 * h) - phi_float(pr, tau) ** 0.5) <= 1e-5


def toric_signature(diag, xi):
    cert = certify(diag, xi)
    g = cert.goodness
    return (
        cert.primitive_minimal.primitive,
        cert.primitive_minimal.minimal,
        g.good,
        None if g.violation is None else g.violation["divisors"],
        cert.height.ell,
        None if cert.reeb is None else cert.reeb.admissible,
    )


def test_c9_toric(criterion):
    criterion(9, "standard simplex passes; {(1,0),(1,2)} has divisor 2; unimodular invariance")
    rng = random.Random(9)
    with Budget(5):
        cases = []
        for n in (2, 3, 4):
            diag, xi = ToricDiagram.standard(n), ReebVector(tuple([1] * n))
            cert = certify(diag, xi)
            assert cert.primitive_minimal.ok and cert.goodness.good
            assert cert.height.ell == 1 and cert.height.gamma == tuple([Fraction(-1)] * n)
            assert cert.reeb.admissible
            cases.append((diag, xi))
        bad = ToricDiagram(((1, 0), (1, 2)))
        good = check_good(bad)
        assert not good.good and 2 in good.violation["divisors"]
        cases.append((bad, None))
        for diag, xi in cases:
            base = toric_signature(diag, xi)
            for _ in range(20):
                U = random_unimodular(diag.dim, rng)
                moved = toric_signature(diag.transform(U), None if xi is None else xi.transform(U))
                assert moved == base


def test_c10_roots_of_unity(criterion):
    criterion(10, "roots-of-unity identity below 1e-11 on 1000 points")
    rng = np.random.default_rng(10)
    with Budget(1):
        for m in range(1, 6):
            x = np.sqrt(rng.random(1000)) * np.exp(2j * np.pi * rng.random(1000))
            assert unity_roots_identity(UnityRootsIdentitySpec(m + 1), x) < 1e-11


def test_c11_d_homothety(criterion):
    criterion(11, "D-homothety round trip, kappa' = kappa/a, lambda' + nu' = 2m")
    rng = random.Random(11)
    with Budget(1):
        for _ in range(100):
            m = rng.randint(1, 6)
            lam = Fraction(rng.randint(-50, 50), rng.randint(1, 12))
            a = Fraction(rng.randint(1, 40), rng.randint(1, 12))
            d = EtaEinsteinData.from_lambda(m, lam)
            e = d_homothety(d, a)
            assert d_homothety(e, 1 / a) == d
            assert e.kappa == d.kappa / a
            assert e.lam + e.nu == 2 * m


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
