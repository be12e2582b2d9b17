from fractions import Fraction

import pytest
from _oracles import oracle_c0

from conemom.classify import (
    Verdict,
    einstein_check,
    endpoint_behavior,
    solve_c0,
    theorem_verdict,
)
from conemom.errors import ConemomError, DegenerateProfile
from conemom.exactalg import SturmChain
from conemom.profile import INF, BoundaryPreset, c_affine_parts, profile


def test_endpoint_examples():
    beh = endpoint_behavior(profile(1, 4, 2, "cone"))
    assert beh.order_at_zero == 2 and beh.b.lo == 3 and beh.order_at_b == 1
    assert beh.s_complete_at_zero and not beh.s_complete_at_b
    beh = endpoint_behavior(profile(1, 2, 0, "bundle"))
    assert beh.order_at_zero == 1 and beh.b == INF and beh.growth_degree == 1
    assert not beh.s_complete_at_zero and beh.s_complete_at_b
    beh = endpoint_behavior(profile(2, 6, -1, "cone"))
    assert beh.growth_degree == 2 and not beh.t2_infinite and beh.s_complete_at_b


def test_einstein_rules():
    for m in (1, 2, 3):
        for kappa in (Fraction(-2), Fraction(1, 3), Fraction(4)):
            assert einstein_check(profile(m, kappa, (m + 1) * kappa, "cone")) == kappa
            assert einstein_check(profile(m, kappa, (m + 1) * (kappa - 2), "bundle")) == kappa - 2
            assert einstein_check(profile(m, kappa, (m + 1) * kappa + 1, "cone")) is None
    assert einstein_check(profile(2, 1, -3, "bundle")) == -1
    assert einstein_check(profile(1, -4, -8, "cone")) == -4


@pytest.mark.parametrize(
    "args, verdict",
    [
        ((1, 4, 0, "cone"), Verdict.CompleteScalarFlat),
        ((2, 6, -1, "cone"), Verdict.CompleteNegativeCSC),
        ((1, 4, 2, "cone"), Verdict.IncompleteAtOuterEnd),
        ((1, 2, 0, "bundle"), Verdict.IncompleteAtZeroSection),
        ((1, -1, 0, "bundle"), Verdict.IncompleteBothEnds),
        ((1, 0, -2, "cone"), Verdict.CompleteNegativeCSC),
        ((1, -4, -8, "cone"), Verdict.CompleteEinstein),
    ],
)
def test_theorem_verdict_examples(args, verdict):
    rep = theorem_verdict(profile(*args))
    assert rep.verdict == verdict
    assert rep.matches_regime in (None, True)


def test_theorem_verdict_degenerate():
    with pytest.raises(DegenerateProfile):
        theorem_verdict(profile(1, 0, 0, "cone"))


@pytest.mark.parametrize("bc", [BoundaryPreset.cone(), BoundaryPreset.bundle()], ids=str)
@pytest.mark.parametrize("m", [1, 2, 3])
@pytest.mark.parametrize("kappa", [-1, -2, -4, Fraction(-1, 2)])
def test_solve_c0_against_oracle(bc, m, kappa):
    res = solve_c0(m, kappa, bc, tol=1e-9)
    assert res.certificate.ok
    assert res.c0 < 0
    assert res.c0 == pytest.approx(oracle_c0(m, kappa, bc), abs=1e-9)
    if bc.tag == "cone":
        assert res.c0 == m * kappa and res.certificate.b_location == "zero"
    else:
        assert res.certificate.b_location == "interior" and res.b > 0


def test_c0_sanity_band():
    # phi stays positive a bit below c0 and dips below zero a bit above it
    m, kappa, bc = 1, -2, BoundaryPreset.bundle()
    res = solve_c0(m, kappa, bc, tol=1e-9)
    A, B = c_affine_parts(m, kappa, bc)
    c0 = Fraction(res.c0)
    assert SturmChain(A + B * (c0 - Fraction(1, 10**8))).count_open(0, INF) == 0
    assert SturmChain(A + B * (c0 + Fraction(1, 10**8))).count_open(0, INF) > 0


def test_bundle_flat_c0_is_zero():
    res = solve_c0(1, 0, BoundaryPreset.bundle())
    assert res.c0 == 0 and res.certificate.b_location == "infinity"


def test_c0_rejects_bad_inputs():
    with pytest.raises(ConemomError):
        solve_c0(1, 1, BoundaryPreset.cone())
    with pytest.raises(ConemomError):
        solve_c0(1, 1, BoundaryPreset.bundle())
    with pytest.raises(ConemomError):
        solve_c0(1, -1, BoundaryPreset.cone(), tol=0)
