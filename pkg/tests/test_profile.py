from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conemom.errors import ConemomError, DegenerateProfile, NotPositiveNearZero
from conemom.exactalg import Poly
from conemom.profile import (
    INF,
    BoundaryPreset,
    eval_phi,
    eval_phi_prime,
    phi_float,
    positivity_domain,
    profile,
)


def test_boundary_presets():
    assert (BoundaryPreset.cone().v0, BoundaryPreset.cone().v1) == (0, 0)
    assert (BoundaryPreset.bundle().v0, BoundaryPreset.bundle().v1) == (0, 2)
    custom = BoundaryPreset.parse("custom:1,1/2")
    assert (custom.v0, custom.v1) == (1, Fraction(1, 2))
    assert str(custom) == "custom:1,1/2"
    with pytest.raises(ConemomError):
        BoundaryPreset.parse("nonsense")
    with pytest.raises(ConemomError):
        BoundaryPreset.custom(-1, 0)


def test_scalar_flat_cone_example():
    pr = profile(1, 4, 0, "cone")
    assert pr.numerator == Poly([0, 0, 2])
    assert positivity_domain(pr) == INF


def test_finite_b_example():
    # phi = tau^2 (3 - tau) / (3 (1 + tau)), which closes up at tau = 3
    pr = profile(1, 4, 2, "cone")
    assert pr.numerator == Poly([0, 0, 1, Fraction(-1, 3)])
    b = positivity_domain(pr)
    assert b.exact and b.lo == 3


def test_irrational_style_endpoint_is_bracketed():
    pr = profile(1, -1, 0, "bundle")
    b = positivity_domain(pr)
    assert b.lo < 4 <= b.hi
    assert b.hi - b.lo <= Fraction(1, 2**64)


def test_negative_near_zero_rejected():
    with pytest.raises(NotPositiveNearZero):
        positivity_domain(profile(1, 4, 10, "cone"))


def test_degenerate_profile():
    # zero data and kappa = c = 0 leaves phi = 0
    with pytest.raises(DegenerateProfile):
        positivity_domain(profile(1, 0, 0, "cone"))


ms = st.integers(1, 5)
qs = st.fractions(-6, 6, max_denominator=4)


@given(ms, qs, qs, st.sampled_from(["cone", "bundle"]))
def test_boundary_data_and_degree(m, kappa, c, bc):
    pr = profile(m, kappa, c, bc)
    preset = BoundaryPreset.parse(bc)
    assert eval_phi(pr, 0) == preset.v0
    assert eval_phi_prime(pr, 0) == preset.v1
    P = pr.numerator
    if c != 0:
        assert P.degree == m + 2
        assert P.lead == -c / ((m + 1) * (m + 2))
    elif kappa != 0:
        assert P.degree == m + 1
        assert P.lead == kappa / (m + 1)


@given(ms, st.fractions(2, 8, max_denominator=4), st.fractions(-6, 0, max_denominator=4))
def test_nonpositive_c_bundle_is_positive(m, kappa, c):
    # P(0) = 0, P'(0) = 2 and P'' >= 0 when kappa >= 0 >= c
    pr = profile(m, kappa, c, "bundle")
    assert positivity_domain(pr) == INF


def test_phi_float_matches_exact():
    pr = profile(3, Fraction(7, 2), Fraction(-1, 3), "bundle")
    for x in (Fraction(1, 10), Fraction(1), Fraction(37, 4)):
        assert phi_float(pr, float(x)) == pytest.approx(float(eval_phi(pr, x)), rel=1e-14)


def test_json_roundtrip_fields():
    data = profile(2, 6, -1, "cone").to_json()
    assert data["m"] == 2 and data["kappa"] == "6" and data["c"] == "-1"


def test_integration_constants_and_values():
    pr = profile(1, 4, 0, "cone")
    assert (pr.c1, pr.c2) == (-4, -2)
    assert eval_phi(pr, 1) == 1
    flat = profile(1, 2, 0, "bundle")
    assert flat.numerator == Poly([0, 2, 1])
    assert eval_phi(flat, 1) == Fraction(3, 2)
    for m in (1, 3):
        kappa, c = Fraction(5, 2), Fraction(-3, 4)
        cone, bundle = profile(m, kappa, c, "cone"), profile(m, kappa, c, "bundle")
        assert cone.c1 == -kappa + c / (m + 1)
        assert cone.c2 == -kappa / (m + 1) + c / ((m + 1) * (m + 2))
        assert bundle.c1 == c / (m + 1) + 2 - kappa
        assert bundle.c2 == c / ((m + 1) * (m + 2)) - kappa / (m + 1)


def test_pole_at_minus_one():
    from conemom.errors import PoleAtMinusOne

    with pytest.raises(PoleAtMinusOne):
        eval_phi(profile(1, 4, 0, "cone"), -1)
