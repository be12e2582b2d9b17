import math

import numpy as np
import pytest

from conemom.asymptotics import (
    UnityRootsIdentitySpec,
    bundle_phi,
    closed_form_potential,
    closed_form_tau,
    closed_form_tau0,
    cross_check_tau,
    excess_rows,
    fit_expansion,
    potential_excess,
    predicted_coefficient,
    unity_roots_identity,
)
from conemom.errors import BranchCutHit
from conemom.profile import phi_float, profile


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_bundle_phi_matches_profile(m):
    pr = profile(m, 2, 0, "bundle")
    for tau in (0.01, 0.7, 5.0, 300.0):
        assert bundle_phi(m, tau) == pytest.approx(phi_float(pr, tau), rel=1e-13)


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_closed_form_tau_solves_flow(m):
    # d tau / dt = phi(tau), with tau(0) = tau0
    assert closed_form_tau(m, 0.0) == closed_form_tau0(m)
    for t in (-3.0, -0.4, 0.0, 1.1, 4.0):
        h = 1e-5
        d = (closed_form_tau(m, t + h) - closed_form_tau(m, t - h)) / (2 * h)
        assert d == pytest.approx(bundle_phi(m, closed_form_tau(m, t)), rel=1e-7)


def test_closed_form_tau_extremes():
    assert math.isfinite(closed_form_tau(2, 400.0))
    assert closed_form_tau(2, -400.0) == pytest.approx(math.exp(-800.0) / 3, rel=1e-12)


def test_cross_check_small():
    assert cross_check_tau(2, np.linspace(-2, 2, 9)) <= 1e-10


@pytest.mark.parametrize("m", [1, 2, 3])
def test_fit_expansion(m):
    rep = fit_expansion(m)
    assert rep.predicted_coefficient == predicted_coefficient(m)
    assert rep.relative_error < 1e-3
    assert rep.exponent_error < 1e-3
    assert rep.remainder_error < 1e-2


def test_excess_consistent():
    m, r = 2, 12.0
    assert potential_excess(m, r) == pytest.approx(closed_form_potential(m, r) - r * r, abs=1e-12)
    [(rr, f, ex)] = excess_rows(m, [r])
    assert rr == r and ex == pytest.approx(potential_excess(m, r), rel=1e-15)
    assert ex == pytest.approx(float(predicted_coefficient(m)) * r ** (-2 * m), rel=1e-2)


def test_potential_rejects_nonpositive_radius():
    with pytest.raises(BranchCutHit):
        closed_form_potential(1, 0.0)
    with pytest.raises(ValueError):
        fit_expansion(1, window=(1.0, 10.0))


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
def test_unity_roots_identity(m):
    rng = np.random.default_rng(m)
    x = np.sqrt(rng.random(300)) * np.exp(2j * np.pi * rng.random(300))
    assert unity_roots_identity(UnityRootsIdentitySpec(m + 1), x) < 1e-12
    with pytest.raises(ValueError):
        UnityRootsIdentitySpec(0)
