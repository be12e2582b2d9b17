import math

import pytest
import scipy.integrate

from conemom import _quadcore_py, quadcore
from conemom.errors import OutsideDomain, QuadratureBudgetExceeded
from conemom.profile import profile
from conemom.quadrature import integrate_profile

CASES = [
    ((1, 4, 0, "cone"), 0.5, 3.0, 1.0, 0.0, False),
    ((1, 4, 0, "cone"), 0.5, 3.0, 0.0, 1.0, False),
    ((2, 6, -1, "bundle"), 0.01, 40.0, 40.0, -1.0, False),
    ((3, 2, 0, "bundle"), 1e-3, 1e3, 1.0, 0.0, True),
    ((1, 4, 2, "cone"), 0.1, 2.9, 1.0, 0.0, False),
]


def integrand(pr, w0, w1, half):
    def f(x):
        g = (1 + x) ** pr.m / pr.numerator.eval_float(x)
        return (w0 + w1 * x) * (math.sqrt(g) if half else g)
    return f


@pytest.mark.parametrize("args, a, b, w0, w1, half", CASES)
def test_against_scipy_quad(args, a, b, w0, w1, half):
    pr = profile(*args)
    res = integrate_profile(pr.numerator.float_coeffs, pr.m, a, b, w0, w1, half, 1e-12)
    ref, ref_err = scipy.integrate.quad(integrand(pr, w0, w1, half), a, b, epsabs=1e-13, epsrel=1e-13, limit=500)
    # the kernel may stop at its roundoff floor instead (integrands here are positive)
    assert res.error <= max(1e-12, 100 * 2.220446049250313e-16 * abs(res.value))
    assert res.value == pytest.approx(ref, abs=1e-11, rel=1e-12)


def test_closed_form_log():
    # phi = 2 tau^2/(1+tau): int_1^2 (1+x)/(2x^2) = (log 2 + 1/2)/2
    pr = profile(1, 4, 0, "cone")
    res = integrate_profile(pr.numerator.float_coeffs, 1, 1.0, 2.0)
    assert res.value == pytest.approx((math.log(2) + 0.5) / 2, abs=1e-15)


def test_orientation_and_empty_interval():
    pr = profile(1, 4, 0, "cone")
    c = pr.numerator.float_coeffs
    fwd = integrate_profile(c, 1, 0.5, 2.0).value
    assert integrate_profile(c, 1, 2.0, 0.5).value == -fwd
    assert integrate_profile(c, 1, 1.0, 1.0).value == 0.0


def test_domain_and_budget_errors():
    pr = profile(1, 4, 2, "cone")  # b = 3
    with pytest.raises(OutsideDomain):
        integrate_profile(pr.numerator.float_coeffs, 1, 1.0, 4.0)
    with pytest.raises(QuadratureBudgetExceeded):
        integrate_profile(pr.numerator.float_coeffs, 1, 0.1, 2.999999, abstol=1e-15, limit=2)


@pytest.mark.skipif(quadcore.BACKEND != "cython", reason="compiled kernel not built")
@pytest.mark.parametrize("args, a, b, w0, w1, half", CASES)
def test_backends_agree_bitwise(args, a, b, w0, w1, half):
    from conemom import _quadcore

    pr = profile(*args)
    call = (tuple(pr.numerator.float_coeffs), pr.m, w0, w1, half, a, b, 1e-12, 4000)
    assert _quadcore.gk_integrate(*call) == _quadcore_py.gk_integrate(*call)
