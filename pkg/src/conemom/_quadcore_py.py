"""Pure-Python adaptive Gauss-Kronrod kernel (fallback for ``_quadcore``).

Integrates (w0 + w1 x) * g(x) with g = (1+x)^m / P(x), or its square root,
where P is given by float coefficients, low degree first.  Must stay
operation-for-operation identical to ``_quadcore.pyx``.
"""

import math

EPS = 2.220446049250313e-16
UFLOW = 2.2250738585072014e-308

XGK = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
)
WGK = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)
WG = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
)

STATUS_OK = 0
STATUS_LIMIT = 1
STATUS_DOMAIN = 2


class _DomainError(Exception):
    pass


def _integrand(x, coeffs, m, w0, w1, half):
    p = 0.0
    for k in range(len(coeffs) - 1, -1, -1):
        p = p * x + coeffs[k]
    if not p > 0.0:
        raise _DomainError
    w = 1.0
    for _ in range(m):
        w = w * (1.0 + x)
    g = w / p
    if half:
        g = math.sqrt(g)
    return (w0 + w1 * x) * g


def _gk15(a, b, coeffs, m, w0, w1, half):
    centr = 0.5 * (a + b)
    hlgth = 0.5 * (b - a)
    fc = _integrand(centr, coeffs, m, w0, w1, half)
    resg = fc * WG[3]
    resk = fc * WGK[7]
    resabs = abs(resk)
    fv1 = [0.0] * 7
    fv2 = [0.0] * 7
    for j in range(7):
        absc = hlgth * XGK[j]
        f1 = _integrand(centr - absc, coeffs, m, w0, w1, half)
        f2 = _integrand(centr + absc, coeffs, m, w0, w1, half)
        fv1[j] = f1
        fv2[j] = f2
        resk = resk + WGK[j] * (f1 + f2)
        resabs = resabs + WGK[j] * (abs(f1) + abs(f2))
        if j % 2 == 1:
            resg = resg + WG[j // 2] * (f1 + f2)
    reskh = resk * 0.5
    resasc = WGK[7] * abs(fc - reskh)
    for j in range(7):
        resasc = resasc + WGK[j] * (abs(fv1[j] - reskh) + abs(fv2[j] - reskh))
    result = resk * hlgth
    resabs = resabs * abs(hlgth)
    resasc = resasc * abs(hlgth)
    abserr = abs((resk - resg) * hlgth)
    if resasc != 0.0 and abserr != 0.0:
        abserr = resasc * min(1.0, (200.0 * abserr / resasc) ** 1.5)
    if resabs > UFLOW / (50.0 * EPS):
        abserr = max(50.0 * EPS * resabs, abserr)
    return result, abserr, resabs


def _neumaier(values):
    s = 0.0
    comp = 0.0
    for v in values:
        t = s + v
        if abs(s) >= abs(v):
            comp = comp + ((s - t) + v)
        else:
            comp = comp + ((v - t) + s)
        s = t
    return s + comp


def gk_integrate(coeffs, m, w0, w1, half, a, b, abstol, limit):
    """Global adaptive G7-K15 quadrature on [a, b] (requires a < b).

    Returns ``(value, abserr, neval, status)``.
    """
    coeffs = tuple(float(c) for c in coeffs)
    m = int(m)
    w0 = float(w0)
    w1 = float(w1)
    half = bool(half)
    try:
        r, e, ra = _gk15(a, b, coeffs, m, w0, w1, half)
    except _DomainError:
        return 0.0, 0.0, 15, STATUS_DOMAIN
    lo = [a]
    hi = [b]
    res = [r]
    err = [e]
    rabs = [ra]
    errsum = e
    neval = 15
    while True:
        floor = 0.0
        for v in rabs:
            floor = floor + v
        floor = 100.0 * EPS * floor
        if errsum <= abstol or errsum <= floor:
            break
        if len(lo) >= limit:
            return _neumaier(res), errsum, neval, STATUS_LIMIT
        i = 0
        emax = err[0]
        for k in range(1, len(err)):
            if err[k] > emax:
                emax = err[k]
                i = k
        a1 = lo[i]
        b2 = hi[i]
        mid = 0.5 * (a1 + b2)
        if not (a1 < mid < b2):
            # interval cannot be split further in binary64
            return _neumaier(res), errsum, neval, STATUS_LIMIT
        try:
            r1, e1, ra1 = _gk15(a1, mid, coeffs, m, w0, w1, half)
            r2, e2, ra2 = _gk15(mid, b2, coeffs, m, w0, w1, half)
        except _DomainError:
            return _neumaier(res), errsum, neval, STATUS_DOMAIN
        neval += 30
        errsum = errsum + (e1 + e2 - err[i])
        hi[i] = mid
        res[i] = r1
        err[i] = e1
        rabs[i] = ra1
        lo.append(mid)
        hi.append(b2)
        res.append(r2)
        err.append(e2)
        rabs.append(ra2)
    errsum = 0.0
    for v in err:
        errsum = errsum + v
    return _neumaier(res), errsum, neval, STATUS_OK
