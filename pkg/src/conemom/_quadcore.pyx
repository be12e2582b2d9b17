# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled adaptive Gauss-Kronrod kernel.

Mirror of ``_quadcore_py``; keep the two operation-for-operation identical.
"""

from libc.math cimport fabs, sqrt, pow
from libc.stdlib cimport malloc, free

cdef double EPS = 2.220446049250313e-16
cdef double UFLOW = 2.2250738585072014e-308

cdef double XGK[8]
cdef double WGK[8]
cdef double WG[4]
XGK[:] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
]
WGK[:] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
]
WG[:] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
]

cdef enum:
    ST_OK = 0
    ST_LIMIT = 1
    ST_DOMAIN = 2

STATUS_OK = ST_OK
STATUS_LIMIT = ST_LIMIT
STATUS_DOMAIN = ST_DOMAIN


cdef struct Poly:
    double *c
    int n
    int m
    double w0
    double w1
    int half


cdef inline int integrand(const Poly *P, double x, double *out) nogil:
    cdef double p = 0.0
    cdef double w = 1.0
    cdef double g
    cdef int k
    for k in range(P.n - 1, -1, -1):
        p = p * x + P.c[k]
    if not p > 0.0:
        return 1
    for k in range(P.m):
        w = w * (1.0 + x)
    g = w / p
    if P.half:
        g = sqrt(g)
    out[0] = (P.w0 + P.w1 * x) * g
    return 0


cdef int gk15(const Poly *P, double a, double b,
              double *result, double *abserr, double *resabs_out) nogil:
    cdef double centr = 0.5 * (a + b)
    cdef double hlgth = 0.5 * (b - a)
    cdef double fc, resg, resk, resabs, absc, f1, f2, reskh, resasc, err
    cdef double fv1[7]
    cdef double fv2[7]
    cdef int j
    if integrand(P, centr, &fc):
        return 1
    resg = fc * WG[3]
    resk = fc * WGK[7]
    resabs = fabs(resk)
    for j in range(7):
        absc = hlgth * XGK[j]
        if integrand(P, centr - absc, &f1):
            return 1
        if integrand(P, centr + absc, &f2):
            return 1
        fv1[j] = f1
        fv2[j] = f2
        resk = resk + WGK[j] * (f1 + f2)
        resabs = resabs + WGK[j] * (fabs(f1) + fabs(f2))
        if j % 2 == 1:
            resg = resg + WG[j // 2] * (f1 + f2)
    reskh = resk * 0.5
    resasc = WGK[7] * fabs(fc - reskh)
    for j in range(7):
        resasc = resasc + WGK[j] * (fabs(fv1[j] - reskh) + fabs(fv2[j] - reskh))
    result[0] = resk * hlgth
    resabs = resabs * fabs(hlgth)
    resasc = resasc * fabs(hlgth)
    err = fabs((resk - resg) * hlgth)
    if resasc != 0.0 and err != 0.0:
        err = resasc * min(1.0, pow(200.0 * err / resasc, 1.5))
    if resabs > UFLOW / (50.0 * EPS):
        err = max(50.0 * EPS * resabs, err)
    abserr[0] = err
    resabs_out[0] = resabs
    return 0


cdef double neumaier(const double *v, int n) nogil:
    cdef double s = 0.0
    cdef double comp = 0.0
    cdef double t
    cdef int k
    for k in range(n):
        t = s + v[k]
        if fabs(s) >= fabs(v[k]):
            comp = comp + ((s - t) + v[k])
        else:
            comp = comp + ((v[k] - t) + s)
        s = t
    return s + comp


def gk_integrate(coeffs, int m, double w0, double w1, bint half,
                 double a, double b, double abstol, int limit):
    """Global adaptive G7-K15 quadrature on [a, b] (requires a < b).

    Returns ``(value, abserr, neval, status)``.
    """
    cdef int n = len(coeffs)
    cdef Poly P
    cdef double *lo
    cdef double *hi
    cdef double *res
    cdef double *err
    cdef double *rabs
    cdef double errsum, floor, emax, a1, b2, mid, r1, e1, ra1, r2, e2, ra2, value
    cdef int count = 0, i, k, neval, status
    if limit < 1:
        limit = 1
    P.c = <double *> malloc(max(n, 1) * sizeof(double))
    lo = <double *> malloc(limit * sizeof(double))
    hi = <double *> malloc(limit * sizeof(double))
    res = <double *> malloc(limit * sizeof(double))
    err = <double *> malloc(limit * sizeof(double))
    rabs = <double *> malloc(limit * sizeof(double))
    try:
        for k in range(n):
            P.c[k] = float(coeffs[k])
        P.n = n
        P.m = m
        P.w0 = w0
        P.w1 = w1
        P.half = half
        with nogil:
            status = ST_OK
            neval = 15
            if gk15(&P, a, b, &res[0], &err[0], &rabs[0]):
                status = ST_DOMAIN
                value = 0.0
                errsum = 0.0
            else:
                lo[0] = a
                hi[0] = b
                count = 1
                errsum = err[0]
                while True:
                    floor = 0.0
                    for k in range(count):
                        floor = floor + rabs[k]
                    floor = 100.0 * EPS * floor
                    if errsum <= abstol or errsum <= floor:
                        break
                    if count >= limit:
                        status = ST_LIMIT
                        break
                    i = 0
                    emax = err[0]
                    for k in range(1, count):
                        if err[k] > emax:
                            emax = err[k]
                            i = k
                    a1 = lo[i]
                    b2 = hi[i]
                    mid = 0.5 * (a1 + b2)
                    if not (a1 < mid and mid < b2):
                        status = ST_LIMIT
                        break
                    if gk15(&P, a1, mid, &r1, &e1, &ra1) or gk15(&P, mid, b2, &r2, &e2, &ra2):
                        status = ST_DOMAIN
                        break
                    neval += 30
                    errsum = errsum + (e1 + e2 - err[i])
                    hi[i] = mid
                    res[i] = r1
                    err[i] = e1
                    rabs[i] = ra1
                    lo[count] = mid
                    hi[count] = b2
                    res[count] = r2
                    err[count] = e2
                    rabs[count] = ra2
                    count += 1
                value = neumaier(res, count)
                if status == ST_OK:
                    errsum = 0.0
                    for k in range(count):
                        errsum = errsum + err[k]
        return value, errsum, neval, status
    finally:
        free(P.c)
        free(lo)
        free(hi)
        free(res)
        free(err)
        free(rabs)
