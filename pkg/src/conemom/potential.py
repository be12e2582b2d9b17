"""Numerical reconstruction of t(tau), F, G and the arclength s.

With phi = P/(1+tau)^m and the reference point tau0 of the profile:

    t(tau) = int_{tau0}^{tau} dx/phi          F = int x dx/phi
    G(tau) = int_{tau0}^{tau} (tau - x) dx/phi    s = int dx/sqrt(phi)

G is integrated directly rather than formed as tau*t - F, so the Legendre
relation G + F = tau*t is a genuine check on the quadrature.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from conemom.config import default_tol
from conemom.errors import OutsideDomain, OutsideRange
from conemom.exactalg import SturmChain
from conemom.profile import INF, Profile, phi_float, positivity_domain
from conemom.quadrature import QuadResult, integrate_profile

EPS = 2.220446049250313e-16
# No bracket is searched beyond these; see tau_of_time.
TAU_CEILING = 1e30
TAU_FLOOR = 1e-300


def _reference(pr: Profile) -> float:
    if pr.tau0 is None:
        raise OutsideDomain("profile has no positivity interval, so no reference point tau0")
    return float(pr.tau0)


def _upper_end(pr: Profile) -> float:
    b = positivity_domain(pr)
    return math.inf if b == INF else float(b.lo)


def check_in_domain(pr: Profile, tau: float) -> float:
    """Return tau as a float if 0 < tau < b, else raise OutsideDomain."""
    tau = float(tau)
    if not (tau > 0.0 and math.isfinite(tau)):
        raise OutsideDomain(f"tau must lie in (0, b); got {tau!r}")
    b = positivity_domain(pr)
    if b != INF and tau >= float(b.lo):
        # the isolating interval is tiny but decide the boundary case exactly
        q = Fraction(tau)
        if q >= b.hi or SturmChain(pr.numerator).count_half_open(0, q):
            raise OutsideDomain(f"tau = {tau!r} is not below b = {float(b):.17g}")
    return tau


def _quad(pr, a, b, w0=1.0, w1=0.0, half=False, tol=None) -> QuadResult:
    return integrate_profile(pr.numerator.float_coeffs, pr.m, a, b, w0, w1, half, tol)


def time_integral(pr: Profile, tau: float, tol: Optional[float] = None) -> QuadResult:
    tau = check_in_domain(pr, tau)
    return _quad(pr, _reference(pr), tau, tol=tol)


def time_of_tau(pr: Profile, tau: float, tol: Optional[float] = None) -> float:
    """t(tau) = int_{tau0}^{tau} dx/phi(x)."""
    return time_integral(pr, tau, tol).value


def kahler_integral(pr: Profile, tau: float, tol: Optional[float] = None) -> QuadResult:
    tau = check_in_domain(pr, tau)
    return _quad(pr, _reference(pr), tau, 0.0, 1.0, tol=tol)


def kahler_potential_of_tau(pr: Profile, tau: float, tol: Optional[float] = None) -> float:
    """F as a function of tau: int_{tau0}^{tau} x dx/phi(x)."""
    return kahler_integral(pr, tau, tol).value


def kahler_potential_F(pr: Profile, t: float, tol: Optional[float] = None) -> float:
    """F(t), the Kaehler potential in the cone coordinate t = log r."""
    return kahler_potential_of_tau(pr, tau_of_time(pr, t, tol), tol)


def symplectic_integral(pr: Profile, tau: float, tol: Optional[float] = None) -> QuadResult:
    tau = check_in_domain(pr, tau)
    return _quad(pr, _reference(pr), tau, tau, -1.0, tol=tol)


def symplectic_potential_G(pr: Profile, tau: float, tol: Optional[float] = None) -> float:
    """G(tau) = int_{tau0}^{tau} (tau - x) dx/phi(x), so G'' = 1/phi."""
    return symplectic_integral(pr, tau, tol).value


def arclength_integral(pr: Profile, tau: float, tol: Optional[float] = None) -> QuadResult:
    tau = check_in_domain(pr, tau)
    return _quad(pr, _reference(pr), tau, half=True, tol=tol)


def arclength_s(pr: Profile, tau: float, tol: Optional[float] = None) -> float:
    """s(tau) = int_{tau0}^{tau} dx/sqrt(phi(x))."""
    return arclength_integral(pr, tau, tol).value


def tau_of_time(pr: Profile, t: float, tol: Optional[float] = None) -> float:
    """Invert t(tau) by bracketed, safeguarded Newton iteration.

    Uses dtau/dt = phi.  Brackets are searched geometrically towards 0 and
    towards b (or up to TAU_CEILING); a t that is not reached raises
    OutsideRange.  The result satisfies |t(result) - t| <= tol, and the
    final residual is measured by one fresh integral from tau0.
    """
    tol = default_tol() if tol is None else float(tol)
    t = float(t)
    if not math.isfinite(t):
        raise OutsideRange(f"t must be finite; got {t!r}")
    tau0 = _reference(pr)
    if t == 0.0:
        return tau0
    b = _upper_end(pr)
    # Inner integrals run below tol: tau inherits the t error times phi.
    qtol = tol * 1e-2

    def step(x, y):
        return _quad(pr, x, y, tol=qtol).value

    # bracket search, integrating incrementally outwards from tau0
    x, tx = tau0, 0.0
    if t > 0.0:
        lo, tlo = x, tx
        while True:
            cand = 0.5 * (lo + b) if b < math.inf else max(2.0 * lo, lo + 1.0)
            if not lo < cand or cand > TAU_CEILING:
                raise OutsideRange(f"t = {t!r} is beyond the numerically reachable t2")
            tc = tlo + step(lo, cand)
            if tc >= t:
                hi, thi = cand, tc
                break
            lo, tlo = cand, tc
    else:
        hi, thi = x, tx
        while True:
            cand = 0.5 * hi
            if cand < TAU_FLOOR:
                raise OutsideRange(f"t = {t!r} is below the numerically reachable t1")
            tc = thi + step(hi, cand)
            if tc <= t:
                lo, tlo = cand, tc
                break
            hi, thi = cand, tc

    # start from the end whose t value is closer
    x, tx = (lo, tlo) if abs(tlo - t) <= abs(thi - t) else (hi, thi)
    for _ in range(200):
        if abs(tx - t) <= qtol:
            break
        y = x - (tx - t) * phi_float(pr, x)
        if not lo < y < hi:
            y = math.sqrt(lo * hi) if hi > 4.0 * lo else 0.5 * (lo + hi)
        if y == x:
            break
        ty = tx + step(x, y)
        if ty < t:
            lo, tlo = y, ty
        else:
            hi, thi = y, ty
        done = abs(y - x) <= 4.0 * EPS * abs(y)
        x, tx = y, ty
        if done:
            break

    # polish against a single integral from tau0 to remove accumulated error
    for _ in range(3):
        tx = _quad(pr, tau0, x, tol=qtol).value
        y = x - (tx - t) * phi_float(pr, x)
        if not y > 0.0 or y >= b:
            break
        if abs(y - x) <= 4.0 * EPS * abs(x):
            x = y
            break
        x = y
    final = _quad(pr, tau0, x, tol=qtol).value
    if abs(final - t) > tol:
        raise OutsideRange(f"could not invert t = {t!r} to tolerance {tol:.3g}")
    return x


# -- tables -------------------------------------------------------------


class _Acc:
    """Neumaier running sum."""

    __slots__ = ("s", "c")

    def __init__(self, value: float = 0.0):
        self.s = value
        self.c = 0.0

    def add(self, v: float) -> None:
        t = self.s + v
        if abs(self.s) >= abs(v):
            self.c += (self.s - t) + v
        else:
            self.c += (v - t) + self.s
        self.s = t

    @property
    def value(self) -> float:
        return self.s + self.c


@dataclass(frozen=True)
class PotentialSample:
    tau: float
    t: float
    F: float
    G: float
    s: float
    error: float

    def legendre_residual(self) -> float:
        return abs(self.G + self.F - self.tau * self.t)


COLUMNS = ("tau", "t", "F", "G", "s")


@dataclass
class PotentialTable:
    profile: Profile
    samples: list[PotentialSample]
    quoted_error: float
    tau0: Fraction
    checks: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(v for k, v in self.checks.items() if isinstance(v, bool))

    def column(self, name: str) -> list[float]:
        return [getattr(r, name) for r in self.samples]

    def to_csv(self, fh=None) -> str:
        out = io.StringIO() if fh is None else fh
        w = csv.writer(out, lineterminator="\n")
        w.writerow(COLUMNS)
        for r in self.samples:
            w.writerow([format(getattr(r, k), ".17g") for k in COLUMNS])
        return out.getvalue() if fh is None else ""

    def to_json(self) -> dict:
        return {
            "profile": self.profile.to_json(),
            "tau0": str(self.tau0),
            "quoted_error": self.quoted_error,
            "checks": dict(self.checks),
            "samples": [{k: getattr(r, k) for k in COLUMNS} for r in self.samples],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def grid(tau_min: float, tau_max: float, samples: int, spacing: str = "log") -> list[float]:
    """Sample points on [tau_min, tau_max], geometric or uniform."""
    if samples < 1:
        raise OutsideDomain("need at least one sample")
    if not 0.0 < tau_min <= tau_max:
        raise OutsideDomain(f"need 0 < tau_min <= tau_max, got {tau_min!r}, {tau_max!r}")
    if samples == 1:
        return [float(tau_min)]
    if spacing == "log":
        r = math.log(tau_max / tau_min)
        pts = [tau_min * math.exp(r * k / (samples - 1)) for k in range(samples)]
    elif spacing == "linear":
        pts = [tau_min + (tau_max - tau_min) * k / (samples - 1) for k in range(samples)]
    else:
        raise OutsideDomain(f"unknown spacing {spacing!r}")
    pts[0], pts[-1] = float(tau_min), float(tau_max)
    return pts


def build_table(
    pr: Profile, taus: Iterable[float], tol: Optional[float] = None
) -> PotentialTable:
    """Sample t, F, G, s at the given tau values.

    Segments between neighbouring samples are integrated once and the
    columns are accumulated outwards from tau0 with compensated sums; G uses
    G(v) = G(u) + (v - u) t(u) + int_u^v (v - x)/phi.  Per-row error bounds
    add up the segment estimates.
    """
    tol = default_tol() if tol is None else float(tol)
    tau0 = _reference(pr)
    pts = sorted({check_in_domain(pr, x) for x in taus})
    rows: dict[float, PotentialSample] = {}

    def walk(points: Sequence[float]) -> None:
        u = tau0
        T, F, G, S = _Acc(), _Acc(), _Acc(), _Acc()
        eT = eF = eG = eS = 0.0
        for v in points:
            if v != u:
                i1 = _quad(pr, u, v, tol=tol)
                i2 = _quad(pr, u, v, 0.0, 1.0, tol=tol)
                i3 = _quad(pr, u, v, v, -1.0, tol=tol)
                i4 = _quad(pr, u, v, half=True, tol=tol)
                G.add((v - u) * T.value)
                G.add(i3.value)
                eG += abs(v - u) * eT + i3.error
                T.add(i1.value)
                F.add(i2.value)
                S.add(i4.value)
                eT += i1.error
                eF += i2.error
                eS += i4.error
            rows[v] = PotentialSample(v, T.value, F.value, G.value, S.value, max(eT, eF, eG, eS))
            u = v

    walk([x for x in pts if x >= tau0])
    walk([x for x in reversed(pts) if x < tau0])
    samples = [rows[x] for x in pts]
    quoted = max((r.error for r in samples), default=0.0)
    return PotentialTable(pr, samples, quoted, pr.tau0, _table_checks(samples, quoted))


def _table_checks(samples: Sequence[PotentialSample], quoted: float) -> dict:
    ts = [r.t for r in samples]
    increasing = all(b > a for a, b in zip(ts, ts[1:]))
    convex = True
    for a, b, c in zip(samples, samples[1:], samples[2:]):
        d1, d2 = b.t - a.t, c.t - b.t
        if d1 <= 0 or d2 <= 0:
            convex = False
            break
        s1 = (b.F - a.F) / d1
        s2 = (c.F - b.F) / d2
        slack = 4.0 * quoted / min(d1, d2) + 64.0 * EPS * max(abs(s1), abs(s2))
        if s2 - s1 < -slack:
            convex = False
            break
    residual = max((r.legendre_residual() for r in samples), default=0.0)
    bound = max(
        (
            2.0 * (r.error + abs(r.tau) * r.error)
            + 64.0 * EPS * (abs(r.G) + abs(r.F) + abs(r.tau * r.t))
            for r in samples
        ),
        default=0.0,
    )
    return {
        "t_increasing": increasing,
        "F_convex": convex,
        "legendre": residual <= bound,
        "max_legendre_residual": residual,
    }
