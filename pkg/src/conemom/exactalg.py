"""Exact rationals, dense univariate polynomials and Sturm root certification.

Rationals are :class:`fractions.Fraction` throughout; they are always reduced
with a positive denominator, which is exactly the canonical form we need.
"""

from __future__ import annotations

import math
import re
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from conemom.errors import ConemomError, ZeroPolynomial

Rational = Fraction

#: default isolation width for root refinement
DEFAULT_WIDTH = Fraction(1, 2**64)

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*/\s*(\d+)\s*$")


def as_rational(value) -> Fraction:
    """Convert ints, Fractions, "p/q" strings and decimal strings exactly.

    Floats are rejected on purpose: a float reaching the exact path is almost
    always a bug, and ``Fraction(0.1)`` silently is not 1/10.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ConemomError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        match = _RATIONAL_RE.match(value)
        if match:
            den = int(match.group(2))
            if den == 0:
                raise ConemomError(f"zero denominator in {value!r}")
            return Fraction(int(match.group(1)), den)
        try:
            dec = Decimal(value.strip())
        except InvalidOperation:
            raise ConemomError(f"not a rational: {value!r}") from None
        if not dec.is_finite():
            raise ConemomError(f"not a finite rational: {value!r}")
        return Fraction(dec)
    raise ConemomError(f"not a rational: {value!r}")


def rational_to_str(q: Fraction) -> str:
    return str(q)


class Poly:
    """Dense polynomial with Fraction coefficients, low degree first.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs", "__dict__")

    def __init__(self, coeffs: Iterable = ()):
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def constant(cls, c) -> "Poly":
        return cls([c])

    @classmethod
    def x(cls) -> "Poly":
        return cls([0, 1])

    @classmethod
    def from_roots(cls, roots: Iterable, lead=1) -> "Poly":
        p = cls([lead])
        for r in roots:
            p = p * cls([-Fraction(r), 1])
        return p

    @classmethod
    def binomial_power(cls, n: int) -> "Poly":
        """(1 + x)^n."""
        cs = [1]
        for _ in range(n):
            cs = [a + b for a, b in zip([0] + cs, cs + [0])]
        return cls(cs)

    # -- basic structure -------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            other = Poly([other]) if isinstance(other, (int, Fraction)) else None
            if other is None:
                return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly([{', '.join(str(c) for c in self.coeffs)}])"

    def __len__(self) -> int:
        return len(self.coeffs)

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    # -- arithmetic ------------------------------------------------------

    @staticmethod
    def _lift(other) -> "Poly":
        return other if isinstance(other, Poly) else Poly([other])

    def __add__(self, other) -> "Poly":
        other = self._lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.coeff(k) + other.coeff(k) for k in range(n))

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other) -> "Poly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "Poly":
        return self._lift(other) - self

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            other = Fraction(other)
            return Poly(c * other for c in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "Poly":
        scalar = Fraction(scalar)
        return Poly(c / scalar for c in self.coeffs)

    def __pow__(self, n: int) -> "Poly":
        out = Poly([1])
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroPolynomial("division by the zero polynomial")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.lead
        if len(rem) - 1 < dq:
            return Poly(), Poly(rem)
        quot = [Fraction(0)] * (len(rem) - dq)
        for k in range(len(rem) - 1 - dq, -1, -1):
            q = rem[k + dq] / lead
            quot[k] = q
            if q:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= q * b
        return Poly(quot), Poly(rem[:dq])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    def monic(self) -> "Poly":
        return self / self.lead if self.coeffs else self

    def derivative(self, k: int = 1) -> "Poly":
        p = self
        for _ in range(k):
            p = Poly(i * c for i, c in enumerate(p.coeffs) if i)
        return p

    def compose_shift(self, a) -> "Poly":
        """p(x + a), by repeated synthetic division (Taylor shift)."""
        a = Fraction(a)
        cs = list(self.coeffs)
        n = len(cs)
        for i in range(n):
            for j in range(n - 2, i - 1, -1):
                cs[j] += a * cs[j + 1]
        return Poly(cs)

    def scale_arg(self, s) -> "Poly":
        """p(s x)."""
        s = Fraction(s)
        return Poly(c * s**k for k, c in enumerate(self.coeffs))

    # -- evaluation ------------------------------------------------------

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return Fraction(acc) if isinstance(x, (int, Fraction)) else acc

    def eval_float(self, x: float) -> float:
        acc = 0.0
        for c in self.float_coeffs[::-1]:
            acc = acc * x + c
        return acc

    @cached_property
    def float_coeffs(self) -> tuple[float, ...]:
        return tuple(float(c) for c in self.coeffs)

    @cached_property
    def integer_coeffs(self) -> tuple[int, ...]:
        """Coefficients times the (positive) lcm of their denominators."""
        d = math.lcm(*(c.denominator for c in self.coeffs)) if self.coeffs else 1
        return tuple(c.numerator * (d // c.denominator) for c in self.coeffs)

    def sign_at(self, x) -> int:
        # sign of q^n P(p/q) with q > 0, in integers only
        x = Fraction(x)
        p, q = x.numerator, x.denominator
        acc = 0
        qk = 1
        for c in reversed(self.integer_coeffs):
            acc = acc * p + c * qk
            qk *= q
        return (acc > 0) - (acc < 0)

    def low_order(self) -> int:
        """Index of the lowest nonzero coefficient (order of vanishing at 0)."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        raise ZeroPolynomial("zero polynomial vanishes to infinite order")

    # -- serialization ---------------------------------------------------

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "Poly":
        return cls(as_rational(s) for s in data)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over Q; gcd(0, 0) is 0."""
    while b:
        a, b = b, a % b
    return a.monic()


def squarefree_part(p: Poly) -> Poly:
    if p.is_zero():
        raise ZeroPolynomial("zero polynomial has no square-free part")
    if p.degree <= 0:
        return p.monic()
    g = poly_gcd(p, p.derivative())
    return (p // g).monic()


# ---------------------------------------------------------------------------
# Sturm sequences
# ---------------------------------------------------------------------------


def _primitive_scale(p: Poly) -> Poly:
    # Positive rescaling keeps signs and curbs coefficient growth.
    if p.is_zero():
        return p
    return p / abs(p.lead)


def sturm_sequence(p: Poly) -> list[Poly]:
    """Canonical Sturm chain of the square-free part of ``p``."""
    if p.is_zero():
        raise ZeroPolynomial("Sturm sequence of the zero polynomial")
    p0 = squarefree_part(p)
    seq = [p0]
    if p0.degree <= 0:
        return seq
    seq.append(_primitive_scale(p0.derivative()))
    while True:
        r = -(seq[-2] % seq[-1])
        if r.is_zero():
            break
        seq.append(_primitive_scale(r))
    return seq


def _variations(seq: Sequence[Poly], x: Fraction) -> int:
    count = 0
    prev = 0
    for q in seq:
        s = q.sign_at(x)
        if s:
            if prev and s != prev:
                count += 1
            prev = s
    return count


def _variations_at_infinity(seq: Sequence[Poly], sign: int) -> int:
    count = 0
    prev = 0
    for q in seq:
        s = 1 if q.lead > 0 else -1
        if sign < 0 and q.degree % 2:
            s = -s
        if prev and s != prev:
            count += 1
        prev = s
    return count


class SturmChain:
    """Precomputed Sturm chain, for repeated counting on one polynomial."""

    def __init__(self, p: Poly):
        self.seq = sturm_sequence(p)
        self.sqf = self.seq[0]

    def variations(self, x) -> int:
        if x == float("inf"):
            return _variations_at_infinity(self.seq, 1)
        if x == float("-inf"):
            return _variations_at_infinity(self.seq, -1)
        return _variations(self.seq, Fraction(x))

    def count_half_open(self, lo, hi) -> int:
        """Distinct roots in (lo, hi]."""
        return self.variations(lo) - self.variations(hi)

    def count_open(self, lo, hi) -> int:
        """Distinct roots in (lo, hi); either bound may be +-inf."""
        n = self.variations(lo) - self.variations(hi)
        if hi != float("inf") and self.sqf(Fraction(hi)) == 0:
            n -= 1
        return n


def sturm_count(p: Poly, lo, hi) -> int:
    """Number of distinct real roots of ``p`` in the open interval (lo, hi).

    ``hi`` may be ``float('inf')`` and ``lo`` may be ``float('-inf')``.
    """
    if p.is_zero():
        raise ZeroPolynomial("cannot count roots of the zero polynomial")
    if not lo < hi:
        raise ConemomError(f"empty interval ({lo}, {hi})")
    return SturmChain(p).count_open(lo, hi)


def cauchy_bound(p: Poly) -> Fraction:
    """Every real root has absolute value strictly below this bound."""
    lead = abs(p.lead)
    return 1 + max((abs(c) / lead for c in p.coeffs[:-1]), default=Fraction(0))


def _refine(chain: SturmChain, lo: Fraction, hi: Fraction, width: Fraction):
    """Shrink (lo, hi] holding exactly one root of ``chain`` to ``width``.

    The root is simple for the squarefree part, so its sign flips exactly
    once on (lo, hi]; comparing with the sign at hi is enough to bisect.
    """
    sqf = chain.sqf
    s_hi = sqf.sign_at(hi)
    if s_hi == 0:
        return hi, hi
    while hi - lo > width:
        mid = (lo + hi) / 2
        s = sqf.sign_at(mid)
        if s == 0:
            return mid, mid
        if s == s_hi:
            hi = mid
        else:
            lo = mid
    return lo, hi


def smallest_positive_root(p: Poly, width: Fraction = DEFAULT_WIDTH):
    """Isolating interval ``(lo, hi)`` of the least root in (0, inf), or None.

    The root lies in (lo, hi], with ``lo == hi`` when the root was hit exactly.
    """
    if p.is_zero():
        raise ZeroPolynomial("zero polynomial has no isolated roots")
    width = Fraction(width)
    chain = SturmChain(p)
    if p.degree <= 0:
        return None
    bound = cauchy_bound(chain.sqf)
    if chain.count_half_open(0, bound) == 0:
        return None
    lo, hi = Fraction(0), bound
    v_lo, v_hi = chain.variations(lo), chain.variations(hi)
    # Bisect towards the first root; keep at least one root in (lo, hi].
    while v_lo - v_hi > 1:
        mid = (lo + hi) / 2
        v_mid = chain.variations(mid)
        if v_lo - v_mid >= 1:
            hi, v_hi = mid, v_mid
        else:
            lo, v_lo = mid, v_mid
    return _refine(chain, lo, hi, width)


def isolate_real_roots(p: Poly, lo=Fraction(0), hi=None, width: Fraction = DEFAULT_WIDTH):
    """All distinct roots of ``p`` in (lo, hi) as sorted isolating intervals.

    Each interval ``(a, b)`` holds its root in (a, b]; ``a == b`` for exact hits.
    """
    if p.is_zero():
        raise ZeroPolynomial("zero polynomial has no isolated roots")
    chain = SturmChain(p)
    if p.degree <= 0:
        return []
    lo = Fraction(lo)
    if hi is None or hi == float("inf"):
        hi = max(cauchy_bound(chain.sqf), lo + 1)
    hi = Fraction(hi)
    width = Fraction(width)
    out = []
    stack = [(lo, hi)]
    while stack:
        a, b = stack.pop()
        n = chain.count_half_open(a, b)
        if n == 0:
            continue
        if n == 1:
            out.append(_refine(chain, a, b, width))
            continue
        mid = (a + b) / 2
        stack.append((mid, b))
        stack.append((a, mid))
    # open interval: drop a root sitting exactly on hi
    out = [iv for iv in out if not (iv[0] == iv[1] == hi)]
    out.sort()
    return out


def root_order_at(p: Poly, x0) -> int:
    """Multiplicity of ``x0`` as a root of ``p`` (0 if p(x0) != 0).

    Uses repeated exact synthetic division by (x - x0).  The zero polynomial
    vanishes to every order; it is rejected.
    """
    if p.is_zero():
        raise ZeroPolynomial("zero polynomial vanishes to infinite order")
    x0 = Fraction(x0)
    cs = list(p.coeffs)
    k = 0
    while len(cs) > 1:
        # synthetic division: quotient and remainder of cs by (x - x0)
        acc = Fraction(0)
        quot = []
        for c in reversed(cs):
            acc = acc * x0 + c
            quot.append(acc)
        if quot[-1] != 0:
            break
        k += 1
        cs = quot[-2::-1]
    return k


def root_multiplicity_in(p: Poly, lo: Fraction, hi: Fraction) -> int:
    """Multiplicity of the single root of ``p`` isolated in (lo, hi].

    Counts how many of the gcd chain p, gcd(p, p'), gcd(p, p', p''), ... still
    vanish in the interval.
    """
    if lo == hi:
        return root_order_at(p, lo)
    g = p
    k = 0
    while g.degree >= 1 and SturmChain(g).count_half_open(lo, hi) >= 1:
        k += 1
        g = poly_gcd(g, g.derivative())
    return k
