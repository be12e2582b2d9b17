"""Toric cone data: primitivity, minimality, goodness, height and Reeb vectors.

Facet normals lambda_i live in Z^n (n = m+1).  The moment cone is
C = {y : <y, lambda_i> >= 0}.  Every feasibility question is an exact LP
over the rationals; every lattice question goes through the Smith form.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from conemom.config import BRUTE_FORCE_FACET_CAP
from conemom.errors import AmbiguousGamma, ConemomError, EmptyInterior, TooManyFacets
from conemom.exactalg import as_rational
from conemom.lattice import (
    complete_to_unimodular,
    identity,
    inverse_unimodular,
    matvec,
    rank,
    smith_normal_form,
    solve_rational,
    transpose,
    vector_gcd,
)
from conemom.lp import feasible_point, linprog

INCLUSIVE = "inclusive"
EXCLUSIVE = "exclusive"


@dataclass(frozen=True)
class ToricDiagram:
    lambdas: tuple[tuple[int, ...], ...]
    gamma: Optional[tuple[Fraction, ...]] = None
    ell: Optional[int] = None

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.lambdas)
        if not rows or not rows[0]:
            raise ConemomError("a diagram needs at least one non-empty normal")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ConemomError("all normals must have the same length")
        object.__setattr__(self, "lambdas", rows)
        if self.gamma is not None:
            object.__setattr__(self, "gamma", tuple(Fraction(g) for g in self.gamma))

    @property
    def dim(self) -> int:
        return len(self.lambdas[0])

    @property
    def d(self) -> int:
        return len(self.lambdas)

    @classmethod
    def standard(cls, n: int) -> "ToricDiagram":
        """Normals e_1..e_n: the cone C^n / the simplex diagram."""
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    def transform(self, U: Sequence[Sequence[int]]) -> "ToricDiagram":
        """Apply U in GL(n, Z): lambda -> U lambda, gamma -> U^{-T} gamma."""
        lams = tuple(tuple(matvec(U, lam)) for lam in self.lambdas)
        gamma = None
        if self.gamma is not None:
            gamma = tuple(matvec(transpose(inverse_unimodular(U)), self.gamma))
        return ToricDiagram(lams, gamma, self.ell)

    def to_json(self) -> dict:
        return {
            "lambda": [list(r) for r in self.lambdas],
            "gamma": None if self.gamma is None else [str(g) for g in self.gamma],
            "ell": self.ell,
        }


@dataclass(frozen=True)
class ReebVector:
    xi: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "xi", tuple(as_rational(x) if not isinstance(x, Fraction) else x
                                             for x in self.xi))

    def transform(self, U) -> "ReebVector":
        return ReebVector(tuple(matvec(U, self.xi)))


def load_diagram(data: dict) -> tuple[ToricDiagram, Optional[ReebVector]]:
    """Parse ``{"lambda": [[int, ...], ...], "xi": ["p/q", ...]}``."""
    if "lambda" not in data:
        raise ConemomError('diagram JSON needs a "lambda" array')
    for row in data["lambda"]:
        for x in row:
            if isinstance(x, bool) or not isinstance(x, int):
                raise ConemomError(f"normal entries must be integers, got {x!r}")
    diag = ToricDiagram(tuple(tuple(r) for r in data["lambda"]))
    xi = data.get("xi")
    if xi is None:
        return diag, None
    if len(xi) != diag.dim:
        raise ConemomError(f"xi has length {len(xi)}, expected {diag.dim}")
    return diag, ReebVector(tuple(as_rational(x if isinstance(x, str) else int(x)) for x in xi))


# -- primitivity and minimality -------------------------------------------


@dataclass(frozen=True)
class PrimitiveMinimalReport:
    primitive: bool
    non_primitive: tuple[int, ...]
    minimal: bool
    redundant: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return self.primitive and self.minimal

    def to_json(self) -> dict:
        return {
            "primitive": self.primitive,
            "non_primitive": list(self.non_primitive),
            "minimal": self.minimal,
            "redundant": list(self.redundant),
        }


def _pairing_rows(diag: ToricDiagram, sign: int = 1) -> list[list[int]]:
    return [[sign * x for x in lam] for lam in diag.lambdas]


def check_primitive_minimal(diag: ToricDiagram) -> PrimitiveMinimalReport:
    n, lams = diag.dim, diag.lambdas
    # interior: some y with <y, lambda_i> >= 1 for all i
    if feasible_point(_pairing_rows(diag, -1), [-1] * diag.d, n=n) is None:
        raise EmptyInterior("the cone {y : <y, lambda_i> >= 0} has empty interior")
    bad_gcd = tuple(i for i, lam in enumerate(lams) if vector_gcd(lam) != 1)
    redundant = []
    for j in range(diag.d):
        # some y with <y, lambda_j> <= -1 and <y, lambda_i> >= 0 otherwise
        rows = [[-x for x in lam] for i, lam in enumerate(lams) if i != j]
        rhs = [0] * len(rows)
        rows.append(list(lams[j]))
        rhs.append(-1)
        if feasible_point(rows, rhs, n=n) is None:
            redundant.append(j)
    return PrimitiveMinimalReport(not bad_gcd, bad_gcd, not redundant, tuple(redundant))


# -- goodness ---------------------------------------------------------------


@dataclass(frozen=True)
class GoodnessCertificate:
    good: bool
    reading: str
    faces_checked: int
    violation: Optional[dict]
    reading_sensitive: bool

    def to_json(self) -> dict:
        return {
            "good": self.good,
            "reading": self.reading,
            "faces_checked": self.faces_checked,
            "violation": self.violation,
            "reading_sensitive": self.reading_sensitive,
        }


def _face_has_nonzero_point(diag: ToricDiagram, subset: Sequence[int], full_rank: bool) -> bool:
    if not full_rank:
        return True  # C contains the line {lambda}^perp, and so does every face
    n = diag.dim
    A_ub = _pairing_rows(diag, -1)
    b_ub = [0] * diag.d
    A_eq = [list(diag.lambdas[i]) for i in subset]
    b_eq = [0] * len(subset)
    # on a pointed C, sum_j <y, lambda_j> > 0 for every nonzero y in C
    A_eq.append([sum(col) for col in zip(*diag.lambdas)])
    b_eq.append(1)
    return feasible_point(A_ub, b_ub, A_eq, b_eq, n=n) is not None


def _lattice_violation(diag: ToricDiagram, subset: Sequence[int]) -> Optional[dict]:
    M = [list(diag.lambdas[i]) for i in subset]
    divisors, _, _ = smith_normal_form(M)
    divisors = [abs(int(x)) for x in divisors]
    if len(subset) > diag.dim or any(x == 0 for x in divisors):
        return {"subset": list(subset), "divisors": divisors, "reason": "dependent"}
    if any(x != 1 for x in divisors):
        return {"subset": list(subset), "divisors": divisors, "reason": "not saturated"}
    return None


def check_good(
    diag: ToricDiagram, reading: str = INCLUSIVE, cap: int = BRUTE_FORCE_FACET_CAP
) -> GoodnessCertificate:
    """Brute-force goodness over all facet subsets.

    ``reading`` decides whether a subset whose common face is only the apex
    is checked ("inclusive") or skipped ("exclusive").  The certificate
    records whether the other reading would give a different verdict.
    """
    if reading not in (INCLUSIVE, EXCLUSIVE):
        raise ConemomError(f"unknown reading {reading!r}")
    if diag.d > cap:
        raise TooManyFacets(f"{diag.d} facets exceed the brute-force cap {cap}")
    full_rank = rank(diag.lambdas) == diag.dim
    first = {INCLUSIVE: None, EXCLUSIVE: None}
    checked = {INCLUSIVE: 0, EXCLUSIVE: 0}
    for k in range(1, diag.d + 1):
        for subset in itertools.combinations(range(diag.d), k):
            nonzero = _face_has_nonzero_point(diag, subset, full_rank)
            bad = _lattice_violation(diag, subset)
            checked[INCLUSIVE] += 1
            if first[INCLUSIVE] is None and bad:
                first[INCLUSIVE] = bad
            if nonzero:
                checked[EXCLUSIVE] += 1
                if first[EXCLUSIVE] is None and bad:
                    first[EXCLUSIVE] = bad
    violation = first[reading]
    sensitive = (first[INCLUSIVE] is None) != (first[EXCLUSIVE] is None)
    return GoodnessCertificate(violation is None, reading, checked[reading], violation, sensitive)


# -- height and Reeb vectors --------------------------------------------------


@dataclass(frozen=True)
class Height:
    gamma: tuple[Fraction, ...]
    ell: int
    primitive: bool

    def to_json(self) -> dict:
        return {"gamma": [str(g) for g in self.gamma], "ell": self.ell, "primitive": self.primitive}


def compute_height(diag: ToricDiagram) -> Optional[Height]:
    """gamma with <gamma, lambda_i> = -1 for all i, and the height ell.

    None if no such gamma exists; AmbiguousGamma if it is not unique.
    """
    x, nullity = solve_rational(diag.lambdas, [-1] * diag.d)
    if x is None:
        return None
    if nullity:
        raise AmbiguousGamma(f"gamma is undetermined ({nullity}-dimensional solution space)")
    gamma = tuple(Fraction(v) for v in x)
    ell = math.lcm(*(g.denominator for g in gamma))
    scaled = [int(g * ell) for g in gamma]
    return Height(gamma, ell, vector_gcd(scaled) == 1)


@dataclass(frozen=True)
class ReebReport:
    admissible: bool
    pairing: Fraction
    normalized: bool
    interior: bool
    margin: Optional[Fraction]

    def to_json(self) -> dict:
        return {
            "admissible": self.admissible,
            "gamma_xi": str(self.pairing),
            "normalized": self.normalized,
            "interior": self.interior,
            "margin": None if self.margin is None else str(self.margin),
        }


def reeb_admissible(diag: ToricDiagram, xi: ReebVector, height: Optional[Height] = None) -> ReebReport:
    """<gamma, xi> = -(m+1) and xi in the interior of cone(lambda_i).

    Interiority is the LP max eps s.t. xi = sum a_i lambda_i, a_i >= eps,
    eps <= 1; xi is interior iff the optimum is positive (and the normals
    span the whole space).
    """
    if height is None:
        height = compute_height(diag)
        if height is None:
            raise ConemomError("diagram admits no gamma with <gamma, lambda_i> = -1")
    n, d = diag.dim, diag.d
    pairing = sum(g * x for g, x in zip(height.gamma, xi.xi))
    normalized = pairing == -n
    margin = None
    interior = False
    if rank(diag.lambdas) == n:
        c = [0] * d + [-1]
        A_ub = [[-int(i == j) for j in range(d)] + [1] for i in range(d)]
        A_ub.append([0] * d + [1])
        b_ub = [0] * d + [1]
        A_eq = [[diag.lambdas[i][k] for i in range(d)] + [0] for k in range(n)]
        res = linprog(c, A_ub, b_ub, A_eq, list(xi.xi))
        if res.status == "optimal":
            margin = res.x[-1]
            interior = margin > 0
    return ReebReport(normalized and interior, pairing, normalized, interior, margin)


def normalize_height_form(diag: ToricDiagram) -> tuple[list[list[int]], ToricDiagram]:
    """U in SL(n, Z) moving gamma to (-1/ell, 0, ..., 0).

    The first row of U is -ell*gamma, so every transformed normal has first
    component <-ell gamma, lambda_i> = ell.
    """
    height = compute_height(diag)
    if height is None:
        raise ConemomError("diagram admits no gamma with <gamma, lambda_i> = -1")
    if not height.primitive:
        raise ConemomError("ell*gamma is not primitive; no normal form")
    first = [-int(g * height.ell) for g in height.gamma]
    if first == [int(i == 0) for i in range(diag.dim)]:
        U = identity(diag.dim)
    else:
        U = complete_to_unimodular(first)
    moved = ToricDiagram(diag.lambdas, height.gamma, height.ell).transform(U)
    return U, moved


@dataclass
class ToricCertificate:
    diagram: ToricDiagram
    primitive_minimal: PrimitiveMinimalReport
    goodness: Optional[GoodnessCertificate]
    height: Optional[Height]
    reeb: Optional[ReebReport]
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "lambda": [list(r) for r in self.diagram.lambdas],
            "primitive_minimal": self.primitive_minimal.to_json(),
            "good": None if self.goodness is None else self.goodness.good,
            "goodness": None if self.goodness is None else self.goodness.to_json(),
            "height": None if self.height is None else self.height.to_json(),
            "ell": None if self.height is None else self.height.ell,
            "reeb": None if self.reeb is None else self.reeb.to_json(),
            "notes": list(self.notes),
        }


def certify(diag: ToricDiagram, xi: Optional[ReebVector] = None,
            reading: str = INCLUSIVE) -> ToricCertificate:
    """Everything the CLI reports for one diagram."""
    pm = check_primitive_minimal(diag)
    notes = []
    good = None
    if pm.ok:
        good = check_good(diag, reading)
    else:
        notes.append("goodness skipped: normals are not primitive and minimal")
    try:
        height = compute_height(diag)
        if height is None:
            notes.append("no gamma with <gamma, lambda_i> = -1")
    except AmbiguousGamma as exc:
        height = None
        notes.append(f"AmbiguousGamma: {exc}")
    reeb = None
    if xi is not None and height is not None:
        reeb = reeb_admissible(diag, xi, height)
    return ToricCertificate(diag, pm, good, height, reeb, notes)
