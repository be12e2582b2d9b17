"""Exact linear programming over the rationals.

A two-phase dense tableau simplex with Bland's anti-cycling rule. Problem
sizes in this package are a handful of variables and at most a few dozen
rows, so clarity wins over speed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: Optional[tuple[Fraction, ...]] = None
    value: Optional[Fraction] = None

    @property
    def feasible(self) -> bool:
        return self.status != "infeasible"


def _pivot(T: list[list[Fraction]], basis: list[int], r: int, c: int) -> None:
    p = T[r][c]
    T[r] = [x / p for x in T[r]]
    for i, row in enumerate(T):
        if i != r and row[c] != 0:
            f = row[c]
            T[i] = [x - f * y for x, y in zip(row, T[r])]
    basis[r] = c


def _run(T, basis, cost, allowed: int) -> str:
    """Minimise ``cost`` over the tableau; columns >= ``allowed`` never enter."""
    while True:
        entering = None
        for j in range(allowed):
            if j in basis:
                continue
            red = cost[j] - sum(cost[b] * T[i][j] for i, b in enumerate(basis))
            if red < 0:
                entering = j
                break
        if entering is None:
            return "optimal"
        best = None
        for i, row in enumerate(T):
            a = row[entering]
            if a > 0:
                ratio = row[-1] / a
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return "unbounded"
        _pivot(T, basis, best[1], entering)


def linprog(
    c: Sequence,
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
    free: bool = True,
) -> LPResult:
    """Minimise ``c.x`` s.t. ``A_ub x <= b_ub``, ``A_eq x = b_eq``.

    Variables are free when ``free`` is true, non-negative otherwise.
    """
    n = len(c)
    # column map: each free variable becomes x+ - x-
    width = 2 * n if free else n

    def expand(row):
        row = [Fraction(v) for v in row]
        return row + [-v for v in row] if free else row

    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    n_slack = len(A_ub)
    for k, (row, b) in enumerate(zip(A_ub, b_ub)):
        slack = [Fraction(0)] * n_slack
        slack[k] = Fraction(1)
        rows.append(expand(row) + slack)
        rhs.append(Fraction(b))
    for row, b in zip(A_eq, b_eq):
        rows.append(expand(row) + [Fraction(0)] * n_slack)
        rhs.append(Fraction(b))
    nvar = width + n_slack
    cost = expand(c) + [Fraction(0)] * n_slack

    if not rows:
        if any(v != 0 for v in cost):
            return LPResult("unbounded")
        return LPResult("optimal", tuple(Fraction(0) for _ in range(n)), Fraction(0))

    m = len(rows)
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-x for x in rows[i]]
            rhs[i] = -rhs[i]
    # phase 1: one artificial per row
    T = [
        rows[i] + [Fraction(int(i == k)) for k in range(m)] + [rhs[i]]
        for i in range(m)
    ]
    basis = [nvar + i for i in range(m)]
    phase1 = [Fraction(0)] * nvar + [Fraction(1)] * m
    _run(T, basis, phase1, nvar + m)
    if sum(T[i][-1] for i, b in enumerate(basis) if b >= nvar) > 0:
        return LPResult("infeasible")
    # drive zero-level artificials out of the basis; drop redundant rows
    i = 0
    while i < len(T):
        if basis[i] >= nvar:
            col = next((j for j in range(nvar) if T[i][j] != 0), None)
            if col is None:
                del T[i]
                del basis[i]
                continue
            _pivot(T, basis, i, col)
        i += 1
    full_cost = cost + [Fraction(0)] * m
    status = _run(T, basis, full_cost, nvar)
    if status == "unbounded":
        return LPResult("unbounded")
    sol = [Fraction(0)] * (nvar + m)
    for i, b in enumerate(basis):
        sol[b] = T[i][-1]
    x = sol[:n]
    if free:
        x = [a - b for a, b in zip(sol[:n], sol[n:2 * n])]
    value = sum(ci * xi for ci, xi in zip(map(Fraction, c), x))
    return LPResult("optimal", tuple(x), value)


def feasible_point(
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
    n: Optional[int] = None,
    free: bool = True,
) -> Optional[tuple[Fraction, ...]]:
    """A point of the polyhedron, or None if it is empty."""
    if n is None:
        n = len(A_ub[0]) if A_ub else len(A_eq[0])
    res = linprog([0] * n, A_ub, b_ub, A_eq, b_eq, free=free)
    return res.x if res.status == "optimal" else None
