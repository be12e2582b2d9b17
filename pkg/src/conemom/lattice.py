"""Integer matrices: Smith normal form, exact rank/solve, unimodular completion.

Matrices are plain lists of lists of Python ints (``IntMatrix``); nothing here
needs more than the tiny sizes of toric diagram data.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

from conemom.errors import ConemomError

IntMatrix = list[list[int]]


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    cols = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def transpose(a: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*a)]


def vector_gcd(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g


def determinant(a: Sequence[Sequence]) -> Fraction:
    """Exact determinant by fraction-valued Gaussian elimination."""
    n = len(a)
    m = [[Fraction(x) for x in row] for row in a]
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = -det
        det *= m[k][k]
        for i in range(k + 1, n):
            f = m[i][k] / m[k][k]
            if f:
                for j in range(k, n):
                    m[i][j] -= f * m[k][j]
    return det


def row_echelon(a: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q and its pivot columns."""
    m = [[Fraction(x) for x in row] for row in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        m[r] = [x / p for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(a: Sequence[Sequence]) -> int:
    if not a:
        return 0
    return len(row_echelon(a)[1])


def solve_rational(a: Sequence[Sequence], b: Sequence):
    """Solve ``a x = b`` over Q.

    Returns ``(x, nullity)`` with one particular solution, or ``(None, nullity)``
    if the system is inconsistent.
    """
    n = len(a[0])
    aug = [list(row) + [bv] for row, bv in zip(a, b)]
    ech, pivots = row_echelon(aug)
    if n in pivots:
        return None, n - len(pivots) + 1
    x = [Fraction(0)] * n
    for r, c in enumerate(pivots):
        x[c] = ech[r][n]
    return x, n - len(pivots)


def inverse_unimodular(a: Sequence[Sequence[int]]) -> IntMatrix:
    n = len(a)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(a)]
    ech, pivots = row_echelon(aug)
    if pivots[:n] != list(range(n)):
        raise ConemomError("matrix is singular")
    inv = [[x for x in row[n:]] for row in ech]
    if any(x.denominator != 1 for row in inv for x in row):
        raise ConemomError("matrix is not unimodular")
    return [[int(x) for x in row] for row in inv]


def smith_normal_form(M: Sequence[Sequence[int]]):
    """Smith normal form ``U M V = D`` with unimodular U, V.

    Returns ``(divisors, U, V)``: ``divisors`` are the min(rows, cols) diagonal
    entries of D, non-negative, each dividing the next (zeros last).
    """
    rows = len(M)
    if rows == 0 or len(M[0]) == 0:
        raise ConemomError("matrix must have at least one row and column")
    cols = len(M[0])
    A = [[int(x) for x in row] for row in M]
    U = identity(rows)
    V = identity(cols)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):
        A[dst] = [x + f * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + f * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, f):
        for row in A:
            row[dst] += f * row[src]
        for row in V:
            row[dst] += f * row[src]

    for t in range(min(rows, cols)):
        while True:
            entries = [
                (abs(A[i][j]), i, j)
                for i in range(t, rows)
                for j in range(t, cols)
                if A[i][j] != 0
            ]
            if not entries:
                break
            _, i, j = min(entries)
            if i != t:
                swap_rows(i, t)
            if j != t:
                swap_cols(j, t)
            p = A[t][t]
            dirty = False
            for i in range(t + 1, rows):
                q = A[i][t] // p
                if q:
                    add_row(i, t, -q)
                dirty |= A[i][t] != 0
            for j in range(t + 1, cols):
                q = A[t][j] // p
                if q:
                    add_col(j, t, -q)
                dirty |= A[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    divisors = [A[t][t] for t in range(min(rows, cols))]
    return divisors, U, V


def complete_to_unimodular(v: Sequence[int]) -> IntMatrix:
    """An SL(n, Z) matrix whose first row is the primitive vector ``v``."""
    n = len(v)
    if vector_gcd(v) != 1:
        raise ConemomError(f"vector {list(v)} is not primitive")
    divisors, U, V = smith_normal_form([list(v)])
    # U is (+-1); v V = U^{-1} e1, so v is +- the first row of V^{-1}.
    W = inverse_unimodular(V)
    if W[0] != list(v):
        W[0] = [-x for x in W[0]]
    assert W[0] == [int(x) for x in v]
    if determinant(W) < 0:
        if n < 2:
            raise ConemomError("cannot fix determinant sign in dimension 1")
        W[-1] = [-x for x in W[-1]]
    return W
