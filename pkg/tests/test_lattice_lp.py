import random
from fractions import Fraction

import numpy as np
import pytest
import scipy.optimize
from hypothesis import given
from hypothesis import strategies as st

from conemom.errors import ConemomError
from conemom.lattice import (
    complete_to_unimodular,
    determinant,
    inverse_unimodular,
    matmul,
    rank,
    smith_normal_form,
    solve_rational,
)
from conemom.lp import feasible_point, linprog


def diag_matrix(divisors, rows, cols):
    return [[divisors[i] if i == j and i < len(divisors) else 0 for j in range(cols)] for i in range(rows)]


def test_snf_examples():
    assert smith_normal_form([[1, 0], [0, 1]])[0] == [1, 1]
    assert smith_normal_form([[1, 0], [1, 2]])[0] == [1, 2]
    assert smith_normal_form([[2, 4]])[0] == [2]


matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@given(matrices)
def test_snf_reconstructs_and_divides(M):
    d, U, V = smith_normal_form(M)
    rows, cols = len(M), len(M[0])
    assert matmul(matmul(U, M), V) == diag_matrix(d, rows, cols)
    assert abs(determinant(U)) == 1 and abs(determinant(V)) == 1
    assert all(x >= 0 for x in d)
    nz = [x for x in d if x]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert len(nz) == rank(M)


@given(st.lists(st.integers(-12, 12), min_size=2, max_size=5))
def test_complete_to_unimodular(v):
    from math import gcd

    g = 0
    for x in v:
        g = gcd(g, x)
    if g != 1:
        with pytest.raises(ConemomError):
            complete_to_unimodular(v)
        return
    W = complete_to_unimodular(v)
    assert W[0] == v
    assert determinant(W) == 1
    inv = inverse_unimodular(W)
    assert matmul(W, inv) == [[int(i == j) for j in range(len(v))] for i in range(len(v))]


def test_solve_rational():
    x, nullity = solve_rational([[1, 0], [0, 2]], [-1, -1])
    assert x == [-1, Fraction(-1, 2)] and nullity == 0
    x, nullity = solve_rational([[1, 0], [-1, 0]], [-1, -1])
    assert x is None
    _, nullity = solve_rational([[1, 1]], [-1])
    assert nullity == 1


def test_lp_statuses():
    res = linprog([1, 1], [[-1, 0], [0, -1]], [-1, -2])
    assert res.status == "optimal" and res.value == 3
    assert linprog([1], [[1], [-1]], [-1, -1]).status == "infeasible"
    assert linprog([-1], [[-1]], [0]).status == "unbounded"
    assert feasible_point([[1, 1]], [1], [[1, -1]], [0]) is not None


def test_lp_against_scipy_oracle():
    rng = random.Random(7)
    for _ in range(40):
        n, k = rng.randint(2, 4), rng.randint(2, 6)
        A = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(k)]
        b = [rng.randint(0, 6) for _ in range(k)]
        # box keeps the problem bounded for both solvers
        A += [[int(i == j) for j in range(n)] for i in range(n)]
        A += [[-int(i == j) for j in range(n)] for i in range(n)]
        b += [10] * (2 * n)
        c = [rng.randint(-5, 5) for _ in range(n)]
        ours = linprog(c, A, b)
        ref = scipy.optimize.linprog(c, A_ub=np.array(A, float), b_ub=np.array(b, float),
                                     bounds=[(None, None)] * n, method="highs")
        assert ours.status == "optimal" and ref.status == 0
        assert float(ours.value) == pytest.approx(ref.fun, abs=1e-9)
        lhs = [sum(Fraction(a) * x for a, x in zip(row, ours.x)) for row in A]
        assert all(v <= bi for v, bi in zip(lhs, b))
