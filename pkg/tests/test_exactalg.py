import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fiberfaces.exactalg.laurent import (LaurentPoly, VariableMismatch, format_poly, laurent_gcd,
                                         parse_poly)
from fiberfaces.exactalg.matrix import (IntMatrix, abelian_invariants, determinant, format_matrix,
                                        integer_kernel, minors_gcd, parse_matrix,
                                        smith_normal_form, solve_integer)
from fiberfaces.exactalg.polytope import (DegenerateHullError, convex_hull, dual_norm_ball,
                                          face_lattice_signature, newton_polytope)

from conftest import random_poly
from properties import gcd_exact_division

small = st.integers(-9, 9)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=m, max_size=m)))


@settings(max_examples=1000, deadline=None)
@given(matrices())
def test_snf_determinantal_divisors(A):
    S = smith_normal_form(A)
    m, n = len(A), len(A[0])
    assert (S.U @ IntMatrix.from_rows(A) @ S.V).tolist() == S.D.tolist()
    assert abs(determinant(S.U.tolist())) == 1 and abs(determinant(S.V.tolist())) == 1
    d = S.diagonal
    for i in range(m):
        for j in range(n):
            if i != j:
                assert S.D[i, j] == 0
    for a, b in zip(d, d[1:]):
        assert a >= 0 and (b == 0 if a == 0 else b % a == 0)
    prod = 1
    for k in range(1, min(m, n) + 1):
        prod *= d[k - 1]
        assert prod == minors_gcd(A, k)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.lists(st.integers(-20, 20), min_size=4, max_size=4), min_size=4, max_size=4))
def test_determinant_matches_float(A):
    assert determinant(A) == round(np.linalg.det(np.array(A, dtype=float)))


def test_abelian_invariants_examples():
    assert abelian_invariants([[2, 0], [0, 3]]) == (0, [6])
    assert abelian_invariants([[0, 0, 0]], 3) == (3, [])
    assert abelian_invariants([[4, 6]], 2) == (1, [2])
    assert abelian_invariants([[1, 0, 0], [0, 2, 0], [0, 0, 4]]) == (0, [2, 4])


def test_kernel_and_solve():
    A = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
    K = integer_kernel(A, 3)
    assert len(K) == 1
    assert all(sum(a * k for a, k in zip(row, K[0])) == 0 for row in A)
    x = solve_integer([[2, 0], [0, 3]], [4, 9], 2)
    assert x == [2, 3]
    assert solve_integer([[2, 0]], [1], 2) is None


def test_matrix_roundtrip():
    A = IntMatrix.from_rows([[1, -2], [3, 0], [0, 7]])
    assert parse_matrix(format_matrix(A)) == A
    with pytest.raises(ValueError):
        parse_matrix("mat 2 2\n1 2\n")


XY = ("x", "y")


def test_laurent_basics():
    x = LaurentPoly.variable(XY, 0)
    y = LaurentPoly.variable(XY, 1)
    p = x * y - x - y + 1
    assert p == (x - 1) * (y - 1)
    assert p.exact_divide(x - 1) == y - 1
    assert (x ** -1 * p).equal_up_to_unit(-p)
    assert not (x + 1).equal_up_to_unit(x + 2)
    assert (x ** 3).is_unit
    assert p.evaluate((1, 5)) == 0
    with pytest.raises(VariableMismatch):
        p + LaurentPoly.variable(("t",), 0)


def test_poly_roundtrip():
    rng = random.Random(3)
    for _ in range(50):
        p = random_poly(rng, ("x", "y", "z"))
        assert parse_poly(format_poly(p)) == p


def test_gcd_exact_division_property():
    assert gcd_exact_division(1000, seed=11) == 1000


def test_gcd_univariate_known():
    t = LaurentPoly.variable(("t",), 0)
    g = laurent_gcd((t - 1) ** 2 * (t + 2), (t - 1) * (t ** 2 + 1))
    assert g.equal_up_to_unit(t - 1)


def test_hull_square_and_cube():
    sq = convex_hull([(0, 0), (1, 0), (0, 1), (1, 1), (Fraction(1, 2), Fraction(1, 2))])
    assert len(sq.vertices) == 4 and len(sq.faces) == 4
    cube = convex_hull([(a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)])
    assert face_lattice_signature(cube) == (8, 6, (4,) * 6, (3,) * 8)
    with pytest.raises(DegenerateHullError):
        convex_hull([(0, 0, 0), (1, 0, 0), (0, 1, 0)])
    flat = convex_hull([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)], allow_degenerate=True)
    assert len(flat.vertices) == 4


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5)),
                min_size=5, max_size=14))
def test_hull_contains_points(pts):
    try:
        P = convex_hull(pts)
    except DegenerateHullError:
        return
    for p in pts:
        for f in P.faces:
            assert sum(a * b for a, b in zip(f.normal, p)) <= f.offset
    for f in P.faces:
        assert len(f.vertices) >= 3


def test_norm_ball_of_square_newton_polytope():
    x = LaurentPoly.variable(XY, 0)
    y = LaurentPoly.variable(XY, 1)
    N = newton_polytope(x * y - x - y + 1)
    B = dual_norm_ball(N)
    assert B.lineality == ()
    assert sorted(B.ball.vertices) == [(-1, 0), (0, -1), (0, 1), (1, 0)]
    # a polynomial in x alone has the y direction as lineality
    B1 = dual_norm_ball(newton_polytope(x ** 2 + 1))
    assert len(B1.lineality) == 1
