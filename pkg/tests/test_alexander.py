import random

import pytest

from fiberfaces.alexander.fox import (AlexanderError, abelianization_map, alexander_polynomial,
                                      check_fundamental_identity)
from fiberfaces.alexander.norm import (alexander_ball, alexander_norm, cube_axis_check,
                                       equivalent_up_to_basis, face_pairs, fibering_obstruction,
                                       format_ball_report, norm_sandwich)
from fiberfaces.exactalg.laurent import LaurentPoly
from fiberfaces.fpgroup.presentation import Presentation, parse_presentation, reduce_word
from fiberfaces.fpgroup.simplify import scramble
from properties import fox_identity


def tpoly(coeffs):
    return LaurentPoly(("t",), {(i,): c for i, c in enumerate(coeffs) if c})

def test_trefoil():
    P = parse_presentation("gens a b / rel abaBAB")
    d = alexander_polynomial(P).polynomial
    assert d.equal_up_to_unit(tpoly([1, -1, 1]))

def test_figure8_from_triangulation(figure8):
    d = alexander_polynomial(figure8.fundamental_group()).polynomial
    assert d.equal_up_to_unit(tpoly([1, -3, 1]))

def test_torus_link_t24():
    P = parse_presentation("gens a b / rel ababABAB")
    d = alexander_polynomial(P).polynomial
    xy = ("x", "y")
    target = LaurentPoly(xy, {(0, 0): 1, (1, 1): 1})
    assert equivalent_up_to_basis(d, target) is not None

def test_whitehead_link(whitehead):
    d = alexander_polynomial(whitehead.fundamental_group()).polynomial
    xy = d.vars
    target = LaurentPoly(xy, {(1, 1): 1, (1, 0): -1, (0, 1): -1, (0, 0): 1})
    assert d.equal_up_to_unit(target)

def test_invariant_under_scramble():
    P = parse_presentation("gens a b / rel abaBAB")
    for s in range(5):
        d = alexander_polynomial(scramble(P, 8, seed=s)).polynomial
        assert d.equal_up_to_unit(tpoly([1, -1, 1]))

def test_rank_zero_raises():
    with pytest.raises(AlexanderError):
        alexander_polynomial(parse_presentation("gens a / rel a^3"))

def test_fox_fundamental_identity_random_words():
    assert fox_identity(1000, seed=7) == 1000


def test_fox_identity_on_processed_presentations():
    rng = random.Random(5)
    n = 0
    while n < 200:
        gens = ("a", "b", "c")[:rng.randint(2, 3)]
        rels = tuple(reduce_word([rng.choice((1, -1)) * rng.randint(1, len(gens))
                                  for _ in range(rng.randint(2, 8))]) for _ in range(rng.randint(1, 2)))
        P = Presentation(gens, rels)
        phi = abelianization_map(P)
        if phi.rank == 0:
            continue
        assert check_fundamental_identity(P, phi)
        n += 1

def test_norm_and_ball_square():
    xy = ("x", "y")
    d = LaurentPoly(xy, {(1, 1): 1, (1, 0): -1, (0, 1): -1, (0, 0): 1})
    assert alexander_norm(d, (1, 0)) == 1
    assert alexander_norm(d, (1, 1)) == 2
    assert alexander_norm(d, (1, -1)) == 2
    B = alexander_ball(d)
    assert len(B.faces) == 4 and len(B.vertices) == 4
    assert all(f.passes for f in B.faces)
    assert len(face_pairs(B)) == 2
    assert "obstruction pass" in format_ball_report(B)
    with pytest.raises(ValueError):
        alexander_norm(d, (1,))

def test_obstruction_fails_on_large_vertex_coefficient():
    xy = ("x", "y")
    d = LaurentPoly(xy, {(1, 1): 3, (1, 0): -1, (0, 1): -1, (0, 0): 1})
    B = alexander_ball(d)
    res = [fibering_obstruction(B, f.index) for f in B.faces]
    assert res.count("fail") == 1 and res.count("pass") == 3
    with pytest.raises(IndexError):
        fibering_obstruction(B, 99)

def test_cube_axis_on_box():
    xyz = ("x", "y", "z")
    # Newton polytope an octahedron => the ball is a cube
    d = LaurentPoly(xyz, {(1, 0, 0): 1, (-1, 0, 0): 1, (0, 1, 0): 1, (0, -1, 0): 1,
                          (0, 0, 1): 1, (0, 0, -1): 1})
    B = alexander_ball(d)
    assert len(B.faces) == 6 and len(B.vertices) == 8
    assert all(cube_axis_check(B, f.index) for f in B.faces)

def test_sandwich():
    xy = ("x", "y")
    d = LaurentPoly(xy, {(1, 1): 1, (1, 0): -1, (0, 1): -1, (0, 0): 1})
    B = alexander_ball(d)
    r = norm_sandwich(B, {(1, 0): 1, (0, 1): 1, (1, 1): 3})
    assert r["classes"][(1, 0)].status == "certified"
    assert r["classes"][(1, 1)].status == "inconclusive"
    r1 = norm_sandwich(alexander_ball(tpoly([1, -3, 1])), {(1,): 1})
    assert r1["classes"][(1,)].status == "inconclusive"

def test_equivalent_up_to_basis_rejects():
    xy = ("x", "y")
    d = LaurentPoly(xy, {(1, 1): 1, (0, 0): 1})
    e = LaurentPoly(xy, {(1, 0): 1, (0, 0): 2})
    assert equivalent_up_to_basis(d, e) is None
    A = equivalent_up_to_basis(d, LaurentPoly(xy, {(1, 0): 1, (0, 0): 1}))
    assert A is not None


def test_equivalent_up_to_basis_degenerate_newton():
    xyz = ("x", "y", "z")
    p = LaurentPoly(xyz, {(0, 0, 0): 1, (2, 1, 0): 5})
    q = LaurentPoly(xyz, {(0, 0, 0): 5, (0, 1, 2): 1})
    A = equivalent_up_to_basis(p, q)
    assert A is not None and p.substitute(A, xyz).equal_up_to_unit(q)
    # a non-primitive segment is not equivalent to a primitive one
    assert equivalent_up_to_basis(LaurentPoly(xyz, {(0, 0, 0): 1, (2, 0, 0): 5}),
                                  LaurentPoly(xyz, {(0, 0, 0): 1, (1, 1, 0): 5})) is None
