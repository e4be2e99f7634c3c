"""Seeded randomized property checks shared by the unit and acceptance suites.
Each returns the number of cases checked and raises AssertionError on a
counterexample."""

import random

from fiberfaces.alexander.fox import abelianization_map, fox_derivative
from fiberfaces.dualsurface.surface import build_dual_surface, shortcut_euler
from fiberfaces.exactalg.laurent import LaurentPoly, laurent_gcd
from fiberfaces.exactalg.matrix import IntMatrix, determinant, minors_gcd, smith_normal_form
from fiberfaces.fpgroup.presentation import (Presentation, abelianization, format_presentation,
                                             parse_presentation, reduce_word)
from fiberfaces.fpgroup.simplify import (replay, scramble, simplify_presentation,
                                         standard_surface_presentation)
from fiberfaces.triangulation.moves import (InvalidMove, available_23, available_32, loop_pairings,
                                            pachner_23, pachner_32, transport_loop)

from conftest import random_poly


def snf_divisors(n, seed):
    rng = random.Random(seed)
    for _ in range(n):
        m, k = rng.randint(1, 4), rng.randint(1, 4)
        A = [[rng.randint(-9, 9) for _ in range(k)] for _ in range(m)]
        S = smith_normal_form(A)
        assert (S.U @ IntMatrix.from_rows(A) @ S.V).tolist() == S.D.tolist()
        assert abs(determinant(S.U.tolist())) == 1 and abs(determinant(S.V.tolist())) == 1
        d = S.diagonal
        prod = 1
        for i in range(min(m, k)):
            prod *= d[i]
            assert prod == minors_gcd(A, i + 1)
    return n


def fox_identity(n, seed, ngens=3):
    # sum_j dw/dx_j (x_j - 1) = w - 1 in Z[H_1(F)]
    rng = random.Random(seed)
    gens = tuple("abcdefgh"[:ngens])
    phi = abelianization_map(Presentation(gens, ()))
    one = LaurentPoly.constant(phi.vars, 1)
    for _ in range(n):
        w = reduce_word([rng.choice((1, -1)) * rng.randint(1, ngens)
                         for _ in range(rng.randint(0, 16))])
        lhs = LaurentPoly.constant(phi.vars, 0)
        for j in range(1, ngens + 1):
            lhs = lhs + fox_derivative(w, j, phi) * (phi.unit(phi.images[j - 1]) - one)
        assert lhs == phi.unit(phi.of_word(w)) - one
    return n


def pachner_walk(T, classes, steps, seed, p23=0.45):
    """Random 2-3/3-2 moves checking H_1 and the pairings of transported
    classes with transported generator loops after every move."""
    rng = random.Random(seed)
    h = T.homology()
    loops = T.generator_loops()
    ref = [loop_pairings(T, om, loops) for om in classes]
    done = 0
    while done < steps:
        m32 = available_32(T)
        try:
            if m32 and rng.random() > p23:
                T2, tm = pachner_32(T, rng.choice(m32))
            else:
                T2, tm = pachner_23(T, *rng.choice(available_23(T)))
        except InvalidMove:
            continue
        loops = [transport_loop(T, T2, tm, l) for l in loops]
        classes = [tm.apply(om) for om in classes]
        T = T2
        assert T.homology() == h
        for om, r in zip(classes, ref):
            assert T.is_cocycle(om)
            assert loop_pairings(T, om, loops) == r
        done += 1
    return T, done


def random_orbit(T, classes, steps, rng):
    out = [(T, classes)]
    while len(out) <= steps:
        m32 = available_32(T)
        try:
            if m32 and rng.random() < 0.5:
                T, tm = pachner_32(T, rng.choice(m32))
            else:
                T, tm = pachner_23(T, *rng.choice(available_23(T)))
        except InvalidMove:
            continue
        classes = [tm.apply(c) for c in classes]
        out.append((T, classes))
    return out


def shortcut_closed(T, basis, n, seed, orbit=30):
    rng = random.Random(seed)
    orb = random_orbit(T, [list(z) for z in basis], orbit, rng)
    for _ in range(n):
        T2, B = rng.choice(orb)
        c = [rng.randint(-3, 3) for _ in B]
        om = [sum(a * z[e] for a, z in zip(c, B)) for e in range(T2.num_edges)]
        assert shortcut_euler(T2, om) == build_dual_surface(T2, om).euler_characteristic
    return n


def shortcut_bounded(cases, n, seed):
    """cases: list of (triangulation, [edge cocycles]); representatives are
    perturbed by random vertex coboundaries."""
    rng = random.Random(seed)
    for _ in range(n):
        T, oms = rng.choice(cases)
        h = [rng.randint(-1, 1) for _ in range(T.num_vertices)]
        om = [a + b for a, b in zip(rng.choice(oms), T.coboundary(h))]
        assert shortcut_euler(T, om) == build_dual_surface(T, om).euler_characteristic
    return n


def gcd_exact_division(n, seed, vars=("x", "y")):
    rng = random.Random(seed)
    for _ in range(n):
        r, a, b = (random_poly(rng, vars, terms=3, span=1, coef=3) for _ in range(3))
        pa, pb = a * r, b * r
        g = laurent_gcd(pa, pb)
        qa, qb = pa.exact_divide(g), pb.exact_divide(g)
        assert qa is not None and qb is not None
        assert qa * g == pa and qb * g == pb
        assert g.exact_divide(r) is not None
    return n


_BASES = ["gens a b / rel abaBAB", "gens a b / rel a^3 / rel b^2", "gens a b / rel abAB"]


def log_replay(n, seed):
    """Simplification logs replay to byte-identical presentation text."""
    for k in range(n):
        rng = random.Random(seed * 100003 + k)
        base = standard_surface_presentation(rng.randint(1, 3)) if k % 2 else \
            parse_presentation(rng.choice(_BASES))
        P = scramble(base, rng.randint(1, 10), seed=rng.randrange(1 << 30))
        res = simplify_presentation(P, effort=rng.randint(0, 2), seed=k)
        assert format_presentation(replay(P, res.log)) == format_presentation(res.presentation)
        assert abelianization(res.presentation) == abelianization(P)
    return n
