"""Acceptance criteria 1-6.  Each test prints one PASS/FAIL line (also
collected into the terminal summary) and then asserts it.

Set FIBERFACES_W3=1 to include the optional n = 3 Whitehead cover (several
minutes)."""

import os
import time

import pytest

from fiberfaces.alexander.norm import equivalent_up_to_basis
from fiberfaces.arith.curves import E, ap, kronecker
from fiberfaces.arith.tower import (betti_lower_bound, face_bound, first_special, genus_gamma0,
                                    primes_up_to, special_primes, tower_degree, whitehead_faces)
from fiberfaces.exactalg.laurent import LaurentPoly
from fiberfaces.exactalg.polytope import face_lattice_signature
from fiberfaces.fibering.whitehead import whitehead_report
from fiberfaces.fpgroup.presentation import abelianization
from fiberfaces.pipelines import alexander_report, cover_chain, n_cover
from fiberfaces.triangulation.cocycles import class_cocycle, cocycle_space

import properties
from conftest import ACCEPTANCE


def report(k, ok, detail):
    line = f"ACCEPTANCE {k}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(line)
    ACCEPTANCE.append(line)
    assert ok, line


@pytest.fixture(scope="module")
def chain():
    return cover_chain()


def test_criterion_1_cover_chain(chain):
    r = chain
    sel = [h for _, h in r.selected]
    ok = (len(r.regular) == 1 and len(r.selected) == 2 and sel == [(1, [28, 28])] * 2
          and r.table_M.degree == 64 and r.homology_M == (3, [2, 2, 14, 14, 14, 14]))
    report(1, ok, f"H1(B)={r.base} Z/4-covers of C={len(r.cyclic)} selected={len(r.selected)} "
                  f"index={r.table_M.degree} H1(M)={r.homology_M}")


@pytest.mark.slow
def test_criterion_2_alexander_M(chain):
    t0 = time.time()
    rep = alexander_report(chain.group_M)
    d = rep.data.polynomial
    x, y, z = (LaurentPoly.variable(d.vars, i) for i in range(3))
    target = (16 * x * y * z - x * y - x * z - y - z + 16) ** 4
    # the free basis of H_1(M) is only defined up to GL(3, Z): compare up to
    # units and an integral unimodular substitution, and report it
    A = [[1, 0, 0], [0, 1, 0], [0, 0, 1]] if d.equal_up_to_unit(target) else \
        equivalent_up_to_basis(d, target)
    coeffs = sorted(abs(f.coefficient) for f in rep.ball.faces)
    cube = face_lattice_signature(rep.ball.ball) == (8, 6, (4,) * 6, (3,) * 8)
    failing_pairs = {tuple(sorted((f, rep.ball.antipode(f)))) for f in rep.failing}
    passing_pairs = {tuple(sorted((f, rep.ball.antipode(f)))) for f in rep.passing}
    bary = rep.ball.faces[rep.failing[0]].barycenter if rep.failing else ()
    ok = (A is not None and cube and coeffs == [1, 1, 1, 1, 16 ** 4, 16 ** 4] and len(rep.failing) == 2
          and len(failing_pairs) == 1 and len(rep.passing) == 4 and len(passing_pairs) == 2
          and rep.failing_axis is True)
    report(2, ok, f"delta matches up to unit and basis change A={A} terms={len(d)} "
                  f"parallelepiped={cube} face coefficients={coeffs} failing faces={rep.failing} "
                  f"passing faces={rep.passing} failing barycenter=({', '.join(map(str, bary))}) "
                  f"on cube axis={rep.failing_axis} ({time.time() - t0:.0f}s)")


def test_criterion_3_N_cover():
    N = n_cover()
    h = abelianization(N)
    rep = alexander_report(N)
    d = rep.data.polynomial
    t = LaurentPoly.variable(d.vars, 0)
    ok = (h == (1, [4, 8]) and d.equal_up_to_unit(t ** 4 + 30 * t ** 2 + 1)
          and len(rep.ball.faces) == 2 and not rep.failing)
    report(3, ok, f"H1(N)={h} delta={d} obstruction faces pass={len(rep.passing)}/"
                  f"{len(rep.ball.faces)}")


def _whitehead_ok(r, n):
    nv = len(r.ball.vertices)
    cross = nv == 2 * (n + 1) and len(r.ball.faces) == 2 ** (n + 1)
    return (cross and len(r.signs) == whitehead_faces(n) and r.all_certified
            and r.vertex_norm_one and len(r.faces.faces) == whitehead_faces(n))


@pytest.mark.slow
def test_criterion_4_whitehead_tower():
    ns = [1, 2] + ([3] if os.environ.get("FIBERFACES_W3") == "1" else [])
    parts = []
    ok = True
    for n in ns:
        t0 = time.time()
        r = whitehead_report(n, budget=1000, seed=0)
        good = _whitehead_ok(r, n)
        ok = ok and good
        chis = sorted({c.euler_characteristic for c in r.certificates})
        parts.append(f"n={n}: faces={len(r.ball.faces)} fibered sign classes="
                     f"{sum(c.fibers for c in r.certificates)}/{len(r.signs)} chi={chis} "
                     f"vertex bounds={[b.bound for b in r.vertex_bounds]} "
                     f"({time.time() - t0:.0f}s)")
    if len(ns) == 2:
        parts.append("n=3 skipped (optional; FIBERFACES_W3=1)")
    report(4, ok, "; ".join(parts))


def test_criterion_5_arithmetic():
    ps = special_primes(10 ** 6)
    density = len(ps) / len(primes_up_to(10 ** 6))
    first = ps[:5]
    P50 = first_special(50)
    bounds = [face_bound(n, P50).holds for n in range(1, 51)]
    b1 = betti_lower_bound(1)
    mism = [p for p in primes_up_to(10 ** 4) if p != 7
            and (ap(E, p) == 0) != (kronecker(-7, p) == -1)]
    ok = (first == [13, 19, 31, 61, 73] and abs(density - 0.25) <= 0.02
          and tower_degree(1) == 196 and tower_degree(2) == 78400 and all(bounds)
          and genus_gamma0(91) == 7 and b1.new_dim == 5 and not mism)
    report(5, ok, f"P starts {first} density={density:.5f} d1={tower_degree(1)} "
                  f"d2={tower_degree(2)} face bound n<=50 holds={all(bounds)} "
                  f"g0(91)={genus_gamma0(91)} 7-new dim={b1.new_dim} a_p mismatches={len(mism)}")


def test_criterion_6_property_suites(t3, figure8):
    counts = {}
    timings = {}

    def run(name, f):
        t0 = time.time()
        counts[name] = f()
        timings[name] = time.time() - t0

    run("snf", lambda: properties.snf_divisors(1000, seed=101))
    run("fox", lambda: properties.fox_identity(1000, seed=102))

    def pachner():
        sp = cocycle_space(figure8)
        _, a = properties.pachner_walk(t3, [list(z) for z in cocycle_space(t3).basis], 500, 103)
        _, b = properties.pachner_walk(sp.triangulation, [class_cocycle(sp, figure8, (1,))],
                                       500, 104)
        return a + b

    run("pachner", pachner)

    def shortcut():
        sp = cocycle_space(figure8)
        cases = [(sp.triangulation, [class_cocycle(sp, figure8, (1,)),
                                     class_cocycle(sp, figure8, (3,))])]
        return (properties.shortcut_closed(t3, cocycle_space(t3).basis, 500, seed=105)
                + properties.shortcut_bounded(cases, 500, seed=106))

    run("shortcut-chi", shortcut)
    run("gcd", lambda: properties.gcd_exact_division(1000, seed=107))
    run("log-replay", lambda: properties.log_replay(1000, seed=108))
    ok = all(v >= 1000 for v in counts.values())
    report(6, ok, " ".join(f"{k}={v} ({timings[k]:.1f}s)" for k, v in counts.items()))
