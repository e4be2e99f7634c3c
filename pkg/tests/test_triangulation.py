import random

import pytest

from fiberfaces.fpgroup.presentation import abelianization
from fiberfaces.fpgroup.simplify import simplify_presentation
from fiberfaces.triangulation.build import (class_of_edge_cocycle, cover_of_class, cusp_images,
                                            cyclic_cover, edge_cocycle_of_class, truncate,
                                            truncated_class)
from fiberfaces.triangulation.cocycles import class_cocycle, cocycle_space
from fiberfaces.triangulation.core import (Triangulation, TriangulationError, format_triangulation,
                                           parse_triangulation)
from fiberfaces.triangulation.moves import (InvalidMove, available_23, available_32,
                                            isomorphism_signature, pachner_23, pachner_32)

from properties import pachner_walk


def test_roundtrip_and_signature(t3, figure8, whitehead, s3):
    for T in (t3, figure8, whitehead, s3):
        T2 = parse_triangulation(format_triangulation(T))
        assert T2.gluings == T.gluings
        assert isomorphism_signature(T2) == isomorphism_signature(T)


def test_parse_errors():
    with pytest.raises(TriangulationError):
        parse_triangulation("tri v1\ntets 1\nglue 0 0 0 1 1023\n")
    with pytest.raises(TriangulationError):
        parse_triangulation("tri v2\ntets 1\n")
    with pytest.raises(TriangulationError):
        parse_triangulation("tri v1\nglue 0 0 0 1 1023\n")
    with pytest.raises(TriangulationError):
        parse_triangulation("tri v1\ntets 1\nglue 0 0 0 1 10\n")


def test_fixture_invariants(t3, figure8, whitehead, s3):
    assert figure8.is_ideal and figure8.num_vertices == 1 and figure8.homology() == (1, [])
    assert whitehead.is_ideal and len(whitehead.ideal_vertices) == 2
    assert whitehead.homology() == (2, [])
    assert s3.is_closed and s3.num_vertices == 1 and s3.homology() == (0, [])
    assert t3.is_closed and t3.num_vertices == 1 and t3.homology() == (3, [])
    assert t3.euler_characteristic() == 0 and s3.euler_characteristic() == 0


def test_s3_trivial_pi1(s3):
    Q = simplify_presentation(s3.fundamental_group()).presentation
    assert Q.ngens == 0


def test_homology_methods_agree(t3, s3):
    for T in (t3, s3):
        assert T.homology("simplicial") == T.homology("dual")
        assert abelianization(T.fundamental_group()) == T.homology()


def test_simplicial_on_ideal_raises(figure8):
    with pytest.raises(TriangulationError):
        figure8.homology("simplicial")


def test_truncation(figure8, whitehead):
    for T in (figure8, whitehead):
        T2, origin = truncate(T)
        assert T2.size == 28 * T.size and len(origin) == T2.size
        assert not T2.is_ideal
        assert T2.homology() == T.homology()
        assert T2.boundary_faces


def test_truncated_class_agrees(whitehead):
    sp = cocycle_space(whitehead)
    assert sp.truncated and sp.rank == 2
    for a in [(1, 0), (0, 1), (1, -1), (2, 3)]:
        om = class_cocycle(sp, whitehead, a)
        assert sp.triangulation.is_cocycle(om)
        b = truncated_class(whitehead, sp.triangulation, sp.origin, a)
        assert class_of_edge_cocycle(sp.triangulation, om) == tuple(b)


def test_cocycles_closed(t3):
    sp = cocycle_space(t3)
    assert sp.rank == 3
    for z in sp.basis:
        assert t3.is_cocycle(z)
    assert t3.is_cocycle(t3.coboundary([1]))
    for a in [(1, 0, 0), (0, 1, 0), (1, 2, -3)]:
        assert class_of_edge_cocycle(t3, edge_cocycle_of_class(t3, a)) == a


@pytest.mark.parametrize("n,tors", [(2, [5]), (3, [4, 4])])
def test_figure8_cyclic_covers(figure8, n, tors):
    # 2- and 3-fold branched covers of the figure-eight knot: L(5,2) and Hantzsche-Wendt
    C, origin = cover_of_class(figure8, (1,), n)
    assert C.size == n * figure8.size and len(origin) == C.size
    assert C.homology() == (1, tors)


def test_cyclic_cover_t3(t3):
    om = edge_cocycle_of_class(t3, (1, 0, 0))
    C, _ = cyclic_cover(t3, om, 3)
    assert C.size == 18 and C.num_vertices == 3 and C.homology() == (3, [])
    with pytest.raises(TriangulationError):
        bad = list(om)
        bad[0] += 1
        cyclic_cover(t3, bad, 2)


def test_cusp_images_whitehead(whitehead):
    ci = cusp_images(whitehead)
    assert len(ci) == 2


def test_23_then_32_roundtrip(t3, figure8):
    for T in (t3, figure8):
        sig = isomorphism_signature(T)
        for t, f in available_23(T)[:4]:
            T2, _ = pachner_23(T, t, f)
            assert T2.size == T.size + 1
            back = [e for e in available_32(T2)
                    if isomorphism_signature(pachner_32(T2, e)[0]) == sig]
            assert back


def test_invalid_moves(figure8):
    T = figure8
    bad = [e for e in range(T.num_edges) if e not in available_32(T)]
    with pytest.raises(InvalidMove):
        pachner_32(T, bad[0])


def test_signature_relabel_invariant(t3):
    rng = random.Random(0)
    perm = list(range(t3.size))
    rng.shuffle(perm)
    inv = {p: i for i, p in enumerate(perm)}
    rows = [None] * t3.size
    for t, row in enumerate(t3.gluings):
        rows[inv[t]] = [(inv[g[0]], g[1], g[2]) for g in row]
    assert isomorphism_signature(Triangulation(rows)) == isomorphism_signature(t3)


def test_pachner_property_t3(t3):
    sp = cocycle_space(t3)
    T, _ = pachner_walk(t3, [list(z) for z in sp.basis], 700, seed=1)
    assert T.num_vertices == 1


def test_pachner_property_truncated_figure8(figure8):
    sp = cocycle_space(figure8)
    om = class_cocycle(sp, figure8, (1,))
    pachner_walk(sp.triangulation, [om], 300, seed=2)
