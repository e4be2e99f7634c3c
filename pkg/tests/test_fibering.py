import pytest

from fiberfaces.alexander.norm import alexander_ball
from fiberfaces.arith.tower import whitehead_faces
from fiberfaces.dualsurface.surface import build_dual_surface
from fiberfaces.exactalg.laurent import LaurentPoly
from fiberfaces.fibering.certify import (certify_fiber, certify_surface, face_count_ledger,
                                         format_certificate, pullback_class, stallings_transfer)
from fiberfaces.fibering.cut import complement_group, cut_complex
from fiberfaces.fibering.whitehead import (format_whitehead_report, sign_classes, vertex_classes,
                                           whitehead_report)
from fiberfaces.fpgroup.presentation import abelianization
from fiberfaces.triangulation.build import edge_cocycle_of_class
from fiberfaces.triangulation.cocycles import class_cocycle, cocycle_space


def test_figure8_fiber(figure8):
    sp = cocycle_space(figure8)
    om = class_cocycle(sp, figure8, (1,))
    c = certify_fiber(sp.triangulation, om)
    assert c.fibers and c.euler_characteristic == -1
    assert c.tag == "free-of-correct-rank" and c.genus == 1 and c.boundary_curves == 1
    assert c.replays()
    text = format_certificate(c)
    assert text.startswith("cert v1") and "verdict Fibers" in text


def test_t3_torus_certificate(t3):
    c = certify_fiber(t3, edge_cocycle_of_class(t3, (1, 0, 0)))
    assert c.fibers and c.tag == "closed-surface-group" and c.euler_characteristic == 0
    c2 = certify_fiber(t3, edge_cocycle_of_class(t3, (1, 1, 0)))
    assert c2.fibers
    assert c.replays() and c2.replays()


def test_t3_separating_is_unknown(t3):
    c = certify_fiber(t3, edge_cocycle_of_class(t3, (2, 0, 0)))
    assert not c.fibers and c.reason == "separating"
    with pytest.raises(ValueError):
        certify_fiber(t3, [0] * t3.num_edges)


def test_cut_complex_euler(t3, figure8):
    sp = cocycle_space(figure8)
    S = build_dual_surface(sp.triangulation, class_cocycle(sp, figure8, (1,)))
    C = cut_complex(S)
    assert C.euler_characteristic == sp.triangulation.euler_characteristic() + S.euler_characteristic
    # complement of a once-punctured torus fiber: free of rank 2
    assert abelianization(complement_group(C)) == (2, [])


def test_certificate_logs_replay(whitehead):
    sp = cocycle_space(whitehead)
    T = sp.triangulation
    for a in [(1, 0), (0, 1), (1, 1), (1, -1)]:
        c = certify_surface(build_dual_surface(T, class_cocycle(sp, whitehead, a)))
        assert c.replays()


def test_stallings_transfer_gates():
    v = stallings_transfer("Fibers", 3, 3, False)
    assert v.verdict == "Fibers" and v.direction == "iff"
    v = stallings_transfer("Fibers", 5, 3, True)
    assert v.verdict == "Fibers" and v.direction == "pullback"
    v = stallings_transfer("Fibers", 5, 3, False)
    assert v.verdict == "Unknown" and "b1 mismatch" in v.reason
    v = stallings_transfer("Unknown", 3, 3, True)
    assert v.verdict == "Unknown"
    v2 = stallings_transfer("Fibers", 3, 3, True, names=("N", "B"), chain=v.chain)
    assert len(v2.chain) == 2


def test_pullback_class():
    # base Z^2, cover generators a^2, b, ab^-1
    assert pullback_class([(1, 0), (0, 1)], [(1, 1), (2,), (1, -2)], (3, 5)) == (6, 5, -2)


def test_face_count_ledger():
    xy = ("x", "y")
    B = alexander_ball(LaurentPoly(xy, {(1, 1): 1, (1, 0): -1, (0, 1): -1, (0, 0): 1}))
    fc = face_count_ledger(B, [(1, 1), (-1, -1), (1, -1), (1, 0), (0, 0)])
    assert fc.pairs == 2 and len(fc.faces) == 3
    assert {r for _, r in fc.excluded} == {"on a face boundary", "zero class"}


def test_whitehead_n1():
    r = whitehead_report(1, budget=1000, seed=0)
    assert r.b1 == 2 and r.tets == 4 and r.truncated_tets == 112
    assert len(r.ball.faces) == whitehead_faces(1) == 4
    assert r.vertex_norm_one and r.all_certified
    assert r.faces.pairs == 2 and len(r.faces.faces) == 4
    assert sign_classes(vertex_classes(r.ball)) == r.signs
    out = format_whitehead_report(r)
    assert out.startswith("whitehead v1") and "fibered faces 4" in out
