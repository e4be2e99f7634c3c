import pytest

from fiberfaces.dualsurface.search import (coboundary_descent, format_search_report,
                                           randomized_norm_search, replay_trace)
from fiberfaces.dualsurface.surface import (build_dual_surface, format_surface_report,
                                            norm_upper_bound)
from fiberfaces.triangulation.build import class_of_edge_cocycle, edge_cocycle_of_class
from fiberfaces.triangulation.cocycles import class_cocycle, cocycle_space

from properties import shortcut_bounded, shortcut_closed


def test_shortcut_euler_matches_cells_closed(t3):
    # random classes on one-vertex triangulations in the Pachner orbit of T^3
    assert shortcut_closed(t3, cocycle_space(t3).basis, 600, seed=0) == 600


def test_shortcut_euler_matches_cells_bounded(figure8, whitehead):
    cases = []
    for T0, cls in ((figure8, [(1,), (2,)]), (whitehead, [(1, 0), (0, 1), (1, 1), (1, -2)])):
        sp = cocycle_space(T0)
        cases.append((sp.triangulation, [class_cocycle(sp, T0, a) for a in cls]))
    assert shortcut_bounded(cases, 400, seed=1) == 400


def test_t3_torus_fiber(t3):
    om = edge_cocycle_of_class(t3, (1, 0, 0))
    S = build_dual_surface(t3, om)
    assert S.connected and S.euler_characteristic == 0 and S.norm_bound() == 0
    assert S.components[0].genus == 1
    assert "euler 0" in format_surface_report(S)


def test_closed_multivertex_rejected(t3):
    from fiberfaces.triangulation.build import cyclic_cover
    C, _ = cyclic_cover(t3, edge_cocycle_of_class(t3, (1, 0, 0)), 2)
    with pytest.raises(ValueError):
        build_dual_surface(C, [0] * C.num_edges)


def test_whitehead_initial_bounds(whitehead):
    sp = cocycle_space(whitehead)
    T = sp.triangulation
    for a in [(1, 0), (1, 1)]:
        nb = norm_upper_bound(T, class_cocycle(sp, whitehead, a))
        assert nb.bound == nb.initial >= 1


def test_coboundary_descent_keeps_class(whitehead):
    sp = cocycle_space(whitehead)
    T = sp.triangulation
    om = class_cocycle(sp, whitehead, (1, 1))
    trace = []
    om2, (b, _) = coboundary_descent(T, om, trace)
    assert class_of_edge_cocycle(T, om2) == class_of_edge_cocycle(T, om)
    assert b <= build_dual_surface(T, om).norm_bound()
    T2, (om3,) = replay_trace(T, [om], trace)
    assert list(om3) == list(om2)


def test_search_budget_zero(whitehead):
    sp = cocycle_space(whitehead)
    T = sp.triangulation
    om = class_cocycle(sp, whitehead, (1, 0))
    (nb,) = randomized_norm_search(T, [om], 0, descent_every=10 ** 9)
    assert nb.bound == nb.initial and nb.trace == ()
    with pytest.raises(ValueError):
        randomized_norm_search(T, [om], -1)
    with pytest.raises(ValueError):
        randomized_norm_search(T, [[1] * T.num_edges], 5)


def test_search_monotone_replayable_deterministic(whitehead):
    sp = cocycle_space(whitehead)
    T = sp.triangulation
    oms = [class_cocycle(sp, whitehead, a) for a in [(1, 0), (1, 1)]]
    r1 = randomized_norm_search(T, oms, 40, seed=3)
    r2 = randomized_norm_search(T, oms, 40, seed=3)
    assert [b.key() for b in r1] == [b.key() for b in r2]
    for nb in r1:
        h = [x for x in nb.history]
        assert all(a >= b for a, b in zip(h, h[1:]))
        assert nb.bound <= nb.initial
        T2, cls = replay_trace(T, oms, nb.trace)
        assert T2.size == nb.triangulation.size
        assert tuple(cls[nb.index]) == nb.omega
        assert build_dual_surface(T2, cls[nb.index]).norm_bound() == nb.bound
    assert format_search_report(r1).startswith("search v1")


def test_search_reaches_norm_one(whitehead):
    sp = cocycle_space(whitehead)
    T = sp.triangulation
    (nb,) = randomized_norm_search(T, [class_cocycle(sp, whitehead, (1, 0))], 300, seed=0,
                                   targets=[1])
    assert nb.bound == 1
