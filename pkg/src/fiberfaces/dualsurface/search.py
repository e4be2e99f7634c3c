"""Randomized Pachner search for Thurston-norm upper bounds.

Every step applies a random 2-3 move (probability p) or 3-2 move, carries
all tracked cocycles along with their transport maps and re-evaluates the
dual-surface bound of each.  Periodically each class is also pushed down by
greedy vertex-coboundary moves (omega -> omega +- delta v), which change the
representative but not the class.  The best witness per class is kept with
ties broken by fewer tetrahedra, then the smaller serialization.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

from ..triangulation.core import Triangulation
from ..triangulation.moves import InvalidMove, available_23, available_32, pachner_23, pachner_32
from .surface import NormBound, build_dual_surface


def _score(T, omega):
    S = build_dual_surface(T, omega)
    return S.norm_bound(), S.faces


def coboundary_descent(T: Triangulation, omega: Sequence[int], trace: list | None = None,
                       index: int = 0):
    """Greedy descent on (bound, disk count) over +-delta(v) moves."""
    omega = list(omega)
    cur = _score(T, omega)
    nv = T.num_vertices
    cob = []
    for v in range(nv):
        h = [0] * nv
        h[v] = 1
        cob.append(T.coboundary(h))
    improved = True
    while improved:
        improved = False
        for v in range(nv):
            for s in (1, -1):
                cand = [x + s * y for x, y in zip(omega, cob[v])]
                sc = _score(T, cand)
                if sc < cur:
                    cur, omega = sc, cand
                    improved = True
                    if trace is not None:
                        trace.append(("cob", index, v, s))
    return omega, cur


def replay_trace(T: Triangulation, classes: Sequence[Sequence[int]], trace: Sequence[tuple]):
    """Re-run a logged move sequence; returns (triangulation, classes)."""
    classes = [list(c) for c in classes]
    for m in trace:
        if m[0] == "cob":
            _, k, v, s = m
            h = [0] * T.num_vertices
            h[v] = s
            classes[k] = [x + y for x, y in zip(classes[k], T.coboundary(h))]
            continue
        if m[0] == "23":
            T, tm = pachner_23(T, m[1], m[2])
        elif m[0] == "32":
            T, tm = pachner_32(T, m[1])
        else:
            raise ValueError(f"unknown move {m!r}")
        classes = [tm.apply(c) for c in classes]
    return T, classes


def _run(T: Triangulation, classes, budget: int, seed: int, p: float, descent_every: int,
         targets, check_homology: bool):
    rng = random.Random(seed)
    classes = [list(c) for c in classes]
    trace: list = []
    h0 = T.homology() if check_homology else None
    best = []
    for k, c in enumerate(classes):
        b, _ = _score(T, c)
        best.append(NormBound(k, b, b, T, tuple(c), (), seed))
    hist = [[b.bound] for b in best]
    active = [targets is None or targets[k] is None or best[k].bound > targets[k]
              for k in range(len(classes))]

    def consider(k, T, c):
        b, _ = _score(T, c)
        nb = NormBound(k, b, best[k].initial, T, tuple(c), tuple(trace), seed)
        if b < best[k].bound or (b == best[k].bound and nb.key() < best[k].key()):
            best[k] = nb
        if targets is not None and targets[k] is not None and best[k].bound <= targets[k]:
            active[k] = False

    for step in range(budget):
        if not any(active):
            break
        if descent_every and step % descent_every == 0:
            for k in range(len(classes)):
                if active[k]:
                    classes[k], _ = coboundary_descent(T, classes[k], trace, k)
                    consider(k, T, classes[k])
        a32 = available_32(T)
        use23 = rng.random() < p or not a32
        try:
            if use23:
                t, f = rng.choice(available_23(T))
                T2, tm = pachner_23(T, t, f)
                trace.append(("23", t, f))
            else:
                e = rng.choice(a32)
                T2, tm = pachner_32(T, e)
                trace.append(("32", e))
        except InvalidMove:
            for k in range(len(classes)):
                hist[k].append(best[k].bound)
            continue
        T = T2
        classes = [tm.apply(c) for c in classes]
        if check_homology and T.homology() != h0:
            raise AssertionError("Pachner move changed homology")
        for k in range(len(classes)):
            if active[k]:
                consider(k, T, classes[k])
            hist[k].append(best[k].bound)
    return [NormBound(b.index, b.bound, b.initial, b.triangulation, b.omega, b.trace, b.seed,
                      tuple(h)) for b, h in zip(best, hist)]


def _run_star(args):
    return _run(*args)


def randomized_norm_search(T: Triangulation, classes: Sequence[Sequence[int]], budget: int,
                           seed: int = 0, workers: int = 1, p: float = 0.4,
                           descent_every: int = 20, targets=None,
                           check_homology: bool = True) -> list[NormBound]:
    """Best bound per class over ``workers`` independent seeded walks of
    ``budget`` steps each.  ``targets`` (optional, per class) stops tracking
    a class once its bound reaches the target, e.g. an Alexander norm."""
    if budget < 0:
        raise ValueError("budget must be >= 0")
    for c in classes:
        if not T.is_cocycle(c):
            raise ValueError("class is not a cocycle on T")
    seeds = [seed * 1000003 + w for w in range(max(1, workers))]
    jobs = [(T, classes, budget, s, p, descent_every, targets, check_homology) for s in seeds]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_run_star, jobs))
    else:
        results = [_run_star(j) for j in jobs]
    out = []
    for k in range(len(classes)):
        out.append(min((r[k] for r in results), key=lambda b: b.key()))
    return out


def format_search_report(bounds: Sequence[NormBound], labels=None) -> str:
    lines = ["search v1"]
    for b in bounds:
        lab = labels[b.index] if labels else str(b.index)
        lines.append(f"class {lab} initial {b.initial} bound {b.bound} tets {b.triangulation.size} "
                     f"moves {len(b.trace)} seed {b.seed}")
    return "\n".join(lines) + "\n"
