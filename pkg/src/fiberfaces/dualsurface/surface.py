"""Level-set surfaces dual to integral edge cocycles.

For a cocycle omega each tetrahedron gets vertex lifts L_t with
L_t(j) - L_t(i) = omega(i -> j).  The surface is the union of the level
sets at half-integer heights: a point on every edge crossing, an arc in
every face crossing, a triangle or quad in every tetrahedron crossing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ..triangulation.core import (EDGE_SLOTS, SLOT_INDEX, Triangulation, TriangulationError, _UF,
                                  format_triangulation)


@dataclass(frozen=True)
class Component:
    euler_characteristic: int
    boundary_curves: int
    disks: int

    @property
    def genus(self) -> int:
        # the surface is transversely oriented, hence orientable
        return (2 - self.euler_characteristic - self.boundary_curves) // 2


@dataclass(frozen=True)
class DualSurface:
    triangulation: Triangulation
    omega: tuple
    lifts: tuple
    vertices: int
    edges: int
    faces: int
    components: tuple
    disk_component: dict = field(repr=False, compare=False)

    @property
    def euler_characteristic(self) -> int:
        return self.vertices - self.edges + self.faces

    @property
    def connected(self) -> bool:
        return len(self.components) == 1

    def norm_bound(self) -> int:
        return sum(max(0, -c.euler_characteristic) for c in self.components)


def _span(vals) -> tuple[int, int]:
    return min(vals), max(vals)


def shortcut_euler(T: Triangulation, omega: Sequence[int]) -> int:
    """sum |omega(e)| - sum span(face) + sum span(tet)."""
    L = T.lifts(omega)
    chi = sum(abs(w) for w in omega)
    for (t, f) in T.face_reps:
        vals = [L[t][x] for x in range(4) if x != f]
        chi -= max(vals) - min(vals)
    for t in range(T.size):
        chi += max(L[t]) - min(L[t])
    return chi


def build_dual_surface(T: Triangulation, omega: Sequence[int]) -> DualSurface:
    omega = tuple(omega)
    if T.is_closed and T.num_vertices != 1:
        raise TriangulationError("closed input must be a one-vertex triangulation")
    if not T.is_cocycle(omega):
        raise TriangulationError("not a cocycle")
    L = T.lifts(omega)
    # local cells
    pid = {}
    aid = {}
    for t in range(T.size):
        lt = L[t]
        for k, (i, j) in enumerate(EDGE_SLOTS):
            lo, hi = sorted((lt[i], lt[j]))
            for l in range(lo, hi):
                pid[(t, k, l)] = len(pid)
        for f in range(4):
            lo, hi = _span([lt[x] for x in range(4) if x != f])
            for l in range(lo, hi):
                aid[(t, f, l)] = len(aid)
    puf = _UF(len(pid))
    auf = _UF(len(aid))
    for t, row in enumerate(T.gluings):
        for f, g in enumerate(row):
            if g is None or (g[0], g[1]) < (t, f):
                continue
            t2, f2, p = g
            v = 0 if f != 0 else 1
            off = L[t2][p[v]] - L[t][v]
            lo, hi = _span([L[t][x] for x in range(4) if x != f])
            for l in range(lo, hi):
                auf.union(aid[(t, f, l)], aid[(t2, f2, l + off)])
            for i in range(4):
                for j in range(i + 1, 4):
                    if f in (i, j):
                        continue
                    k = SLOT_INDEX[(i, j)]
                    k2 = SLOT_INDEX[(p[i], p[j])]
                    a, b = sorted((L[t][i], L[t][j]))
                    for l in range(a, b):
                        puf.union(pid[(t, k, l)], pid[(t2, k2, l + off)])
    nV = len({puf.find(x) for x in pid.values()})
    nE = len({auf.find(x) for x in aid.values()})
    disks = [(t, l) for t in range(T.size) for l in range(min(L[t]), max(L[t]))]
    nF = len(disks)
    shortcut = shortcut_euler(T, omega)
    if nV - nE + nF != shortcut:
        raise AssertionError(f"cell count chi {nV - nE + nF} != shortcut chi {shortcut}")

    # components: disks joined through arc classes
    didx = {d: k for k, d in enumerate(disks)}
    duf = _UF(len(disks))
    arc_disk: dict = {}
    for (t, f, l), a in aid.items():
        r = auf.find(a)
        d = didx[(t, l)]
        if r in arc_disk:
            duf.union(arc_disk[r], d)
        else:
            arc_disk[r] = d
    comp_of = {}
    roots = []
    for d in range(len(disks)):
        r = duf.find(d)
        if r not in comp_of:
            comp_of[r] = len(roots)
            roots.append(r)
    nc = len(roots)
    V = [0] * nc
    E = [0] * nc
    F = [0] * nc
    for d in range(len(disks)):
        F[comp_of[duf.find(d)]] += 1
    for r, d in arc_disk.items():
        E[comp_of[duf.find(d)]] += 1
    # points: attach to the component of any arc through them
    point_comp = {}
    arc_ends = {}
    for (t, f, l), a in aid.items():
        c = comp_of[duf.find(didx[(t, l)])]
        ends = []
        for i in range(4):
            for j in range(i + 1, 4):
                if f in (i, j):
                    continue
                lo, hi = sorted((L[t][i], L[t][j]))
                if lo <= l < hi:
                    ends.append(puf.find(pid[(t, SLOT_INDEX[(i, j)], l)]))
        if len(ends) != 2:
            raise AssertionError("arc does not have two endpoints")
        arc_ends[(t, f, l)] = ends
        for e in ends:
            point_comp[e] = c
    for c in point_comp.values():
        V[c] += 1
    # boundary curves: boundary arcs joined at shared points
    bpts = {}
    buf_nodes = []
    for (t, f), in [((t, f),) for (t, f) in T.boundary_faces()]:
        lo, hi = _span([L[t][x] for x in range(4) if x != f])
        for l in range(lo, hi):
            buf_nodes.append(((t, f, l), arc_ends[(t, f, l)]))
    buf = _UF(len(buf_nodes))
    for k, (_, ends) in enumerate(buf_nodes):
        for e in ends:
            if e in bpts:
                buf.union(bpts[e], k)
            else:
                bpts[e] = k
    B = [0] * nc
    seen = set()
    for k, ((t, f, l), _) in enumerate(buf_nodes):
        r = buf.find(k)
        if r not in seen:
            seen.add(r)
            B[comp_of[duf.find(didx[(t, l)])]] += 1
    comps = tuple(sorted((Component(V[c] - E[c] + F[c], B[c], F[c]) for c in range(nc)),
                         key=lambda c: (c.euler_characteristic, c.boundary_curves, c.disks)))
    dc = {d: comp_of[duf.find(k)] for k, d in enumerate(disks)}
    return DualSurface(T, omega, tuple(L), nV, nE, nF, comps, dc)


@dataclass(frozen=True)
class NormBound:
    index: int
    bound: int
    initial: int
    triangulation: Triangulation
    omega: tuple
    trace: tuple  # moves from the input triangulation to the witness
    seed: int
    history: tuple = ()  # best-so-far after each step

    def key(self):
        return (self.bound, self.triangulation.size,
                format_triangulation(self.triangulation) + " ".join(map(str, self.omega)))


def norm_upper_bound(T: Triangulation, omega: Sequence[int]) -> NormBound:
    """Bound from the dual surface of omega on T itself (no search)."""
    b = build_dual_surface(T, omega).norm_bound()
    return NormBound(0, b, b, T, tuple(omega), (), 0)


def format_surface_report(S: DualSurface, label: str = "") -> str:
    lines = ["surface v1"]
    if label:
        lines.append(f"class {label}")
    lines.append(f"tets {S.triangulation.size}")
    lines.append(f"cells V {S.vertices} E {S.edges} F {S.faces}")
    lines.append(f"euler {S.euler_characteristic}")
    for k, c in enumerate(S.components):
        lines.append(f"component {k} euler {c.euler_characteristic} boundary {c.boundary_curves} "
                     f"genus {c.genus} disks {c.disks}")
    lines.append(f"bound {S.norm_bound()}")
    return "\n".join(lines) + "\n"
