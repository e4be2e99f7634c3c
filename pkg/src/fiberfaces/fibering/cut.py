"""The complement of a dual surface: slab regions, their adjacencies
across face pieces, edge-segment cycles, and the fundamental group read
off the dual 2-complex."""

from __future__ import annotations

from dataclasses import dataclass

from ..dualsurface.surface import DualSurface
from ..fpgroup.presentation import Presentation
from ..triangulation.core import EDGE_SLOTS, _UF


class CutError(ValueError):
    pass


@dataclass(frozen=True)
class CutComplex:
    surface: DualSurface
    regions: tuple  # (tet, level) slab pieces
    adjacencies: tuple  # interior face pieces: ((t, f, level), (t', f', level'))
    cycles: tuple  # per interior edge segment: [(t, f, level) crossings]
    region_components: int
    face_pieces: int  # classes, interior and boundary
    edge_segments: int  # classes
    euler_characteristic: int  # of the cut manifold by cell count

    @property
    def separating(self) -> bool:
        return self.region_components > 1


def cut_complex(S: DualSurface) -> CutComplex:
    T = S.triangulation
    L = S.lifts
    if S.faces == 0:
        raise CutError("empty surface")
    regions = [(t, s) for t in range(T.size) for s in range(min(L[t]), max(L[t]) + 1)]
    ridx = {r: k for k, r in enumerate(regions)}
    ruf = _UF(len(regions))
    adj = []
    nfp = 0
    for t, row in enumerate(T.gluings):
        for f, g in enumerate(row):
            vals = [L[t][x] for x in range(4) if x != f]
            lo, hi = min(vals), max(vals)
            if g is None:
                nfp += hi - lo + 1
                continue
            if (g[0], g[1]) < (t, f):
                continue
            nfp += hi - lo + 1
            t2, f2, p = g
            v = 0 if f != 0 else 1
            off = L[t2][p[v]] - L[t][v]
            for s in range(lo, hi + 1):
                adj.append(((t, f, s), (t2, f2, s + off)))
                ruf.union(ridx[(t, s)], ridx[(t2, s + off)])
    ncomp = len({ruf.find(k) for k in range(len(regions))})
    # edge segments: walk around each edge class with a level offset
    cycles = []
    nseg = 0
    for ec in T.edge_classes:
        t, k = ec.rep
        i, j = EDGE_SLOTS[k]
        lo, hi = sorted((L[t][i], L[t][j]))
        nseg += hi - lo + 1
        walk = T.edge_walk(ec.index)
        if walk is None:
            continue
        for s in range(lo, hi + 1):
            cyc = []
            lev = s
            for (tt, ff) in walk:
                cyc.append((tt, ff, lev))
                t2, _, p = T.gluings[tt][ff]
                v = 0 if ff != 0 else 1
                lev += L[t2][p[v]] - L[tt][v]
            if lev != s:
                raise AssertionError("edge segment cycle does not close")
            cycles.append(tuple(cyc))
    chi = (T.num_vertices + 2 * S.vertices) - (nseg + 2 * S.edges) \
        + (nfp + 2 * S.faces) - len(regions)
    return CutComplex(S, tuple(regions), tuple(adj), tuple(cycles), ncomp, nfp, nseg, chi)


def _spine(C: CutComplex):
    """BFS tree of regions from the first region; returns the reached
    regions, the generator list and a map face piece -> (adjacency, sign)."""
    nbrs: dict = {}
    piece_key = {}
    for k, (a, b) in enumerate(C.adjacencies):
        ra, rb = (a[0], a[2]), (b[0], b[2])
        nbrs.setdefault(ra, []).append((k, rb))
        nbrs.setdefault(rb, []).append((k, ra))
        piece_key[a] = (k, 1)
        piece_key[b] = (k, -1)
    root = C.regions[0]
    seen = {root}
    tree = set()
    queue = [root]
    q = 0
    while q < len(queue):
        r = queue[q]
        q += 1
        for k, r2 in nbrs.get(r, []):
            if r2 not in seen:
                seen.add(r2)
                tree.add(k)
                queue.append(r2)
    gens = [k for k in range(len(C.adjacencies))
            if k not in tree and (C.adjacencies[k][0][0], C.adjacencies[k][0][2]) in seen]
    gidx = {k: n + 1 for n, k in enumerate(gens)}
    return seen, gens, gidx, piece_key


def _read(pieces, gidx, piece_key) -> tuple:
    w = []
    for c in pieces:
        k, s = piece_key[c]
        if k in gidx:
            w.append(s * gidx[k])
    return tuple(w)


def complement_group(C: CutComplex) -> Presentation:
    """pi_1 of the component of the cut manifold containing the first region:
    generators are interior face pieces off a BFS tree of regions, relators
    the edge-segment cycles."""
    seen, gens, gidx, piece_key = _spine(C)
    rels = [_read(cyc, gidx, piece_key) for cyc in C.cycles if (cyc[0][0], cyc[0][2]) in seen]
    return Presentation(tuple(f"x{k}" for k in gens), tuple(rels))


def surface_side_words(C: CutComplex, side: int = 1) -> list[tuple]:
    """Loops generating pi_1 of the surface, pushed off to one side and
    written in the generators of complement_group(C).

    The disk at level l + 1/2 of tet t sits between slabs l and l + 1; the
    push-off to side +1 uses slab l + 1 and face pieces at level l + 1.
    """
    S = C.surface
    T = S.triangulation
    L = S.lifts
    seen, _, gidx, piece_key = _spine(C)
    shift = 1 if side > 0 else 0
    disks = [(t, l) for t in range(T.size) for l in range(min(L[t]), max(L[t]))]
    nbrs: dict = {d: [] for d in disks}
    for t, row in enumerate(T.gluings):
        for f, g in enumerate(row):
            if g is None:
                continue
            t2, _, p = g
            v = 0 if f != 0 else 1
            off = L[t2][p[v]] - L[t][v]
            vals = [L[t][x] for x in range(4) if x != f]
            for l in range(min(vals), max(vals)):
                nbrs[(t, l)].append(((t, f, l + shift), (t2, l + off)))
    root = disks[0]
    if (root[0], root[1] + shift) not in seen:
        raise CutError("push-off of the surface misses the base component")
    path = {root: ()}
    queue = [root]
    used = set()
    q = 0
    while q < len(queue):
        d = queue[q]
        q += 1
        for piece, d2 in nbrs[d]:
            if d2 not in path:
                path[d2] = path[d] + (piece,)
                used.add((d, piece))
                queue.append(d2)
    words = []
    for d in path:
        for piece, d2 in nbrs[d]:
            if (d, piece) in used:
                continue
            w = list(_read(path[d] + (piece,), gidx, piece_key))
            w += [-x for x in reversed(_read(path[d2], gidx, piece_key))]
            words.append(tuple(w))
    return words
