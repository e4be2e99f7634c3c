"""Tetrahedral triangulations: validation, edge/vertex/face classes, vertex
links, homology, fundamental group and integral 1-cocycles.

Conventions
-----------
Tetrahedron vertices are 0..3 and face ``f`` is the face opposite vertex
``f``.  A gluing ``(t, f) -> (t', f', p)`` sends vertex ``i`` of ``t`` to
vertex ``p[i]`` of ``t'`` with ``p[f] == f'``.  Tetrahedra are coherently
oriented, so every gluing permutation is odd.  Faces may be left free only
if declared ``boundary``.

Edge slots are the six vertex pairs in the fixed order ``EDGE_SLOTS``.  An
edge class is oriented from the lower to the higher vertex of its
lexicographically smallest (tet, slot) representative.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from ..exactalg.matrix import abelian_invariants
from ..fpgroup.presentation import Presentation, abelian_map

EDGE_SLOTS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
SLOT_INDEX = {}
for _k, (_i, _j) in enumerate(EDGE_SLOTS):
    SLOT_INDEX[(_i, _j)] = _k
    SLOT_INDEX[(_j, _i)] = _k


class TriangulationError(ValueError):
    pass


def perm_sign(p: Sequence[int]) -> int:
    p = list(p)
    s = 1
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            s = -s
    return s


def perm_inverse(p: Sequence[int]) -> tuple:
    q = [0] * len(p)
    for i, j in enumerate(p):
        q[j] = i
    return tuple(q)


class _UF:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        p = self.parent
        while p[a] != a:
            p[a] = p[p[a]]
            a = p[a]
        return a

    def union(self, a: int, b: int):
        a, b = self.find(a), self.find(b)
        if a != b:
            if a < b:
                self.parent[b] = a
            else:
                self.parent[a] = b


@dataclass(frozen=True)
class EdgeClass:
    index: int
    rep: tuple  # (tet, slot)
    members: tuple  # (tet, slot, sign) ; sign +1 if local low->high agrees with the class
    boundary: bool
    degree: int


class Triangulation:
    """Immutable triangulation; ``gluings[t][f]`` is ``(t', f', perm)`` or None
    for a declared boundary face."""

    def __init__(self, gluings: Sequence[Sequence], check: bool = True):
        self.gluings = tuple(tuple(None if g is None else (int(g[0]), int(g[1]), tuple(g[2]))
                                   for g in row) for row in gluings)
        if check:
            self._validate()

    # ------------------------------------------------------------------ basics
    @property
    def size(self) -> int:
        return len(self.gluings)

    def glued(self, t: int, f: int):
        return self.gluings[t][f]

    def _validate(self):
        n = self.size
        if n == 0:
            raise TriangulationError("empty triangulation")
        for t, row in enumerate(self.gluings):
            if len(row) != 4:
                raise TriangulationError(f"tet {t} does not have 4 faces")
            for f, g in enumerate(row):
                if g is None:
                    continue
                t2, f2, p = g
                if not (0 <= t2 < n) or not (0 <= f2 < 4):
                    raise TriangulationError(f"gluing of ({t},{f}) points outside the triangulation")
                if sorted(p) != [0, 1, 2, 3] or p[f] != f2:
                    raise TriangulationError(f"bad permutation {p} on ({t},{f})")
                if (t2, f2) == (t, f):
                    raise TriangulationError(f"face ({t},{f}) glued to itself")
                back = self.gluings[t2][f2]
                if back is None or back[0] != t or back[1] != f or back[2] != perm_inverse(p):
                    raise TriangulationError(f"gluing is not an involution at ({t},{f})")
                if perm_sign(p) != -1:
                    raise TriangulationError(f"orientation clash at ({t},{f})")
        self.edge_classes  # raises on self-reversed edges
        self.vertex_types

    def boundary_faces(self) -> list[tuple]:
        return [(t, f) for t in range(self.size) for f in range(4) if self.gluings[t][f] is None]

    # ------------------------------------------------------------------ classes
    @cached_property
    def _edge_data(self):
        n = self.size
        # oriented edge node id: (t*4 + i)*4 + j
        uf = _UF(16 * n)
        for t, row in enumerate(self.gluings):
            for f, g in enumerate(row):
                if g is None or (g[0], g[1]) < (t, f):
                    continue
                t2, _, p = g
                for i in range(4):
                    for j in range(4):
                        if i != j and i != f and j != f:
                            uf.union((t * 4 + i) * 4 + j, (t2 * 4 + p[i]) * 4 + p[j])
        classes: dict[int, list] = {}
        edge_of = [[None] * 6 for _ in range(n)]
        order = []
        for t in range(n):
            for k, (i, j) in enumerate(EDGE_SLOTS):
                a = uf.find((t * 4 + i) * 4 + j)
                b = uf.find((t * 4 + j) * 4 + i)
                if a == b:
                    raise TriangulationError(f"edge {i}{j} of tet {t} is identified with its reverse")
                if a in classes:
                    classes[a].append((t, k, 1))
                elif b in classes:
                    classes[b].append((t, k, -1))
                else:
                    classes[a] = [(t, k, 1)]
                    order.append(a)
        out = []
        bset = set(self.boundary_faces())
        for idx, key in enumerate(order):
            mem = classes[key]
            bd = False
            for (t, k, s) in mem:
                edge_of[t][k] = (idx, s)
                i, j = EDGE_SLOTS[k]
                for f in range(4):
                    if f not in (i, j) and (t, f) in bset:
                        bd = True
            out.append(EdgeClass(idx, (mem[0][0], mem[0][1]), tuple(mem), bd, len(mem)))
        return tuple(out), tuple(tuple(r) for r in edge_of)

    @property
    def edge_classes(self) -> tuple:
        return self._edge_data[0]

    @property
    def edge_of(self) -> tuple:
        """edge_of[t][slot] = (class index, sign)."""
        return self._edge_data[1]

    @property
    def num_edges(self) -> int:
        return len(self.edge_classes)

    def edge_value(self, omega: Sequence[int], t: int, i: int, j: int) -> int:
        """Value of the edge cocycle on the oriented tet edge i -> j of t."""
        e, s = self.edge_of[t][SLOT_INDEX[(i, j)]]
        v = omega[e] * s
        return v if i < j else -v

    @cached_property
    def _vertex_data(self):
        n = self.size
        uf = _UF(4 * n)
        for t, row in enumerate(self.gluings):
            for f, g in enumerate(row):
                if g is None:
                    continue
                for v in range(4):
                    if v != f:
                        uf.union(4 * t + v, 4 * g[0] + g[2][v])
        ids: dict[int, int] = {}
        vof = []
        for t in range(n):
            r = []
            for v in range(4):
                root = uf.find(4 * t + v)
                if root not in ids:
                    ids[root] = len(ids)
                r.append(ids[root])
            vof.append(tuple(r))
        return len(ids), tuple(vof)

    @property
    def num_vertices(self) -> int:
        return self._vertex_data[0]

    @property
    def vertex_of(self) -> tuple:
        return self._vertex_data[1]

    @cached_property
    def _face_data(self):
        face_of = [[None] * 4 for _ in range(self.size)]
        reps = []
        for t in range(self.size):
            for f in range(4):
                if face_of[t][f] is not None:
                    continue
                idx = len(reps)
                reps.append((t, f))
                face_of[t][f] = idx
                g = self.gluings[t][f]
                if g is not None:
                    face_of[g[0]][g[1]] = idx
        return tuple(reps), tuple(tuple(r) for r in face_of)

    @property
    def face_reps(self) -> tuple:
        return self._face_data[0]

    @property
    def face_of(self) -> tuple:
        return self._face_data[1]

    @property
    def num_faces(self) -> int:
        return len(self.face_reps)

    def euler_characteristic(self) -> int:
        """V - E + F - T of the complex with all vertices counted."""
        return self.num_vertices - self.num_edges + self.num_faces - self.size

    # ------------------------------------------------------------------ links
    @cached_property
    def vertex_links(self) -> tuple:
        """Per vertex class: (chi of link, has boundary)."""
        n = self.size
        nv = self.num_vertices
        F = [0] * nv
        E2 = [0] * nv  # twice the interior link edges + 2 * boundary link edges
        Eb = [0] * nv
        uf = _UF(16 * n)  # link vertex (t, v, w) -> node (t*4+v)*4+w
        for t, row in enumerate(self.gluings):
            for v in range(4):
                c = self.vertex_of[t][v]
                F[c] += 1
                for f in range(4):
                    if f == v:
                        continue
                    g = row[f]
                    if g is None:
                        Eb[c] += 1
                        continue
                    E2[c] += 1
                    if (g[0], g[1]) > (t, f):
                        for w in range(4):
                            if w != v and w != f:
                                uf.union((t * 4 + v) * 4 + w, (g[0] * 4 + g[2][v]) * 4 + g[2][w])
        V = [set() for _ in range(nv)]
        for t in range(n):
            for v in range(4):
                c = self.vertex_of[t][v]
                for w in range(4):
                    if w != v:
                        V[c].add(uf.find((t * 4 + v) * 4 + w))
        out = []
        for c in range(nv):
            E = E2[c] // 2 + Eb[c]
            out.append((len(V[c]) - E + F[c], Eb[c] > 0))
        return tuple(out)

    @cached_property
    def vertex_types(self) -> tuple:
        """'material' (sphere link), 'ideal' (torus link) or 'boundary' (disk link)."""
        out = []
        for c, (chi, bd) in enumerate(self.vertex_links):
            if bd:
                if chi != 1:
                    raise TriangulationError(f"bad link at vertex {c}: bounded link with chi {chi}")
                out.append("boundary")
            elif chi == 2:
                out.append("material")
            elif chi == 0:
                out.append("ideal")
            else:
                raise TriangulationError(f"bad link at vertex {c}: closed link with chi {chi}")
        return tuple(out)

    @property
    def ideal_vertices(self) -> list[int]:
        return [c for c, k in enumerate(self.vertex_types) if k == "ideal"]

    @property
    def is_ideal(self) -> bool:
        return bool(self.ideal_vertices)

    @property
    def is_closed(self) -> bool:
        return not self.is_ideal and not self.boundary_faces()

    # ------------------------------------------------------------------ walks
    def edge_walk(self, e: int):
        """Faces crossed going once around edge class e.

        Returns a list of (tet, exit face) pairs, or None for a boundary edge.
        """
        t, k = self.edge_classes[e].rep
        i, j = EDGE_SLOTS[k]
        a, b = [x for x in range(4) if x not in (i, j)]
        start = (t, i, j, a)
        state = start
        out = []
        while True:
            t, i, j, a = state
            out.append((t, a))
            g = self.gluings[t][a]
            if g is None:
                return None
            l = 6 - i - j - a
            t2, _, p = g
            state = (t2, p[i], p[j], p[l])
            if state == start:
                return out
            if len(out) > 6 * self.size + 6:
                raise TriangulationError("edge walk does not close")

    # ------------------------------------------------------------------ homology
    def simplicial_boundaries(self):
        """Boundary matrices d1 (E x V), d2 (F x E), d3 (T x F) as row lists."""
        nv, ne, nf = self.num_vertices, self.num_edges, self.num_faces
        d1 = []
        for ec in self.edge_classes:
            t, k = ec.rep
            i, j = EDGE_SLOTS[k]
            row = [0] * nv
            row[self.vertex_of[t][j]] += 1
            row[self.vertex_of[t][i]] -= 1
            d1.append(row)
        d2 = []
        for (t, f) in self.face_reps:
            a, b, c = [x for x in range(4) if x != f]
            row = [0] * ne
            for (x, y), s in (((b, c), 1), ((a, c), -1), ((a, b), 1)):
                e, sg = self.edge_of[t][SLOT_INDEX[(x, y)]]
                row[e] += s * sg
            d2.append(row)
        d3 = []
        for t in range(self.size):
            row = [0] * nf
            for i in range(4):
                row[self.face_of[t][i]] += (-1) ** i * self._face_sign(t, i)
            d3.append(row)
        return d1, d2, d3

    def _face_sign(self, t: int, f: int) -> int:
        rt, rf = self.face_reps[self.face_of[t][f]]
        if (rt, rf) == (t, f):
            return 1
        _, _, p = self.gluings[rt][rf]
        img = [p[x] for x in range(4) if x != rf]
        # sign of the permutation sorting img
        s = 1
        for x in range(3):
            for y in range(x + 1, 3):
                if img[x] > img[y]:
                    s = -s
        return s

    def dual_boundaries(self):
        """Dual complex: 0-cells tets, 1-cells interior faces, 2-cells interior edges.

        Returns (d1 rows per interior face over tets, d2 rows per interior edge
        over interior faces, interior face list, interior edge list).
        """
        faces = [fi for fi, (t, f) in enumerate(self.face_reps) if self.gluings[t][f] is not None]
        fidx = {fi: k for k, fi in enumerate(faces)}
        d1 = []
        for fi in faces:
            t, f = self.face_reps[fi]
            row = [0] * self.size
            row[self.gluings[t][f][0]] += 1
            row[t] -= 1
            d1.append(row)
        d2 = []
        edges = []
        for e in range(self.num_edges):
            walk = self.edge_walk(e)
            if walk is None:
                continue
            edges.append(e)
            row = [0] * len(faces)
            for (t, f) in walk:
                fi = self.face_of[t][f]
                row[fidx[fi]] += 1 if self.face_reps[fi] == (t, f) else -1
            d2.append(row)
        return d1, d2, faces, edges

    def homology(self, method: str | None = None) -> tuple[int, list[int]]:
        """H_1 as (rank, torsion).  Simplicial chains unless there are ideal
        vertices, in which case the dual complex is used."""
        if method is None:
            method = "dual" if self.is_ideal else "simplicial"
        if method == "simplicial":
            if self.is_ideal:
                raise TriangulationError("simplicial homology needs material vertices")
            d1, d2, _ = self.simplicial_boundaries()
            ne, nv = self.num_edges, self.num_vertices
            r1 = nv - abelian_invariants(d1, nv)[0] if d1 else 0
            rank2, tors = abelian_invariants(d2, ne)
            # coker(d2) = C1 / im d2 ; H1 = ker d1 / im d2 ; C1 / ker d1 is free of rank r1
            return rank2 - r1, tors
        d1, d2, faces, _ = self.dual_boundaries()
        nf = len(faces)
        r1 = self.size - abelian_invariants(d1, self.size)[0] if d1 else 0
        rank2, tors = abelian_invariants(d2, nf)
        return rank2 - r1, tors

    # ------------------------------------------------------------------ pi_1
    @cached_property
    def _dual_tree(self):
        """BFS spanning tree of the dual graph from tet 0, scanning faces in order."""
        parent = {0: None}
        tree = set()
        queue = [0]
        q = 0
        while q < len(queue):
            t = queue[q]
            q += 1
            for f in range(4):
                g = self.gluings[t][f]
                if g is None:
                    continue
                if g[0] not in parent:
                    parent[g[0]] = (t, f)
                    tree.add(self.face_of[t][f])
                    queue.append(g[0])
        if len(parent) != self.size:
            raise TriangulationError("triangulation is disconnected")
        return parent, tree

    def pi1_generators(self) -> list[int]:
        """Interior face classes outside the dual spanning tree (generator order)."""
        _, tree = self._dual_tree
        return [fi for fi, (t, f) in enumerate(self.face_reps)
                if self.gluings[t][f] is not None and fi not in tree]

    def crossing_letter(self, t: int, f: int, gen_index: dict) -> int:
        fi = self.face_of[t][f]
        g = gen_index.get(fi)
        if g is None:
            return 0
        return g if self.face_reps[fi] == (t, f) else -g

    def fundamental_group(self) -> Presentation:
        gens = self.pi1_generators()
        gidx = {fi: k + 1 for k, fi in enumerate(gens)}
        rels = []
        for e in range(self.num_edges):
            walk = self.edge_walk(e)
            if walk is None:
                continue
            w = [self.crossing_letter(t, f, gidx) for (t, f) in walk]
            rels.append(tuple(x for x in w if x))
        names = tuple(f"g{fi}" for fi in gens)
        return Presentation(names, tuple(rels))

    @cached_property
    def pi1_abelian(self):
        """(presentation, free abelian images of its generators, generator faces)."""
        P = self.fundamental_group()
        return P, tuple(tuple(v) for v in abelian_map(P).free_images()), tuple(self.pi1_generators())

    def tree_paths(self) -> list[list[tuple]]:
        """For each tet, the face crossings (t, f) along the tree path from tet 0."""
        parent, _ = self._dual_tree
        paths = [None] * self.size
        paths[0] = []
        done = {0}
        pending = [t for t in range(self.size) if t != 0]
        while pending:
            nxt = []
            for t in pending:
                pt, pf = parent[t]
                if pt in done:
                    paths[t] = paths[pt] + [(pt, pf)]
                    done.add(t)
                else:
                    nxt.append(t)
            pending = nxt
        return paths

    def generator_loops(self) -> list[list[tuple]]:
        """Closed dual loops (lists of (tet, exit face)) for the pi_1 generators."""
        paths = self.tree_paths()
        out = []
        for fi in self.pi1_abelian[2]:
            t, f = self.face_reps[fi]
            t2, f2, _ = self.gluings[t][f]
            back = []
            for a, g in reversed(paths[t2]):
                b, h, _ = self.gluings[a][g]
                back.append((b, h))
            out.append(paths[t] + [(t, f)] + back)
        return out

    # ------------------------------------------------------------------ cocycles
    def cocycle_condition_matrix(self) -> list[list[int]]:
        rows = []
        for (t, f) in self.face_reps:
            a, b, c = [x for x in range(4) if x != f]
            row = [0] * self.num_edges
            for (x, y), s in (((a, b), 1), ((b, c), 1), ((a, c), -1)):
                e, sg = self.edge_of[t][SLOT_INDEX[(x, y)]]
                row[e] += s * sg
            rows.append(row)
        return rows

    def is_cocycle(self, omega: Sequence[int]) -> bool:
        if len(omega) != self.num_edges:
            return False
        eo = self.edge_of
        for (t, f) in self.face_reps:
            a, b, c = [x for x in range(4) if x != f]
            tot = 0
            for (x, y), s in (((a, b), 1), ((b, c), 1), ((a, c), -1)):
                e, sg = eo[t][SLOT_INDEX[(x, y)]]
                tot += s * sg * omega[e]
            if tot:
                return False
        return True

    def coboundary(self, h: Sequence[int]) -> list[int]:
        """delta h on edges for a function h on vertex classes."""
        out = []
        for ec in self.edge_classes:
            t, k = ec.rep
            i, j = EDGE_SLOTS[k]
            out.append(h[self.vertex_of[t][j]] - h[self.vertex_of[t][i]])
        return out

    def lifts(self, omega: Sequence[int]) -> list[tuple]:
        """Per-tet vertex lifts with L_t(0) = 0 and L_t(v) = omega(0 -> v)."""
        out = []
        for t in range(self.size):
            out.append((0,) + tuple(self.edge_value(omega, t, 0, v) for v in (1, 2, 3)))
        return out

    def face_shifts(self, omega: Sequence[int]) -> dict:
        """shift[(t, f)] = L_t(v) - L_t'(p v) for any vertex v of the face."""
        L = self.lifts(omega)
        out = {}
        for t, row in enumerate(self.gluings):
            for f, g in enumerate(row):
                if g is None:
                    continue
                v = 0 if f != 0 else 1
                out[(t, f)] = L[t][v] - L[g[0]][g[2][v]]
        return out

    def canonical_text(self) -> str:
        return format_triangulation(self)

    def __eq__(self, other):
        return isinstance(other, Triangulation) and self.gluings == other.gluings

    def __hash__(self):
        return hash(self.gluings)

    def __repr__(self):
        return f"Triangulation({self.size} tets)"


# ---------------------------------------------------------------------- text format

def format_triangulation(T: Triangulation) -> str:
    lines = ["tri v1", f"tets {T.size}"]
    for t, row in enumerate(T.gluings):
        for f, g in enumerate(row):
            if g is None:
                lines.append(f"boundary {t} {f}")
            elif (t, f) < (g[0], g[1]):
                lines.append(f"glue {t} {f} {g[0]} {g[1]} " + "".join(map(str, g[2])))
    for c in T.ideal_vertices:
        lines.append(f"ideal {c}")
    return "\n".join(lines) + "\n"


def parse_triangulation(text: str) -> Triangulation:
    """Read the ``tri v1`` format and validate."""
    n = None
    glu: dict = {}
    boundary = set()
    ideal_claims = []
    for ln in text.splitlines():
        ln = ln.split("#", 1)[0].strip()
        if not ln:
            continue
        parts = ln.split()
        head = parts[0]
        try:
            if head == "tri":
                if parts[1:] != ["v1"]:
                    raise TriangulationError(f"unsupported format {ln!r}")
            elif head == "tets":
                n = int(parts[1])
            elif head == "glue":
                t, f, t2, f2 = map(int, parts[1:5])
                p = tuple(int(c) for c in parts[5])
                if len(p) != 4:
                    raise TriangulationError(f"bad permutation in {ln!r}")
                for key in ((t, f), (t2, f2)):
                    if key in glu:
                        raise TriangulationError(f"face {key} glued twice")
                glu[(t, f)] = (t2, f2, p)
                glu[(t2, f2)] = (t, f, perm_inverse(p))
            elif head == "boundary":
                boundary.add((int(parts[1]), int(parts[2])))
            elif head == "ideal":
                ideal_claims.append(int(parts[1]))
            else:
                raise TriangulationError(f"unrecognized line {ln!r}")
        except (IndexError, ValueError) as exc:
            if isinstance(exc, TriangulationError):
                raise
            raise TriangulationError(f"malformed line {ln!r}") from exc
    if n is None:
        raise TriangulationError("missing 'tets' line")
    rows = []
    for t in range(n):
        row = []
        for f in range(4):
            if (t, f) in glu:
                if (t, f) in boundary:
                    raise TriangulationError(f"face ({t},{f}) both glued and boundary")
                row.append(glu[(t, f)])
            elif (t, f) in boundary:
                row.append(None)
            else:
                raise TriangulationError(f"unglued face ({t},{f})")
        rows.append(row)
    for key in glu:
        if not (0 <= key[0] < n):
            raise TriangulationError(f"gluing mentions tet {key[0]} outside 0..{n - 1}")
    T = Triangulation(rows)
    if ideal_claims and sorted(ideal_claims) != T.ideal_vertices:
        raise TriangulationError(f"declared ideal vertices {sorted(ideal_claims)} but links say "
                                 f"{T.ideal_vertices}")
    return T


def load_validate(text: str) -> Triangulation:
    return parse_triangulation(text)
