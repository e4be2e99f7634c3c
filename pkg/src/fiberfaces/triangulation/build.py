"""Constructions: truncation of ideal triangulations, cyclic covers and
class bookkeeping between a triangulation and its pi_1 presentation."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ..exactalg.matrix import solve_integer
from .core import Triangulation, TriangulationError


# ---------------------------------------------------------------------- truncation

_REF = ((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1))


def _label_point(lab) -> tuple:
    kind = lab[0]
    if kind == "c":
        return tuple(Fraction(sum(v[i] for v in _REF), 4) for i in range(3))
    if kind == "f":
        vs = [_REF[x] for x in range(4) if x != lab[1]]
        return tuple(Fraction(sum(v[i] for v in vs), 3) for i in range(3))
    v, w = lab[1], lab[2]
    return tuple(Fraction(3 * _REF[v][i] + _REF[w][i], 4) for i in range(3))


def _det3(a, b, c):
    return (a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
            + a[2] * (b[0] * c[1] - b[1] * c[0]))


def _orient(labels: list) -> tuple:
    pts = [_label_point(x) for x in labels]
    d = _det3(*[[p[i] - pts[0][i] for i in range(3)] for p in pts[1:]])
    if d == 0:
        raise AssertionError("degenerate sub-tetrahedron")
    if d < 0:
        labels = [labels[0], labels[1], labels[3], labels[2]]
    return tuple(labels)


def _subtets() -> list[tuple]:
    """The 28 labelled pieces of a truncated tetrahedron, positively oriented."""
    out = []
    for k in range(4):
        a, b, d = [x for x in range(4) if x != k]
        hexagon = [("p", a, b), ("p", b, a), ("p", b, d), ("p", d, b), ("p", d, a), ("p", a, d)]
        for s in range(6):
            out.append(_orient([("c",), ("f", k), hexagon[s], hexagon[(s + 1) % 6]]))
    for v in range(4):
        others = [w for w in range(4) if w != v]
        out.append(_orient([("c",)] + [("p", v, w) for w in others]))
    return out


_SUB = _subtets()


def _map_label(lab, p):
    if lab[0] == "f":
        return ("f", p[lab[1]])
    if lab[0] == "p":
        return ("p", p[lab[1]], p[lab[2]])
    return lab


def truncate(T: Triangulation) -> tuple[Triangulation, list]:
    """Replace each ideal tetrahedron by 28 tetrahedra of a truncated one.

    Every vertex must be ideal.  Returns the new triangulation and, per new
    tet, ``(old tet, labels)``.  Cusp triangles become boundary faces.
    """
    if any(k != "ideal" for k in T.vertex_types):
        raise TriangulationError("truncate needs every vertex ideal")
    m = len(_SUB)
    local_face: dict = {}  # frozenset(labels) -> list[(sub index, face)]
    for s, labs in enumerate(_SUB):
        for f in range(4):
            key = frozenset(labs[x] for x in range(4) if x != f)
            local_face.setdefault(key, []).append((s, f))
    rows = []
    origin = []
    for t in range(T.size):
        for s, labs in enumerate(_SUB):
            origin.append((t, labs))
            row = []
            for f in range(4):
                face_labs = [labs[x] for x in range(4) if x != f]
                key = frozenset(face_labs)
                mates = [x for x in local_face[key] if x != (s, f)]
                if mates:
                    s2, f2 = mates[0]
                    t2, labs2, pmap = t, _SUB[s2], None
                elif any(x[0] == "f" for x in face_labs):
                    # face on an original face k: cross the gluing
                    k = next(x[1] for x in face_labs if x[0] == "f")
                    g = T.gluings[t][k]
                    if g is None:
                        row.append(None)
                        continue
                    t2, _, pmap = g
                    key2 = frozenset(_map_label(x, pmap) for x in face_labs)
                    (s2, f2), = local_face[key2]
                    labs2 = _SUB[s2]
                else:
                    row.append(None)  # cusp triangle
                    continue
                idx2 = {lab: i for i, lab in enumerate(labs2)}
                perm = [0] * 4
                for x in range(4):
                    if x == f:
                        perm[x] = f2
                    else:
                        lab = labs[x] if pmap is None else _map_label(labs[x], pmap)
                        perm[x] = idx2[lab]
                row.append((t2 * m + s2, f2, tuple(perm)))
            rows.append(row)
    return Triangulation(rows), origin


def truncated_class(T: Triangulation, T2: Triangulation, origin, alpha) -> tuple:
    """Coordinates on the truncation T2 of the class alpha given on T.

    A sub-tet face lying on original face k of tet t crosses with the shift
    of (t, k); all other interior faces have shift 0.
    """
    s = dual_cochain_of_class(T, alpha)
    shift = {}
    for t2, row in enumerate(T2.gluings):
        t, labs = origin[t2]
        for f, g in enumerate(row):
            if g is None:
                continue
            face_labs = [labs[x] for x in range(4) if x != f]
            k = [x[1] for x in face_labs if x[0] == "f"]
            if k and ("c",) not in face_labs:
                shift[(t2, f)] = s[(t, k[0])]
            else:
                shift[(t2, f)] = 0
    return class_of_cochain(T2, shift)


# ---------------------------------------------------------------------- classes

def pi1_class_images(T: Triangulation):
    """Abelian map of the pi_1 presentation of T: per generator the free
    coordinates, plus the generator face list.  H^1 classes are written in
    the dual of these coordinates throughout."""
    return T.pi1_abelian


def dual_cochain_of_class(T: Triangulation, alpha: Sequence[int]) -> dict:
    """Face-crossing cochain s[(t, f)] realising the class alpha (dual coords)."""
    _, images, gens = pi1_class_images(T)
    val = {fi: sum(a * b for a, b in zip(alpha, img)) for fi, img in zip(gens, images)}
    out = {}
    for t, row in enumerate(T.gluings):
        for f, g in enumerate(row):
            if g is None:
                continue
            fi = T.face_of[t][f]
            v = val.get(fi, 0)
            out[(t, f)] = v if T.face_reps[fi] == (t, f) else -v
    return out


def class_of_cochain(T: Triangulation, shift: dict, b: int | None = None) -> tuple:
    """Dual coordinates of the class of a face-crossing cocycle."""
    _, images, gens = pi1_class_images(T)
    paths = T.tree_paths()
    pot = [sum(shift[c] for c in paths[t]) for t in range(T.size)]
    rhs = []
    for fi in gens:
        t, f = T.face_reps[fi]
        rhs.append(pot[t] + shift[(t, f)] - pot[T.gluings[t][f][0]])
    nb = len(images[0]) if images else (b or 0)
    sol = solve_integer([list(r) for r in images], rhs, nb)
    if sol is None:
        raise TriangulationError("cochain is not a cocycle or class is not integral")
    return tuple(sol)


def class_of_edge_cocycle(T: Triangulation, omega: Sequence[int]) -> tuple:
    return class_of_cochain(T, T.face_shifts(omega))


def edge_cocycle_of_class(T: Triangulation, alpha: Sequence[int], basis=None) -> list[int]:
    """An edge cocycle representing alpha (needs rank Z^1/B^1 = b_1)."""
    from .cocycles import cocycle_space

    if basis is None:
        basis = cocycle_space(T).basis
    cls = [class_of_edge_cocycle(T, z) for z in basis]
    b = len(alpha)
    A = [[cls[j][i] for j in range(len(cls))] for i in range(b)]
    c = solve_integer(A, list(alpha), len(cls))
    if c is None:
        raise TriangulationError("class not realised by edge cocycles here")
    return [sum(cj * z[e] for cj, z in zip(c, basis)) for e in range(T.num_edges)]


# ---------------------------------------------------------------------- covers

def cyclic_cover(T: Triangulation, shift, n: int) -> tuple[Triangulation, list]:
    """n-fold cyclic cover from an integer face-crossing cocycle (dict keyed
    by (t, f)) or an edge cocycle (sequence, converted via vertex lifts).

    Sheet k of tet t gets index ``k * T.size + t``.  Face (t, f) on sheet k is glued to (t', f') on
    sheet k + shift mod n.  Returns (cover, origin list of (t, k)).
    """
    if n < 1:
        raise ValueError("n must be positive")
    if not isinstance(shift, dict):
        if not T.is_cocycle(shift):
            raise TriangulationError("not a cocycle")
        shift = T.face_shifts(shift)
    _check_involution(shift, T)
    N = T.size
    rows = []
    origin = []
    for k in range(n):
        for t in range(N):
            origin.append((t, k))
            row = []
            for f, g in enumerate(T.gluings[t]):
                if g is None:
                    row.append(None)
                    continue
                k2 = (k + shift[(t, f)]) % n
                row.append((k2 * N + g[0], g[1], g[2]))
            rows.append(row)
    C = Triangulation(rows)
    # connectedness is the caller's concern; check it here since covers of
    # a non-surjective class fall apart
    C._dual_tree
    return C, origin


def cover_of_class(T: Triangulation, alpha: Sequence[int], n: int):
    return cyclic_cover(T, dual_cochain_of_class(T, alpha), n)


def _check_involution(shift: dict, T: Triangulation):
    for (t, f), v in shift.items():
        t2, f2, _ = T.gluings[t][f]
        if shift[(t2, f2)] != -v:
            raise TriangulationError("shift cochain not antisymmetric")


def cusp_images(T: Triangulation) -> dict:
    """For each ideal vertex class, generators of the image of H_1 of its
    link in the free part of H_1(M) (coordinates of the pi_1 abelian map).

    Loops are fundamental cycles of the graph of vertex corners (t, v),
    adjacent across faces f != v; each loop is read off as face crossings.
    """
    _, images, gens = pi1_class_images(T)
    gidx = {fi: k for k, fi in enumerate(gens)}
    b = len(images[0]) if images else 0

    def crossing(t, f):
        fi = T.face_of[t][f]
        k = gidx.get(fi)
        if k is None:
            return [0] * b
        s = 1 if T.face_reps[fi] == (t, f) else -1
        return [s * x for x in images[k]]

    out = {}
    for c in T.ideal_vertices:
        corners = [(t, v) for t in range(T.size) for v in range(4) if T.vertex_of[t][v] == c]
        root = corners[0]
        pot = {root: [0] * b}
        queue = [root]
        loops = []
        seen_edges = set()
        q = 0
        while q < len(queue):
            t, v = queue[q]
            q += 1
            for f in range(4):
                if f == v or T.gluings[t][f] is None:
                    continue
                t2, f2, p = T.gluings[t][f]
                nxt = (t2, p[v])
                key = min((t, v, f), (t2, p[v], f2))
                if key in seen_edges:
                    continue
                seen_edges.add(key)
                step = crossing(t, f)
                val = [a + s for a, s in zip(pot[(t, v)], step)]
                if nxt not in pot:
                    pot[nxt] = val
                    queue.append(nxt)
                else:
                    loops.append(tuple(a - x for a, x in zip(val, pot[nxt])))
        out[c] = _lattice_basis([l for l in loops if any(l)], b)
    return out


def _lattice_basis(vectors, b):
    from ..exactalg.matrix import smith_normal_form

    if not vectors:
        return []
    # Hermite-style reduction through SNF: the row space basis is rows of D V^-1
    snf = smith_normal_form([list(v) for v in vectors], b)
    # rows of U A = D V^{-1}; nonzero rows give a basis of the row lattice
    U = snf.U.tolist()
    rows = [[sum(U[i][k] * vectors[k][j] for k in range(len(vectors))) for j in range(b)]
            for i in range(len(vectors))]
    return [tuple(r) for r in rows if any(r)]
