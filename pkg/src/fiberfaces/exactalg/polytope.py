"""Exact rational convex hulls and polar duals in low dimension.

Facets are found with the double-description method on the cone of valid
inequalities {(a, b) : a.v <= b for all input points v}; its extreme rays
are exactly the facet inequalities of a full-dimensional hull.  All
arithmetic is over integers and Fractions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

MAX_DIM = 6


class DegenerateHullError(ValueError):
    def __init__(self, dim: int, ambient: int):
        super().__init__(f"points span an affine subspace of dimension {dim} < {ambient}")
        self.dim = dim
        self.ambient = ambient


def _vec(v) -> tuple:
    return tuple(x if isinstance(x, Fraction) else Fraction(x) for x in v)


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _primitive(v: Sequence[Fraction]) -> tuple:
    """Scale a rational vector to a primitive integer vector (same direction)."""
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return tuple(x // g for x in ints) if g else tuple(ints)


def row_reduce(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [list(map(Fraction, r)) for r in rows]
    pivots = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(rows) -> int:
    if not rows:
        return 0
    return len(row_reduce(rows)[1])


def nullspace(rows: list[list], n: int) -> list[tuple]:
    """Basis of {x : rows . x = 0} as primitive integer vectors."""
    if not rows:
        return [tuple(int(i == j) for j in range(n)) for i in range(n)]
    red, piv = row_reduce(rows)
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, p in zip(red, piv):
            v[p] = -row[f]
        basis.append(_primitive(v))
    return basis


def affine_dimension(points) -> int:
    pts = [_vec(p) for p in points]
    if not pts:
        return -1
    p0 = pts[0]
    return rank([[a - b for a, b in zip(p, p0)] for p in pts[1:]])


@dataclass(frozen=True)
class Face:
    normal: tuple  # primitive integer outer normal a; face = {x : a.x = offset}
    offset: Fraction
    vertices: tuple  # indices into the owning polytope's vertex list
    barycenter: tuple


@dataclass(frozen=True)
class LatticePolytope:
    """Polytope given by its extreme points in canonical (lexicographic) order."""

    dim: int
    vertices: tuple
    faces: tuple = field(default=(), compare=False)

    @property
    def affine_dim(self) -> int:
        return affine_dimension(self.vertices)

    def support(self, w) -> Fraction:
        return max(_dot(w, v) for v in self.vertices)

    def canonical_text(self) -> str:
        lines = [f"polytope dim {self.dim} vertices {len(self.vertices)}"]
        lines += ["vertex " + " ".join(str(x) for x in v) for v in self.vertices]
        for f in self.faces:
            lines.append("face " + " ".join(str(x) for x in f.normal) + f" <= {f.offset} : "
                         + " ".join(str(i) for i in f.vertices))
        return "\n".join(lines) + "\n"


def _initial_simplex(pts: list[tuple], d: int) -> list[int]:
    chosen = [0]
    diffs: list[list[Fraction]] = []
    for i in range(1, len(pts)):
        cand = diffs + [[a - b for a, b in zip(pts[i], pts[0])]]
        if rank(cand) == len(cand):
            diffs = cand
            chosen.append(i)
            if len(chosen) == d + 1:
                break
    return chosen


def _facets_dd(pts: list[tuple], d: int) -> list[tuple[tuple, Fraction]]:
    """Facet inequalities a.x <= b of the hull of full-dimensional points."""
    # constraint for point v on y = (a_1..a_d, b): b - a.v >= 0; integerize rows
    def constraint(v):
        den = 1
        for x in v:
            den = den * x.denominator // gcd(den, x.denominator)
        return tuple([-int(x * den) for x in v] + [den])

    rows = [constraint(v) for v in pts]
    init = _initial_simplex(pts, d)
    # extreme rays of the simplicial cone: columns of the inverse of the init rows
    A = [list(map(Fraction, rows[i])) for i in init]
    n = d + 1
    inv_rows = []
    for k in range(n):
        # solve A y = e_k
        aug = [A[i] + [Fraction(int(i == k))] for i in range(n)]
        red, piv = row_reduce(aug)
        inv_rows.append(_primitive([red[i][n] for i in range(n)]))
    rays = [tuple(r) for r in inv_rows]

    def zero_set(r):
        return frozenset(i for i, row in enumerate(rows) if _dot(row, r) == 0)

    added = list(init)
    zsets = {}
    for r in rays:
        zsets[r] = frozenset(i for i in added if _dot(rows[i], r) == 0)
    for idx in range(len(rows)):
        if idx in init:
            continue
        row = rows[idx]
        vals = {r: _dot(row, r) for r in rays}
        pos = [r for r in rays if vals[r] > 0]
        neg = [r for r in rays if vals[r] < 0]
        zero = [r for r in rays if vals[r] == 0]
        new = pos + zero
        if neg:
            for rp in pos:
                for rn in neg:
                    common = zsets[rp] & zsets[rn]
                    if len(common) < n - 2:
                        continue
                    # combinatorial adjacency: no third ray's zero set contains common
                    if any(r is not rp and r is not rn and common <= zsets[r] for r in rays):
                        continue
                    vp, vn = vals[rp], vals[rn]
                    comb = tuple(vp * b - vn * a for a, b in zip(rp, rn))
                    comb = _primitive(comb)
                    new.append(comb)
                    zsets[comb] = common
        added.append(idx)
        for r in new:
            if r in zsets:
                zsets[r] = zsets[r] | ({idx} if _dot(row, r) == 0 else frozenset())
        rays = list(dict.fromkeys(new))
    facets = []
    for r in rays:
        a, b = r[:d], r[d]
        if any(a):
            facets.append((tuple(a), Fraction(b)))
    return facets


def convex_hull(points, allow_degenerate: bool = False) -> LatticePolytope:
    """Exact hull of rational points in dimension <= 6.

    Full-dimensional input gets complete face data.  Affinely degenerate
    input raises :class:`DegenerateHullError` unless ``allow_degenerate``,
    in which case only the vertex list is computed (inside the affine hull).
    """
    pts = sorted(set(_vec(p) for p in points))
    if not pts:
        raise ValueError("empty point set")
    d = len(pts[0])
    if d > MAX_DIM:
        raise ValueError(f"dimension {d} exceeds supported maximum {MAX_DIM}")
    adim = affine_dimension(pts)
    if adim < d:
        if not allow_degenerate:
            raise DegenerateHullError(adim, d)
        return LatticePolytope(d, tuple(_canon(v) for v in _degenerate_vertices(pts, adim)))
    facets = _facets_dd(pts, d)
    # a point is extreme iff its tight facet normals span R^d
    tight = {}
    for p in pts:
        t = [i for i, (a, b) in enumerate(facets) if _dot(a, p) == b]
        if len(t) >= d and rank([list(facets[i][0]) for i in t]) == d:
            tight[p] = t
    verts = sorted(tight)
    index = {v: k for k, v in enumerate(verts)}
    faces = []
    for i, (a, b) in enumerate(facets):
        vs = tuple(sorted(index[v] for v in verts if i in tight[v]))
        bary = tuple(sum(verts[k][j] for k in vs) / len(vs) for j in range(d))
        faces.append(Face(a, b, vs, tuple(_canon_q(x) for x in bary)))
    faces.sort(key=lambda f: (f.normal, f.offset))
    return LatticePolytope(d, tuple(_canon(v) for v in verts), tuple(faces))


def _canon_q(x: Fraction):
    return int(x) if x.denominator == 1 else x


def _canon(v) -> tuple:
    return tuple(_canon_q(Fraction(x)) for x in v)


def _degenerate_vertices(pts: list[tuple], adim: int) -> list[tuple]:
    if adim <= 0:
        return [pts[0]]
    p0 = pts[0]
    red, _ = row_reduce([[a - b for a, b in zip(p, p0)] for p in pts[1:]])
    basis = red  # rows spanning the direction space
    # coordinates w.r.t. basis via pivot columns of the reduced echelon form
    _, piv = row_reduce(basis)
    coords = [tuple(p[c] - p0[c] for c in piv) for p in pts]
    sub = convex_hull(coords)
    keep = set(tuple(Fraction(x) for x in v) for v in sub.vertices)
    return sorted(p for p, c in zip(pts, coords) if c in keep)


def newton_polytope(p) -> LatticePolytope:
    """Convex hull of the exponent vectors of a nonzero Laurent polynomial."""
    if not p.terms:
        raise ValueError("zero polynomial has no Newton polytope")
    return convex_hull(list(p.terms), allow_degenerate=True)


@dataclass(frozen=True)
class NormBallData:
    """Unit ball {w : max_{u,v in P} w.(u - v) <= 1} with its lineality space.

    ``ball`` lives in the span of the difference body; directions in
    ``lineality`` have norm zero.  ``dual_vertex`` maps each face of the
    ball to the vertex of the difference body it is polar to.
    """

    ball: LatticePolytope | None
    lineality: tuple
    dual_vertex: tuple


def dual_norm_ball(P: LatticePolytope) -> NormBallData:
    d = P.dim
    diffs = sorted(set(tuple(Fraction(a) - Fraction(b) for a, b in zip(u, v))
                       for u in P.vertices for v in P.vertices))
    span_rank = rank([list(x) for x in diffs if any(x)]) if len(diffs) > 1 else 0
    lineality = tuple(nullspace([list(x) for x in diffs if any(x)], d)) if span_rank else \
        tuple(tuple(int(i == j) for j in range(d)) for i in range(d))
    if span_rank == 0:
        return NormBallData(None, lineality, ())
    if span_rank == d:
        D = convex_hull(diffs)
        verts = [tuple(Fraction(x) / f.offset for x in f.normal) for f in D.faces]
        ball = convex_hull(verts)
        # each ball face is {w : w.u = 1} for a vertex u of D
        dual = []
        for face in ball.faces:
            u = tuple(Fraction(x) / face.offset for x in face.normal)
            dual.append(_canon(u))
        return NormBallData(ball, (), tuple(dual))
    # degenerate: polar inside span(D), expressed by vectors in that span
    basis = [list(map(Fraction, r)) for r in row_reduce([list(x) for x in diffs if any(x)])[0]]
    k = len(basis)
    gram = [[_dot(a, b) for b in basis] for a in basis]

    def coords(x):  # solve gram c = basis . x  (x in span)
        rhs = [_dot(b, x) for b in basis]
        aug = [gram[i] + [rhs[i]] for i in range(k)]
        red, _ = row_reduce(aug)
        return tuple(red[i][k] for i in range(k))

    sub = [coords(x) for x in diffs]
    Dk = convex_hull(sub)
    # functional with values w.(basis_i) = c_i corresponds to w = sum g^{-1} c
    inv = _inverse(gram)
    ball_pts = []
    for f in Dk.faces:
        fn = [Fraction(x) / f.offset for x in f.normal]
        # w = sum_i t_i basis_i with w.x = fn.c for x = sum c_j basis_j  =>  G t = fn
        t = [sum(inv[i][j] * fn[j] for j in range(k)) for i in range(k)]
        ball_pts.append(tuple(sum(t[i] * basis[i][j] for i in range(k)) for j in range(d)))
    ball = convex_hull(ball_pts, allow_degenerate=True)
    return NormBallData(ball, lineality, ())


def _inverse(m: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(m)
    aug = [list(m[i]) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    red, _ = row_reduce(aug)
    return [row[n:] for row in red]


def face_lattice_signature(P: LatticePolytope) -> tuple:
    """Combinatorial type summary (vertex count, sorted facet sizes, and the
    facet-vertex incidence up to relabeling by degree sequence)."""
    sizes = sorted(len(f.vertices) for f in P.faces)
    deg = [0] * len(P.vertices)
    for f in P.faces:
        for i in f.vertices:
            deg[i] += 1
    return (len(P.vertices), len(P.faces), tuple(sizes), tuple(sorted(deg)))
