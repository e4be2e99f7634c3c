"""Alexander norm, its unit ball with per-face coefficients, the +-1
fibering obstruction and the norm sandwich against surface upper bounds."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Mapping, Sequence

from ..exactalg.laurent import LaurentPoly
from ..exactalg.matrix import determinant, smith_normal_form
from ..exactalg.polytope import (LatticePolytope, _inverse, dual_norm_ball, newton_polytope,
                                 rank)


def alexander_norm(delta: LaurentPoly, omega: Sequence[int]) -> int:
    """max over Newton vertices g, g' of omega(g - g')."""
    if len(omega) != len(delta.vars):
        raise ValueError(f"class has {len(omega)} coordinates, need {len(delta.vars)}")
    if not delta.terms:
        raise ValueError("zero polynomial")
    vals = [sum(a * b for a, b in zip(omega, e)) for e in delta.terms]
    return max(vals) - min(vals)


@dataclass(frozen=True)
class FaceData:
    index: int
    functional: tuple  # the face is {w in ball : w . functional = 1}
    vertices: tuple  # ball vertex indices
    barycenter: tuple
    newton_vertex: tuple
    coefficient: int

    @property
    def passes(self) -> bool:
        return abs(self.coefficient) == 1


@dataclass(frozen=True)
class NormBall:
    polynomial: LaurentPoly
    newton: LatticePolytope
    ball: LatticePolytope | None
    faces: tuple
    lineality: tuple

    @property
    def vertices(self):
        return self.ball.vertices if self.ball is not None else ()

    def norm(self, omega: Sequence[int]) -> int:
        return alexander_norm(self.polynomial, omega)

    def antipode(self, face: int) -> int:
        f = self.faces[face]
        neg = tuple(-x for x in f.functional)
        return next(g.index for g in self.faces if g.functional == neg)


def alexander_ball(delta: LaurentPoly) -> NormBall:
    """Unit ball of the Alexander norm; each top face is labelled with the
    coefficient of the Newton vertex that functionals in its cone maximize."""
    if not delta.terms:
        raise ValueError("zero polynomial")
    P = newton_polytope(delta)
    data = dual_norm_ball(P)
    faces = []
    if data.ball is not None and data.ball.faces and not data.lineality:
        for k, (f, u) in enumerate(zip(data.ball.faces, data.dual_vertex)):
            bc = f.barycenter
            scores = [(sum(Fraction(a) * b for a, b in zip(bc, g)), g) for g in P.vertices]
            top = max(s for s, _ in scores)
            winners = [g for s, g in scores if s == top]
            if len(winners) != 1:
                raise AssertionError("face barycenter is not generic")
            g = winners[0]
            faces.append(FaceData(k, tuple(u), f.vertices, tuple(bc), tuple(g),
                                  delta.coefficient(g)))
    return NormBall(delta, P, data.ball, tuple(faces), data.lineality)


def fibering_obstruction(ball: NormBall, face: int) -> str:
    """'pass' iff the face coefficient is +-1 (necessary for fibering)."""
    if not 0 <= face < len(ball.faces):
        raise IndexError(f"face {face} out of range (ball has {len(ball.faces)} faces)")
    return "pass" if ball.faces[face].passes else "fail"


@dataclass(frozen=True)
class SandwichVerdict:
    omega: tuple
    alexander: int
    upper: int
    status: str  # certified | inconclusive
    reason: str = ""


def norm_sandwich(ball: NormBall, upper_bounds: Mapping[tuple, int]) -> dict:
    """Compare Thurston-norm upper bounds with the Alexander lower bound.

    Needs b >= 2 (the lower bound ||.||_A <= ||.||_T).  Returns per-class
    verdicts and, for each face, whether every vertex ray of the face carries
    a certified class.
    """
    b = len(ball.polynomial.vars)
    classes = {}
    for omega, ub in upper_bounds.items():
        omega = tuple(omega)
        a = ball.norm(omega)
        if b < 2:
            classes[omega] = SandwichVerdict(omega, a, ub, "inconclusive", "b1 < 2: no lower bound")
        elif ub == a:
            classes[omega] = SandwichVerdict(omega, a, ub, "certified")
        else:
            classes[omega] = SandwichVerdict(omega, a, ub, "inconclusive",
                                             f"upper bound {ub} exceeds Alexander norm {a}")
    faces = {}
    for f in ball.faces:
        ok = True
        for vi in f.vertices:
            v = ball.vertices[vi]
            hit = any(c.status == "certified" and _same_ray(c.omega, v) for c in classes.values())
            ok = ok and hit
        faces[f.index] = ok
    return {"classes": classes, "faces": faces}


def _same_ray(omega: Sequence[int], v: Sequence[Fraction]) -> bool:
    lam = None
    for a, x in zip(omega, v):
        if x == 0:
            if a != 0:
                return False
            continue
        r = Fraction(a) / x
        if r <= 0 or (lam is not None and r != lam):
            return False
        lam = r
    return lam is not None


def face_pairs(ball: NormBall) -> list[tuple[int, int]]:
    out = []
    for f in ball.faces:
        g = ball.antipode(f.index)
        if f.index < g:
            out.append((f.index, g))
    return out


def cube_axis_check(ball: NormBall, face: int) -> bool:
    """For a combinatorial cube: is the barycenter of ``face`` parallel to
    the edge direction joining it to the antipodal face?"""
    f = ball.faces[face]
    opp = ball.faces[ball.antipode(face)]
    fv = set(f.vertices)
    ov = set(opp.vertices)
    V = ball.vertices
    dirs = set()
    for i in fv:
        for j in ov:
            # an edge of the cube joins i and j iff they share two faces
            shared = sum(1 for g in ball.faces if i in g.vertices and j in g.vertices)
            if shared == 2:
                d = tuple(a - b for a, b in zip(V[i], V[j]))
                dirs.add(d)
    if len(dirs) != 1:
        return False
    d, = dirs
    return rank([list(d), list(f.barycenter)]) == 1


def equivalent_up_to_basis(p: LaurentPoly, q: LaurentPoly):
    """Find an integral unimodular monomial substitution A with
    p(x^A) = unit * q; returns A (rows = images of p's variables) or None."""
    b = len(p.vars)
    if len(q.vars) != b or len(p) != len(q):
        return None
    Vp = list(newton_polytope(p).vertices)
    Vq = list(newton_polytope(q).vertices)
    if len(Vp) != len(Vq):
        return None
    # b affinely independent vertices of p relative to Vp[0]
    v0 = Vp[0]
    chosen = []
    for v in Vp[1:]:
        cand = chosen + [[x - y for x, y in zip(v, v0)]]
        if rank(cand) == len(cand):
            chosen = cand
        if len(chosen) == b:
            break
    if len(chosen) < b:
        return _low_rank_match(p, q, Vp, Vq, chosen)
    Einv = _inverse([[Fraction(x) for x in r] for r in chosen])
    target = q.canonical()
    for w0 in Vq:
        others = [w for w in Vq if w != w0]
        for ws in permutations(others, b):
            W = [[Fraction(x - y) for x, y in zip(w, w0)] for w in ws]
            A = [[sum(Einv[i][k] * W[k][j] for k in range(b)) for j in range(b)] for i in range(b)]
            if any(x.denominator != 1 for r in A for x in r):
                continue
            A = [[int(x) for x in r] for r in A]
            if abs(determinant(A)) != 1:
                continue
            if p.substitute(A, q.vars).canonical() == target:
                return A
    return None


def _unimodular_inverse(M):
    inv = _inverse([[Fraction(x) for x in r] for r in M])
    return [[int(x) for x in r] for r in inv]


def _low_rank_match(p: LaurentPoly, q: LaurentPoly, Vp, Vq, chosen):
    """Newton polytope of dimension k < b: solve E A = W for unimodular A,
    where E holds k independent edge directions of p and W candidate images
    among differences of q's vertices.  Rows k.. of V^-1 A are free and are
    filled in to make A unimodular."""
    b = len(p.vars)
    k = len(chosen)
    target = q.canonical()
    ident = [[int(i == j) for j in range(b)] for i in range(b)]
    if k == 0:
        return ident if p.substitute(ident, q.vars).canonical() == target else None
    S = smith_normal_form(chosen, b)
    U, V = S.U.tolist(), S.V.tolist()
    d = S.diagonal
    for w0 in Vq:
        others = [w for w in Vq if w != w0]
        for ws in permutations(others, k):
            W = [[x - y for x, y in zip(w, w0)] for w in ws]
            UW = [[sum(U[i][m] * W[m][j] for m in range(k)) for j in range(b)] for i in range(k)]
            if any(x % d[i] for i in range(k) for x in UW[i]):
                continue
            top = [[x // d[i] for x in UW[i]] for i in range(k)]
            S2 = smith_normal_form(top, b)
            if S2.diagonal != [1] * k:
                continue
            U2i = _unimodular_inverse(S2.U.tolist())
            V2i = _unimodular_inverse(S2.V.tolist())
            blk = [[U2i[i][j] if i < k and j < k else int(i == j and i >= k) for j in range(b)]
                   for i in range(b)]
            Y = [[sum(blk[i][m] * V2i[m][j] for m in range(b)) for j in range(b)] for i in range(b)]
            A = [[sum(V[i][m] * Y[m][j] for m in range(b)) for j in range(b)] for i in range(b)]
            if p.substitute(A, q.vars).canonical() == target:
                return A
    return None


def format_ball_report(ball: NormBall, basis_note: str = "") -> str:
    lines = ["ball v1", "vars " + " ".join(ball.polynomial.vars)]
    if basis_note:
        lines.append("# " + basis_note)
    if ball.lineality:
        lines.append("lineality " + " ; ".join(" ".join(map(str, v)) for v in ball.lineality))
    for i, v in enumerate(ball.vertices):
        lines.append(f"vertex {i} " + " ".join(str(x) for x in v))
    for f in ball.faces:
        lines.append(f"face {f.index} functional " + " ".join(map(str, f.functional))
                     + " vertices " + ",".join(map(str, f.vertices))
                     + f" coefficient {f.coefficient} obstruction {'pass' if f.passes else 'fail'}")
    return "\n".join(lines) + "\n"
