"""The Whitehead tower W_n: cyclic covers of the Whitehead link exterior,
their Alexander balls, norm-one vertex classes and fibered sign classes."""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from itertools import product

from ..alexander.fox import alexander_polynomial
from ..alexander.norm import NormBall, alexander_ball
from ..dualsurface.search import randomized_norm_search
from ..dualsurface.surface import build_dual_surface
from ..exactalg.matrix import solve_integer
from ..triangulation.build import cover_of_class, cusp_images
from ..triangulation.cocycles import class_cocycle, cocycle_space
from ..triangulation.core import Triangulation, parse_triangulation
from .certify import FaceCount, certify_surface, face_count_ledger


def whitehead_fixture() -> Triangulation:
    text = resources.files("fiberfaces.data").joinpath("whitehead.tri").read_text()
    return parse_triangulation(text)


def meridian_dual(W: Triangulation) -> list[int]:
    """Class taking 1 on the meridian image of cusp 0 and 0 on cusp 1."""
    ci = cusp_images(W)
    m0, m1 = ci[0][0], ci[1][0]
    alpha = solve_integer([list(m0), list(m1)], [1, 0], len(m0))
    if alpha is None:
        raise ValueError("cusp images do not form a basis")
    return alpha


def whitehead_cover(n: int) -> Triangulation:
    W = whitehead_fixture()
    if n == 1:
        return W
    return cover_of_class(W, meridian_dual(W), n)[0]


def vertex_classes(ball: NormBall) -> list[tuple]:
    """One integral representative per antipodal pair of ball vertices
    (first nonzero coordinate positive)."""
    out = []
    for v in ball.vertices:
        if next(x for x in v if x) > 0:
            if any(x.denominator != 1 for x in map(_frac, v)):
                raise ValueError(f"ball vertex {v} is not integral")
            out.append(tuple(int(x) for x in v))
    return out


def _frac(x):
    from fractions import Fraction
    return Fraction(x)


def sign_classes(vertices) -> list[tuple]:
    b = len(vertices[0])
    out = []
    for eps in product((1, -1), repeat=len(vertices)):
        out.append(tuple(sum(e * v[i] for e, v in zip(eps, vertices)) for i in range(b)))
    return out


@dataclass
class WhiteheadReport:
    n: int
    tets: int
    truncated_tets: int
    b1: int
    polynomial: object
    ball: NormBall
    vertices: list
    vertex_bounds: list  # NormBound per vertex class
    signs: list
    sign_bounds: list
    certificates: list  # FiberCertificate per sign class
    faces: FaceCount
    notes: list = field(default_factory=list)

    @property
    def all_certified(self) -> bool:
        return all(c.fibers for c in self.certificates) and \
            all(c.euler_characteristic == -(self.n + 1) for c in self.certificates)

    @property
    def vertex_norm_one(self) -> bool:
        return all(b.bound == 1 for b in self.vertex_bounds)


def whitehead_report(n: int, budget: int = 1000, seed: int = 0, workers: int = 1,
                     cert_budget: int = 10) -> WhiteheadReport:
    """Full W_n pipeline.  Classes are written in the pi_1 coordinates of the
    ideal triangulation W_n; the norm search runs on its truncation."""
    if n < 1:
        raise ValueError("n must be >= 1")
    Wn = whitehead_cover(n)
    h = Wn.homology()
    P = Wn.fundamental_group()
    delta = alexander_polynomial(P).polynomial
    ball = alexander_ball(delta)
    verts = vertex_classes(ball)
    signs = sign_classes(verts)
    space = cocycle_space(Wn)
    Tt = space.triangulation
    classes = [class_cocycle(space, Wn, a) for a in verts + signs]
    targets = [ball.norm(a) for a in verts + signs]
    bounds = randomized_norm_search(Tt, classes, budget, seed=seed, workers=workers,
                                    targets=targets)
    vb, sb = bounds[:len(verts)], bounds[len(verts):]
    certs = []
    notes = []
    for a, nb in zip(signs, sb):
        S = build_dual_surface(nb.triangulation, nb.omega)
        c = certify_surface(S, cert_budget, seed)
        if not c.fibers:
            notes.append(f"class {a}: {c.reason}")
        certs.append(c)
    fibered = [a for a, c in zip(signs, certs) if c.fibers]
    faces = face_count_ledger(ball, fibered)
    return WhiteheadReport(n, Wn.size, Tt.size, h[0], delta, ball, verts, vb, signs, sb, certs,
                           faces, notes)


def format_whitehead_report(r: WhiteheadReport) -> str:
    lines = ["whitehead v1", f"n {r.n}", f"tets {r.tets} truncated {r.truncated_tets}",
             f"b1 {r.b1}", f"delta {r.polynomial}",
             f"ball vertices {len(r.ball.vertices)} faces {len(r.ball.faces)}"]
    for a, b in zip(r.vertices, r.vertex_bounds):
        lines.append(f"vertex {','.join(map(str, a))} alexander {r.ball.norm(a)} bound {b.bound} "
                     f"initial {b.initial} moves {len(b.trace)}")
    for a, b, c in zip(r.signs, r.sign_bounds, r.certificates):
        lines.append(f"sign {','.join(map(str, a))} alexander {r.ball.norm(a)} bound {b.bound} "
                     f"chi {c.euler_characteristic} verdict {c.verdict}")
    lines.append(f"fibered faces {len(r.faces.faces)} pairs {r.faces.pairs}")
    for x in r.notes:
        lines.append(f"note {x}")
    return "\n".join(lines) + "\n"
