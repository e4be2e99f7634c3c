"""Fibering certificates, Stallings transfer bookkeeping and the
fibered-face count."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..dualsurface.surface import DualSurface, build_dual_surface
from ..fpgroup.presentation import Presentation, format_presentation, format_word
from ..fpgroup.simplify import (generates_free_group, recognize_surface, replay,
                                simplify_presentation, transport_words)
from ..triangulation.core import Triangulation
from .cut import CutError, complement_group, cut_complex, surface_side_words

FIBERS = "Fibers"
UNKNOWN = "Unknown"


@dataclass(frozen=True)
class FiberCertificate:
    omega: tuple
    euler_characteristic: int | None
    genus: int | None
    boundary_curves: int | None
    verdict: str
    tag: str  # closed-surface-group | free-of-correct-rank | ""
    reason: str
    complement: Presentation | None = None
    log: tuple = ()
    result: Presentation | None = None
    notes: tuple = ()
    seed: int = 0

    @property
    def fibers(self) -> bool:
        return self.verdict == FIBERS

    def replays(self) -> bool:
        if self.complement is None or self.result is None:
            return True
        return format_presentation(replay(self.complement, self.log)) == \
            format_presentation(self.result)


def _unknown(omega, reason, S=None, P=None, log=(), Q=None, seed=0):
    chi = S.euler_characteristic if S is not None else None
    return FiberCertificate(tuple(omega), chi, None, None, UNKNOWN, "", reason, P, tuple(log), Q,
                            seed=seed)


def certify_surface(S: DualSurface, budget: int = 10, seed: int = 0) -> FiberCertificate:
    """Try to certify that the dual surface S is a fiber.

    ``budget`` counts simplification restarts: 70% go to the first pass,
    the remaining 30% to retries with fresh Nielsen seeds.
    """
    omega = S.omega
    if S.faces == 0:
        return _unknown(omega, "empty surface", S, seed=seed)
    try:
        C = cut_complex(S)
    except CutError as exc:
        return _unknown(omega, str(exc), S, seed=seed)
    if C.separating:
        return _unknown(omega, "separating", S, seed=seed)
    if not S.connected:
        return _unknown(omega, "disconnected surface", S, seed=seed)
    comp = S.components[0]
    chi = comp.euler_characteristic
    if C.euler_characteristic != S.triangulation.euler_characteristic() + chi:
        raise AssertionError("cut complex Euler characteristic bookkeeping failed")
    P = complement_group(C)
    first = max(1, (7 * budget) // 10)
    rng = random.Random(seed)
    attempts = [(first, seed)] + [(1, rng.randrange(1 << 30)) for _ in range(budget - first)]
    best = None
    for effort, s in attempts:
        res = simplify_presentation(P, effort=effort, seed=s)
        Q = res.presentation
        if best is None or (Q.ngens, len(Q.relators), Q.total_length()) < \
                (best[0].ngens, len(best[0].relators), best[0].total_length()):
            best = (Q, res.log, s)
        rec = recognize_surface(Q)
        if rec is None:
            continue
        kind, orientable, genus, rank = rec
        if comp.boundary_curves == 0:
            if kind == "closed" and orientable and 2 - 2 * genus == chi:
                return FiberCertificate(tuple(omega), chi, genus, 0, FIBERS,
                                        "closed-surface-group", "", P, tuple(res.log), Q,
                                        seed=s)
            continue
        if kind != "free" or rank != 1 - chi:
            continue
        notes = ["bounded criterion: connected, nonseparating, complement free of rank 1 - chi"]
        ok = True
        for side in (1, -1):
            words = transport_words(P, res.log, surface_side_words(C, side))
            if not generates_free_group(words, rank):
                ok = False
                notes.append(f"push-off {side:+d} does not generate the complement group")
                break
            notes.append(f"push-off {side:+d} generates the complement group (Stallings folding)")
        if not ok:
            return FiberCertificate(tuple(omega), chi, comp.genus, comp.boundary_curves, UNKNOWN,
                                    "", "complement free of the right rank but the surface "
                                    "does not carry it", P, tuple(res.log), Q, tuple(notes), s)
        return FiberCertificate(tuple(omega), chi, comp.genus, comp.boundary_curves, FIBERS,
                                "free-of-correct-rank", "", P, tuple(res.log), Q, tuple(notes), s)
    Q, log, s = best
    return _unknown(omega, "no surface-group or free normal form reached", S, P, log, Q, s)


def certify_fiber(T: Triangulation, omega: Sequence[int], budget: int = 10, seed: int = 0,
                  search_budget: int = 0, workers: int = 1,
                  target: int | None = None) -> FiberCertificate:
    """Certificate for the edge cocycle omega on T.

    Tries the dual surface of omega, then of its coboundary-descended
    representative, then (``search_budget`` > 0) the best witness of a
    randomized norm search stopped at ``target`` if given."""
    if not any(omega):
        raise ValueError("omega must be nonzero")
    from ..dualsurface.search import coboundary_descent, randomized_norm_search

    cert = certify_surface(build_dual_surface(T, omega), budget, seed)
    if cert.fibers:
        return cert
    om2, _ = coboundary_descent(T, omega)
    if list(om2) != list(omega):
        c2 = certify_surface(build_dual_surface(T, om2), budget, seed)
        if c2.fibers:
            return c2
    if search_budget <= 0:
        return cert
    nb = randomized_norm_search(T, [omega], search_budget, seed=seed, workers=workers,
                                targets=None if target is None else [target])[0]
    c3 = certify_surface(build_dual_surface(nb.triangulation, nb.omega), budget, seed)
    return c3 if c3.fibers else cert


def format_certificate(c: FiberCertificate, label: str = "") -> str:
    lines = ["cert v1", "class " + (label or ",".join(map(str, c.omega)))]
    lines.append(f"chi {c.euler_characteristic}")
    if c.genus is not None:
        lines.append(f"genus {c.genus} boundary {c.boundary_curves}")
    lines.append(f"verdict {c.verdict}")
    if c.tag:
        lines.append(f"tag {c.tag}")
    if c.reason:
        lines.append(f"reason {c.reason}")
    for n in c.notes:
        lines.append(f"note {n}")
    if c.complement is not None:
        lines.append(f"complement gens {c.complement.ngens} rels {len(c.complement.relators)} "
                     f"length {c.complement.total_length()}")
        lines.append(f"seed {c.seed}")
        for m in c.log:
            lines.append("move " + " ".join(map(str, m)))
    if c.result is not None:
        lines.append("result gens " + " ".join(c.result.gens))
        for r in c.result.relators:
            lines.append("result rel " + format_word(r, c.result.gens))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------- transfer

@dataclass(frozen=True)
class TransferStep:
    cover: str
    base: str
    b1_cover: int
    b1_base: int
    pullback: bool


@dataclass(frozen=True)
class TransferVerdict:
    verdict: str
    direction: str  # "iff" | "pullback" | "none"
    reason: str
    chain: tuple = ()


def stallings_transfer(cover_verdict: str, b1_cover: int, b1_base: int, pullback: bool,
                       names=("cover", "base"), chain: tuple = ()) -> TransferVerdict:
    """Push a verdict on a class of a finite cover down to the base.

    A class omega on the base fibers iff its pullback does, so a Fibers
    verdict on a verified pullback always descends.  When the Betti numbers
    agree every cover class is (rationally) a pullback, and the cover fibers
    iff the base does.
    """
    step = TransferStep(names[0], names[1], b1_cover, b1_base, pullback)
    chain = tuple(chain) + (step,)
    iff = b1_cover == b1_base
    if cover_verdict != FIBERS:
        return TransferVerdict(UNKNOWN, "iff" if iff else "none",
                               "cover verdict is not Fibers", chain)
    if pullback:
        return TransferVerdict(FIBERS, "iff" if iff else "pullback", "", chain)
    if iff:
        return TransferVerdict(FIBERS, "iff", "equal first Betti numbers", chain)
    return TransferVerdict(UNKNOWN, "none",
                           f"b1 mismatch ({b1_cover} vs {b1_base}) and class not a verified pullback",
                           chain)


def pullback_class(base_images, cover_gen_words, alpha) -> tuple:
    """Values of the base class alpha on cover generators given as words
    in base generators."""
    out = []
    for w in cover_gen_words:
        v = 0
        for x in w:
            img = base_images[abs(x) - 1]
            s = 1 if x > 0 else -1
            v += s * sum(a * b for a, b in zip(alpha, img))
        out.append(v)
    return tuple(out)


# ---------------------------------------------------------------------- faces

@dataclass(frozen=True)
class FaceCount:
    pairs: int
    faces: tuple
    excluded: tuple  # (class, reason)


def face_count_ledger(ball, classes: Sequence[tuple]) -> FaceCount:
    """Count distinct face pairs of a norm ball met by certified fibered
    classes; a class counts only if it lies in the open cone over a face."""
    faces = set()
    excluded = []
    for omega in classes:
        vals = [sum(Fraction(a) * b for a, b in zip(f.functional, omega)) for f in ball.faces]
        top = max(vals)
        if top <= 0:
            excluded.append((tuple(omega), "zero class"))
            continue
        hits = [k for k, v in enumerate(vals) if v == top]
        if len(hits) != 1:
            excluded.append((tuple(omega), "on a face boundary"))
            continue
        faces.add(hits[0])
    pairs = {tuple(sorted((k, ball.antipode(k)))) for k in faces}
    return FaceCount(len(pairs), tuple(sorted(faces)), tuple(excluded))
