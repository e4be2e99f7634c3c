"""Group-level pipelines for the base orbifold group B: the cover chain
B <- C <- X(Q), X(Qbar) <- M, and the degree-8 cover N."""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

from .alexander.fox import AlexanderData, alexander_polynomial
from .alexander.norm import NormBall, alexander_ball, cube_axis_check, face_pairs
from .fpgroup.cosets import (CosetTable, enumerate_cyclic_covers, enumerate_regular_covers,
                             induced_table, intersect_subgroups, parse_coset_table,
                             reidemeister_schreier)
from .fpgroup.presentation import Presentation, abelianization, parse_presentation
from .fpgroup.simplify import simplify_presentation


def _data(name: str) -> str:
    return resources.files("fiberfaces.data").joinpath(name).read_text()


def base_presentation() -> Presentation:
    return parse_presentation(_data("B.pres"))


def n_table(B: Presentation | None = None) -> CosetTable:
    B = B or base_presentation()
    return parse_coset_table(B, _data("N.perm"))


@dataclass
class ChainReport:
    base: tuple  # H_1(B)
    regular: list  # (table, H_1) for (Z/2)^2 quotients of B
    cover_C: Presentation
    cyclic: list  # (table over C, H_1) for Z/4 quotients of C
    selected: list  # the two covers with H_1 = Z + Z/28 + Z/28
    tables: list  # their tables as subgroups of B (index 16)
    table_M: CosetTable
    group_M: Presentation
    homology_M: tuple


def cover_chain(B: Presentation | None = None) -> ChainReport:
    B = B or base_presentation()
    hB = abelianization(B)
    regular = enumerate_regular_covers(B, [2, 2])
    if len(regular) != 1:
        raise AssertionError(f"expected a unique (Z/2)^2 cover, found {len(regular)}")
    TC = regular[0][0]
    C = reidemeister_schreier(B, TC)
    cyc = enumerate_cyclic_covers(C, 4)
    sel = [(T, h) for T, h in cyc if h == (1, [28, 28])]
    tables = [induced_table(TC, T) for T, _ in sel]
    TM = intersect_subgroups(*tables) if len(tables) == 2 else None
    M = reidemeister_schreier(B, TM) if TM is not None else None
    hM = abelianization(M) if M is not None else None
    return ChainReport(hB, regular, C, cyc, sel, tables, TM, M, hM)


@dataclass
class AlexanderReport:
    data: AlexanderData
    ball: NormBall
    failing: list  # face indices failing the +-1 obstruction
    passing: list
    pairs: list
    failing_axis: bool | None  # barycenter line of the failing pair is a cube axis


def alexander_report(P: Presentation, simplify: bool = True, seed: int = 0) -> AlexanderReport:
    if simplify:
        P = simplify_presentation(P, seed=seed).presentation
    data = alexander_polynomial(P)
    ball = alexander_ball(data.polynomial)
    failing = [f.index for f in ball.faces if not f.passes]
    passing = [f.index for f in ball.faces if f.passes]
    axis = None
    if failing and len(ball.faces) == 6:
        axis = cube_axis_check(ball, failing[0])
    return AlexanderReport(data, ball, failing, passing, face_pairs(ball), axis)


def n_cover(B: Presentation | None = None) -> Presentation:
    B = B or base_presentation()
    return reidemeister_schreier(B, n_table(B))
