"""Integral edge 1-cocycles and coboundaries."""

from __future__ import annotations

from dataclasses import dataclass

from ..exactalg.matrix import abelian_invariants, integer_kernel
from .core import Triangulation


@dataclass(frozen=True)
class CocycleSpace:
    triangulation: Triangulation
    basis: tuple  # lattice basis of Z^1
    coboundaries: tuple  # delta of each vertex class
    truncated: bool = False
    origin: tuple = ()

    @property
    def rank(self) -> int:
        """rank of Z^1 / B^1."""
        nb = len(self.coboundaries)
        rb = len(self.basis[0]) - abelian_invariants(list(self.coboundaries), len(self.basis[0]))[0] \
            if nb and self.basis else 0
        return len(self.basis) - rb


def cocycle_space(T: Triangulation, truncate_ideal: bool = True) -> CocycleSpace:
    """Z^1 and B^1 on edges.  Ideal triangulations only see the cohomology of
    the end compactification, so by default they are truncated first and the
    space is returned on the truncated triangulation."""
    if truncate_ideal and T.is_ideal:
        from .build import truncate

        T2, origin = truncate(T)
        sp = cocycle_space(T2, truncate_ideal=False)
        return CocycleSpace(T2, sp.basis, sp.coboundaries, True, tuple(origin))
    M = T.cocycle_condition_matrix()
    Z = integer_kernel(M, T.num_edges)
    B = []
    for v in range(T.num_vertices):
        h = [0] * T.num_vertices
        h[v] = 1
        B.append(tuple(T.coboundary(h)))
    return CocycleSpace(T, tuple(tuple(z) for z in Z), tuple(B))


def class_cocycle(space: CocycleSpace, T: Triangulation, alpha) -> list[int]:
    """Edge cocycle on ``space.triangulation`` for the class alpha, given in
    the pi_1 coordinates of T (the triangulation the space was built from)."""
    from .build import edge_cocycle_of_class, truncated_class

    if space.truncated:
        alpha = truncated_class(T, space.triangulation, space.origin, alpha)
    return edge_cocycle_of_class(space.triangulation, alpha, space.basis)
