"""Coset tables given by permutation actions, Reidemeister-Schreier and covers.

Cosets are numbered 0..d-1 internally (1..d in text), the base coset is 0
and the action is on the right: coset ``i`` times word ``w`` applies the
letters of ``w`` left to right.
"""

from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .presentation import (Presentation, PresentationError, abelian_map, abelianization,
                           format_word)


class CosetTableError(ValueError):
    pass


@dataclass(frozen=True)
class CosetTable:
    """Transitive right action of the generators on {0..d-1}.

    ``perms[j][i]`` is the image of coset i under generator j+1.
    """

    degree: int
    perms: tuple

    def __post_init__(self):
        inv = []
        for p in self.perms:
            if sorted(p) != list(range(self.degree)):
                raise CosetTableError("generator image is not a permutation")
            q = [0] * self.degree
            for i, j in enumerate(p):
                q[j] = i
            inv.append(tuple(q))
        object.__setattr__(self, "_inv", tuple(inv))

    def act(self, i: int, x: int) -> int:
        return self.perms[x - 1][i] if x > 0 else self._inv[-x - 1][i]

    def act_word(self, i: int, w: Sequence[int]) -> int:
        for x in w:
            i = self.perms[x - 1][i] if x > 0 else self._inv[-x - 1][i]
        return i

    @property
    def ngens(self) -> int:
        return len(self.perms)

    def orbits(self) -> list[list[int]]:
        seen = [False] * self.degree
        out = []
        for s in range(self.degree):
            if seen[s]:
                continue
            orb, stack = [], [s]
            seen[s] = True
            while stack:
                i = stack.pop()
                orb.append(i)
                for p in self.perms + self._inv:
                    j = p[i]
                    if not seen[j]:
                        seen[j] = True
                        stack.append(j)
            out.append(sorted(orb))
        return out

    def standardized(self) -> "CosetTable":
        """Renumber cosets in BFS order from 0 (generator order, x before X).

        Two tables describe the same subgroup iff their standardized forms
        are equal.
        """
        order = [0]
        label = {0: 0}
        q = 0
        while q < len(order):
            i = order[q]
            q += 1
            for j in range(self.ngens):
                for x in (j + 1, -(j + 1)):
                    k = self.act(i, x)
                    if k not in label:
                        label[k] = len(order)
                        order.append(k)
        perms = []
        for p in self.perms:
            newp = [0] * self.degree
            for old, new in label.items():
                newp[new] = label[p[old]]
            perms.append(tuple(newp))
        return CosetTable(self.degree, tuple(perms))

    def key(self) -> tuple:
        return self.standardized().perms

    def contains(self, w: Sequence[int]) -> bool:
        """Is the word w in the subgroup (stabilizer of coset 0)?"""
        return self.act_word(0, w) == 0


def _check_table(P: Presentation, T: CosetTable):
    if T.ngens != P.ngens:
        raise CosetTableError(f"table has {T.ngens} generators, presentation has {P.ngens}")
    for r in P.relators:
        for i in range(T.degree):
            if T.act_word(i, r) != i:
                raise CosetTableError(f"relator {format_word(r, P.gens)} not satisfied "
                                      f"(coset {i + 1} moves to {T.act_word(i, r) + 1})")
    orbs = T.orbits()
    if len(orbs) > 1:
        shown = "; ".join("{" + ",".join(str(i + 1) for i in o) + "}" for o in orbs)
        raise CosetTableError(f"action is not transitive; orbits {shown}")


def coset_table_from_perms(P: Presentation, images: Sequence[Sequence[int]],
                           one_based: bool = True) -> CosetTable:
    """Coset table of the stabilizer of point 1 for the given action.

    ``images[j]`` lists the images of points 1..d (or 0..d-1) under generator j+1.
    """
    if len(images) != P.ngens:
        raise CosetTableError(f"need {P.ngens} permutations, got {len(images)}")
    shift = 1 if one_based else 0
    perms = tuple(tuple(x - shift for x in p) for p in images)
    d = len(perms[0]) if perms else 1
    if any(len(p) != d for p in perms):
        raise CosetTableError("permutations have different degrees")
    T = CosetTable(d, perms)
    _check_table(P, T)
    return T


def parse_cycles(text: str, degree: int | None = None) -> list[int]:
    """'(1,2,3)(4,5)' -> list of images (1-based), padded to degree."""
    cycles = re.findall(r"\(([^()]*)\)", text)
    if re.sub(r"\([^()]*\)|\s", "", text):
        raise CosetTableError(f"bad cycle notation {text!r}")
    pts = [[int(x) for x in re.split(r"[,\s]+", c.strip()) if x] for c in cycles]
    n = max([degree or 0] + [max(c) for c in pts if c])
    img = list(range(1, n + 1))
    seen = set()
    for c in pts:
        for k, x in enumerate(c):
            if x in seen or x < 1:
                raise CosetTableError(f"bad cycle notation {text!r}")
            seen.add(x)
            img[x - 1] = c[(k + 1) % len(c)]
    return img


def format_cycles(perm: Sequence[int]) -> str:
    """0-based image list -> 1-based cycle notation ('()' for identity)."""
    seen = set()
    out = []
    for s in range(len(perm)):
        if s in seen or perm[s] == s:
            continue
        cyc, i = [], s
        while i not in seen:
            seen.add(i)
            cyc.append(i + 1)
            i = perm[i]
        out.append("(" + ",".join(map(str, cyc)) + ")")
    return "".join(out) or "()"


def parse_coset_table(P: Presentation, text: str) -> CosetTable:
    """Read ``perm <gen> <cycles>`` lines (other lines ignored)."""
    found: dict[str, str] = {}
    degree = None
    for ln in text.splitlines():
        parts = ln.strip().split(None, 2)
        if len(parts) >= 2 and parts[0] == "degree":
            degree = int(parts[1])
        if len(parts) >= 2 and parts[0] == "perm":
            if parts[1] not in P.gens:
                raise CosetTableError(f"unknown generator {parts[1]!r} in perm line")
            found[parts[1]] = parts[2] if len(parts) > 2 else "()"
    missing = [g for g in P.gens if g not in found]
    if missing:
        raise CosetTableError(f"no perm line for generator(s) {' '.join(missing)}")
    imgs = [parse_cycles(found[g]) for g in P.gens]
    d = max([degree or 0] + [len(p) for p in imgs])
    imgs = [p + list(range(len(p) + 1, d + 1)) for p in imgs]
    return coset_table_from_perms(P, imgs)


def format_coset_table(P: Presentation, T: CosetTable) -> str:
    lines = [f"degree {T.degree}"]
    lines += [f"perm {g} {format_cycles(p)}" for g, p in zip(P.gens, T.perms)]
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class SchreierData:
    """Spanning tree and Schreier generator labels for a coset table."""

    transversal: tuple  # word from coset 0 to coset i
    label: dict  # (coset, gen) -> Schreier generator index (1-based) or 0 on tree edges

    def rewrite(self, T: CosetTable, w: Sequence[int], start: int = 0) -> list[int]:
        out = []
        i = start
        for x in w:
            if x > 0:
                s = self.label[(i, x)]
                if s:
                    out.append(s)
                i = T.act(i, x)
            else:
                j = T.act(i, x)
                s = self.label[(j, -x)]
                if s:
                    out.append(-s)
                i = j
        return out


def schreier_data(T: CosetTable) -> SchreierData:
    """BFS spanning tree from coset 0 with generator-order tie-breaking."""
    trans: list = [None] * T.degree
    trans[0] = ()
    tree = set()
    q = deque([0])
    while q:
        i = q.popleft()
        for j in range(T.ngens):
            for x in (j + 1, -(j + 1)):
                k = T.act(i, x)
                if trans[k] is None:
                    trans[k] = trans[i] + (x,)
                    tree.add((i, x) if x > 0 else (k, -x))
                    q.append(k)
    label = {}
    n = 0
    for i in range(T.degree):
        for g in range(1, T.ngens + 1):
            if (i, g) in tree:
                label[(i, g)] = 0
            else:
                n += 1
                label[(i, g)] = n
    return SchreierData(tuple(trans), label)


def reidemeister_schreier(P: Presentation, T: CosetTable, names: str = "coset") -> Presentation:
    """Presentation of the stabilizer of coset 0.

    Generators are the non-tree pairs (coset, generator), named
    ``<gen>_<coset>`` (1-based coset); relators are the rewritten conjugates
    of every relator at every coset.
    """
    if T.ngens != P.ngens:
        raise CosetTableError("table and presentation have different generator counts")
    S = schreier_data(T)
    gens = [None] * sum(1 for v in S.label.values() if v)
    for (i, g), s in S.label.items():
        if s:
            gens[s - 1] = f"{P.gens[g - 1]}_{i + 1}" if names == "coset" else f"s{s}"
    rels = []
    for i in range(T.degree):
        for r in P.relators:
            rels.append(tuple(S.rewrite(T, r, i)))
    return Presentation(tuple(gens), tuple(rels))


def intersect_subgroups(T1: CosetTable, T2: CosetTable) -> CosetTable:
    """Table of the intersection via the product action on the orbit of (0, 0)."""
    if T1.ngens != T2.ngens:
        raise CosetTableError("tables over different generator sets")
    index = {(0, 0): 0}
    order = [(0, 0)]
    q = 0
    while q < len(order):
        a, b = order[q]
        q += 1
        for j in range(T1.ngens):
            for x in (j + 1, -(j + 1)):
                nb = (T1.act(a, x), T2.act(b, x))
                if nb not in index:
                    index[nb] = len(order)
                    order.append(nb)
    perms = tuple(tuple(index[(T1.perms[j][a], T2.perms[j][b])] for (a, b) in order)
                  for j in range(T1.ngens))
    return CosetTable(len(order), perms)


def induced_table(T1: CosetTable, T2: CosetTable) -> CosetTable:
    """Lift a table T2 over the Schreier presentation of T1 to the parent group.

    If T1 describes H <= G and T2 describes K <= H (over the generators of
    ``reidemeister_schreier(P, T1)``), the result describes K <= G.
    """
    S = schreier_data(T1)
    d1, d2 = T1.degree, T2.degree
    pts = [(i, k) for i in range(d1) for k in range(d2)]
    idx = {p: n for n, p in enumerate(pts)}
    perms = []
    for g in range(1, T1.ngens + 1):
        p = []
        for i, k in pts:
            s = S.label[(i, g)]
            p.append(idx[(T1.act(i, g), T2.act(k, s) if s else k)])
        perms.append(tuple(p))
    return CosetTable(d1 * d2, tuple(perms))


def _hom_values(am, targets: Sequence[int]):
    """All homomorphisms H_1 -> Z/targets[0] + ... given on generators.

    Yields tuples of per-generator images (each an element of the target).
    """
    coords = list(am.torsion) + [0] * am.rank
    # images of the H_1 basis vectors into each cyclic factor
    choices = []
    for m in targets:
        per = []
        for d in coords:
            if d == 0:
                per.append(range(m))
            else:
                per.append([v for v in range(m) if (v * d) % m == 0])
        choices.append(per)
    flat = [c for per in choices for c in per]
    nb = len(coords)
    for vals in itertools.product(*flat):
        gen_imgs = []
        for img in am.images:
            gen_imgs.append(tuple(sum(vals[f * nb + c] * img[c] for c in range(nb)) % m
                                  for f, m in enumerate(targets)))
        yield tuple(gen_imgs)


def _generated_order(vals, targets) -> int:
    """Order of the subgroup of prod Z/m generated by the vectors vals."""
    # Smith form of the lattice generated by vals and the relations m_i e_i
    from ..exactalg.matrix import abelian_invariants
    rows = [list(v) for v in vals]
    k = len(targets)
    rows += [[m if i == j else 0 for j in range(k)] for i, m in enumerate(targets)]
    rank, tors = abelian_invariants(rows, k)
    total = 1
    for m in targets:
        total *= m
    q = 1
    for d in tors:
        q *= d
    assert rank == 0
    return total // q


def enumerate_abelian_covers(P: Presentation, targets: Sequence[int]) -> list[CosetTable]:
    """Regular covers with deck group Z/targets[0] + ...: one table per kernel
    of a surjection H_1 -> target, in canonical order."""
    am = abelian_map(P)
    targets = list(targets)
    elems = list(itertools.product(*[range(m) for m in targets]))
    eidx = {e: n for n, e in enumerate(elems)}
    total = len(elems)
    seen = {}
    for gen_imgs in _hom_values(am, targets):
        if _generated_order(gen_imgs, targets) != total:
            continue
        perms = []
        for v in gen_imgs:
            perms.append(tuple(eidx[tuple((a + b) % m for a, b, m in zip(e, v, targets))]
                               for e in elems))
        T = CosetTable(total, tuple(perms)).standardized()
        seen.setdefault(T.perms, T)
    return [seen[k] for k in sorted(seen)]


def enumerate_cyclic_covers(P: Presentation, n: int, with_homology: bool = True) -> list:
    """All n-fold cyclic covers: list of (CosetTable, (rank, torsion))."""
    if n < 2:
        raise ValueError("modulus must be at least 2")
    out = []
    for T in enumerate_abelian_covers(P, [n]):
        h = abelianization(reidemeister_schreier(P, T)) if with_homology else None
        out.append((T, h))
    return out


def enumerate_regular_covers(P: Presentation, targets: Sequence[int]) -> list:
    return [(T, abelianization(reidemeister_schreier(P, T)))
            for T in enumerate_abelian_covers(P, targets)]


def count_cyclic_quotients(rank: int, torsion: Sequence[int], n: int) -> int:
    """Number of subgroups K of A = Z^rank + sum Z/t with A/K = Z/n.

    Independent count: surjections A -> Z/n divided by phi(n), with
    |Hom(A, Z/d)| = d^rank prod gcd(t, d) and Mobius inversion over d | n.
    """
    def homs(d):
        h = d ** rank
        for t in torsion:
            h *= gcd(t, d)
        return h

    def mobius(k):
        res, p = 1, 2
        while p * p <= k:
            if k % p == 0:
                k //= p
                if k % p == 0:
                    return 0
                res = -res
            p += 1
        return -res if k > 1 else res

    surj = sum(mobius(n // d) * homs(d) for d in range(1, n + 1) if n % d == 0)
    phi = sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)
    return surj // phi


def transfer_abelianization(P: Presentation, T: CosetTable) -> tuple[int, list[int]]:
    """H_1 of the subgroup from the cellular chain complex of the covering
    presentation complex: H_1 = ker(d1) / im(d2), independent of the
    rewriting code path."""
    from ..exactalg.matrix import abelian_invariants, integer_kernel, solve_integer
    d, n = T.degree, P.ngens
    # edges (i, g) from coset i to i.g ; index i*n + (g-1)
    ne = d * n
    d1 = [[0] * ne for _ in range(d)]
    for i in range(d):
        for g in range(1, n + 1):
            e = i * n + g - 1
            d1[T.act(i, g)][e] += 1
            d1[i][e] -= 1
    Z = integer_kernel(d1, ne)
    rows = []
    for i in range(d):
        for r in P.relators:
            v = [0] * ne
            c = i
            for x in r:
                if x > 0:
                    v[c * n + x - 1] += 1
                    c = T.act(c, x)
                else:
                    c = T.act(c, x)
                    v[c * n - x - 1] -= 1
            rows.append(v)
    # express boundaries in the cycle basis Z
    Zt = [[Z[k][e] for k in range(len(Z))] for e in range(ne)]
    coords = []
    for v in rows:
        sol = solve_integer(Zt, v, len(Z))
        if sol is None:
            raise PresentationError("relator lift is not a cycle")
        coords.append(sol)
    return abelian_invariants(coords, len(Z))
