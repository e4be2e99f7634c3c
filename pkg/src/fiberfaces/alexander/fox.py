"""Fox calculus and the multivariable Alexander polynomial."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from ..exactalg.laurent import LaurentPoly, laurent_gcd
from ..exactalg.polytope import LatticePolytope, newton_polytope
from ..fpgroup.presentation import Presentation, abelian_map


class AlexanderError(ValueError):
    pass


@dataclass(frozen=True)
class AbelianizationMap:
    """Images of the generators in the free part Z^b of H_1."""

    images: tuple
    vars: tuple

    @property
    def rank(self) -> int:
        return len(self.vars)

    def of_word(self, w: Sequence[int]) -> tuple:
        acc = [0] * self.rank
        for x in w:
            img = self.images[abs(x) - 1]
            s = 1 if x > 0 else -1
            for i, v in enumerate(img):
                acc[i] += s * v
        return tuple(acc)

    def unit(self, exp: Sequence[int]) -> LaurentPoly:
        return LaurentPoly.monomial(self.vars, exp)


def default_vars(b: int) -> tuple:
    if b == 1:
        return ("t",)
    if b <= 3:
        return ("x", "y", "z")[:b]
    return tuple(f"t{i + 1}" for i in range(b))


def abelianization_map(P: Presentation, vars: Sequence[str] | None = None) -> AbelianizationMap:
    am = abelian_map(P)
    if vars is None:
        vars = default_vars(am.rank)
    if len(vars) != am.rank:
        raise AlexanderError(f"need {am.rank} variable names, got {len(vars)}")
    return AbelianizationMap(tuple(tuple(v) for v in am.free_images()), tuple(vars))


def fox_derivative(w: Sequence[int], gen: int, phi: AbelianizationMap) -> LaurentPoly:
    """d w / d x_gen mapped through phi (gen is 1-based)."""
    b = phi.rank
    terms: dict = {}
    pos = [0] * b
    for x in w:
        img = phi.images[abs(x) - 1]
        if x > 0:
            if x == gen:
                e = tuple(pos)
                terms[e] = terms.get(e, 0) + 1
            for i in range(b):
                pos[i] += img[i]
        else:
            for i in range(b):
                pos[i] -= img[i]
            if -x == gen:
                e = tuple(pos)
                terms[e] = terms.get(e, 0) - 1
    return LaurentPoly(phi.vars, terms)


def fox_matrix(P: Presentation, phi: AbelianizationMap) -> list[dict]:
    """Sparse rows {column: LaurentPoly} of the Alexander matrix."""
    rows = []
    for r in P.relators:
        row = {}
        for g in sorted({abs(x) for x in r}):
            d = fox_derivative(r, g, phi)
            if d:
                row[g - 1] = d
        rows.append(row)
    return rows


def check_fundamental_identity(P: Presentation, phi: AbelianizationMap, rows=None) -> bool:
    """sum_j (dr/dx_j)(phi(x_j) - 1) == phi(r) - 1 == 0 for every relator."""
    if rows is None:
        rows = fox_matrix(P, phi)
    one = LaurentPoly.constant(phi.vars, 1)
    for r, row in zip(P.relators, rows):
        acc = LaurentPoly(phi.vars)
        for j, d in row.items():
            acc = acc + d * (phi.unit(phi.images[j]) - one)
        if acc != phi.unit(phi.of_word(r)) - one or any(phi.of_word(r)):
            return False
    return True


def _unit_inverse(u: LaurentPoly) -> LaurentPoly:
    (e, c), = u.terms.items()
    return LaurentPoly._raw(u.vars, {tuple(-x for x in e): c})


def eliminate_unit_pivots(rows: list[dict], columns) -> tuple[list[dict], list]:
    """Row-reduce on entries that are units of the Laurent ring.

    Each pivot removes one row and one column and leaves every Fitting
    ideal of the cokernel unchanged.  Returns the residual rows and the
    surviving column indices.
    """
    rows = [dict(r) for r in rows if r]
    alive_rows = set(range(len(rows)))
    col_rows: dict = {j: set() for j in columns}
    for i, r in enumerate(rows):
        for j in r:
            col_rows[j].add(i)
    alive_cols = set(columns)
    while True:
        best = None
        for i in alive_rows:
            r = rows[i]
            wr = sum(len(p) for p in r.values())
            for j, p in r.items():
                if p.is_unit():
                    cost = (wr - 1) * (len(col_rows[j]) - 1)
                    if best is None or (cost, i, j) < best:
                        best = (cost, i, j)
        if best is None:
            break
        _, i, j = best
        piv = rows[i]
        uinv = _unit_inverse(piv[j])
        for k in sorted(col_rows[j]):
            if k == i:
                continue
            s = rows[k]
            f = s[j] * uinv
            for c, p in piv.items():
                v = s.get(c)
                nv = (v - f * p) if v is not None else -(f * p)
                if nv:
                    s[c] = nv
                    col_rows[c].add(k)
                else:
                    s.pop(c, None)
                    col_rows[c].discard(k)
            if not s:
                alive_rows.discard(k)
        for c in piv:
            col_rows[c].discard(i)
        alive_rows.discard(i)
        alive_cols.discard(j)
        del col_rows[j]
    cols = sorted(alive_cols)
    return [rows[i] for i in sorted(alive_rows) if rows[i]], cols


def _row_weight(r: dict) -> int:
    return sum(len(p) for p in r.values())


def reduce_by_divisibility(rows: list[dict], cols: list) -> list[dict]:
    """Clear entries that are exact multiples of another entry in the same
    column (elementary row operations, so the cokernel is unchanged)."""
    rows = [dict(r) for r in rows if r]
    changed = True
    while changed:
        changed = False
        for c in cols:
            idx = [i for i, r in enumerate(rows) if c in r]
            idx.sort(key=lambda i: (len(rows[i][c]), _row_weight(rows[i]), i))
            for a in idx:
                if c not in rows[a]:
                    continue
                p = rows[a][c]
                for b in idx:
                    if b == a or c not in rows[b]:
                        continue
                    q = rows[b][c].exact_divide(p)
                    if q is None:
                        continue
                    new = dict(rows[b])
                    for cc, v in rows[a].items():
                        nv = new[cc] - q * v if cc in new else -(q * v)
                        if nv:
                            new[cc] = nv
                        else:
                            new.pop(cc, None)
                    # accept only strictly lighter rows so the loop terminates
                    if _row_weight(new) < _row_weight(rows[b]):
                        rows[b] = new
                        changed = True
        rows = [r for r in rows if r]
    return rows


def reduce_matrix(rows: list[dict], ncols: int) -> tuple[list[dict], list]:
    """Alternate unit-pivot elimination and divisibility clearing."""
    res, cols = eliminate_unit_pivots(rows, range(ncols))
    while True:
        before = (len(res), len(cols), sum(_row_weight(r) for r in res))
        res = reduce_by_divisibility(res, cols)
        res, cols = eliminate_unit_pivots(res, cols)
        if (len(res), len(cols), sum(_row_weight(r) for r in res)) == before:
            return res, cols


def laurent_det(m: list[list[LaurentPoly]], vars) -> LaurentPoly:
    """Determinant by fraction-free elimination with exact Laurent division."""
    n = len(m)
    if n == 0:
        return LaurentPoly.constant(vars, 1)
    a = [list(r) for r in m]
    sign = 1
    prev = LaurentPoly.constant(vars, 1)
    for k in range(n - 1):
        if not a[k][k]:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return LaurentPoly(vars)
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                num = a[i][j] * akk - aik * a[k][j]
                q = num.exact_divide(prev) if num else num
                if q is None:
                    raise ArithmeticError("Bareiss step not exact")
                a[i][j] = q
        prev = akk
    d = a[n - 1][n - 1]
    return d if sign > 0 else -d


@dataclass(frozen=True)
class AlexanderData:
    polynomial: LaurentPoly
    phi: AbelianizationMap
    fox: tuple
    residual_shape: tuple
    minors_used: int

    @property
    def vars(self):
        return self.phi.vars

    def newton(self) -> LatticePolytope:
        return newton_polytope(self.polynomial)

    def vertex_coefficients(self) -> dict:
        P = self.newton()
        return {v: self.polynomial.coefficient(v) for v in P.vertices}


def first_elementary_gcd(rows: list[dict], cols: list, vars,
                         relation: dict | None = None) -> tuple[LaurentPoly, int]:
    """gcd of the (n-1)-minors of the residual matrix (n = len(cols)).

    If ``relation`` gives a column dependency sum_j A_j v_j = 0 (the Fox
    fundamental identity, v_j = phi(x_j) - 1), Cramer's rule gives
    D_{S,j} v_k = +-D_{S,k} v_j, so for each row subset S only one column
    deletion j0 is needed:  gcd_j D_{S,j} = D_{S,j0} gcd_j(v_j) / v_{j0}.
    Row subsets are visited in lexicographic order.
    """
    n = len(cols)
    zero = LaurentPoly(vars)
    if n == 0:
        return zero, 0
    if n == 1:
        return LaurentPoly.constant(vars, 1), 0
    dense = [[r.get(c, zero) for c in cols] for r in rows]
    k = n - 1
    drops = list(range(n))
    scale = None
    if relation is not None:
        vs = [relation[c] for c in cols]
        nz = [j for j in range(n) if vs[j]]
        if nz:
            j0 = min(nz, key=lambda j: (len(vs[j]), j))
            h = zero
            for v in vs:
                if v:
                    h = laurent_gcd(h, v) if h else v.canonical()
            drops = [j0]
            scale = (h, vs[j0])
    g = zero
    used = 0
    for rs in combinations(range(len(dense)), k):
        sub = [dense[i] for i in rs]
        for drop in drops:
            keep = [c for c in range(n) if c != drop]
            mat = [[row[c] for c in keep] for row in sub]
            if any(not any(row) for row in mat):
                continue
            d = laurent_det(mat, vars)
            used += 1
            if not d:
                continue
            if scale is not None:
                d = (d * scale[0]).exact_divide(scale[1])
                if d is None:
                    raise ArithmeticError("column relation violated")
            if g and g.divides(d):
                continue
            g = laurent_gcd(g, d) if g else d.canonical()
    return g, used


def alexander_polynomial(P: Presentation, vars: Sequence[str] | None = None,
                         check_identity: bool = True) -> AlexanderData:
    phi = abelianization_map(P, vars)
    if phi.rank == 0:
        raise AlexanderError("rank-0 abelianization: no Alexander polynomial")
    rows = fox_matrix(P, phi)
    if check_identity and not check_fundamental_identity(P, phi, rows):
        raise AssertionError("Fox fundamental identity failed")
    res, cols = reduce_matrix(rows, P.ngens)
    one = LaurentPoly.constant(phi.vars, 1)
    relation = {j: phi.unit(phi.images[j]) - one for j in cols}
    g, used = first_elementary_gcd(res, cols, phi.vars, relation)
    return AlexanderData(g.canonical(), phi, tuple(tuple(sorted(r.items())) for r in rows),
                         (len(res), len(cols)), used)
