"""Integer matrices, Smith normal form and cokernel invariants.

Everything here works with plain Python integers so that entries never
overflow.  Matrices are stored as lists of row lists.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple  # tuple of row tuples

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entry count does not match rows x cols")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [tuple(int(x) for x in r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, tuple(rows))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix.from_rows(matmul(self.tolist(), other.tolist(), self.cols, other.cols),
                                   other.cols)

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows([[self.entries[i][j] for i in range(self.rows)]
                                    for j in range(self.cols)], self.rows)


def matmul(a: list[list[int]], b: list[list[int]], inner: int | None = None,
           cols: int | None = None) -> list[list[int]]:
    if cols is None:
        cols = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [0] * cols
        for k, x in enumerate(row):
            if x:
                bk = b[k]
                for j in range(cols):
                    if bk[j]:
                        acc[j] += x * bk[j]
        out.append(acc)
    return out


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(r) for r in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class SmithForm:
    """``U @ A @ V == D`` with ``D`` diagonal, d1 | d2 | ... and all d_i >= 0."""

    D: IntMatrix
    U: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i, i] for i in range(min(self.D.rows, self.D.cols))]


def smith_normal_form(A: IntMatrix | Sequence[Sequence[int]], cols: int | None = None) -> SmithForm:
    """Smith normal form with unimodular transforms.

    Dense algorithm: pivot on the smallest nonzero entry of the active block,
    clear its row and column by Euclidean steps, then repair divisibility.
    """
    if not isinstance(A, IntMatrix):
        A = IntMatrix.from_rows(A, cols)
    m, n = A.rows, A.cols
    a = A.tolist()
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):  # row dst -= q * row src
        if q:
            rs, rd = a[src], a[dst]
            for j in range(n):
                if rs[j]:
                    rd[j] -= q * rs[j]
            us, ud = U[src], U[dst]
            for j in range(m):
                if us[j]:
                    ud[j] -= q * us[j]

    def add_col(src, dst, q):  # col dst -= q * col src
        if q:
            for row in a:
                if row[src]:
                    row[dst] -= q * row[src]
            for row in V:
                if row[src]:
                    row[dst] -= q * row[src]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = a[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            p = a[t][t]
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(t, i, a[i][t] // p)
                    if a[i][t]:
                        done = False
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(t, j, a[t][j] // p)
                    if a[t][j]:
                        done = False
            if done:
                # divisibility repair: every remaining entry must be a multiple of p
                bad = None
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if a[i][j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                for j in range(n):
                    a[t][j] += a[bad][j]
                for j in range(m):
                    U[t][j] += U[bad][j]
                continue
            # move the smallest entry of row/col t into the pivot slot
            best = (abs(a[t][t]), t, t)
            for i in range(t + 1, m):
                if a[i][t] and abs(a[i][t]) < best[0]:
                    best = (abs(a[i][t]), i, t)
            for j in range(t + 1, n):
                if a[t][j] and abs(a[t][j]) < best[0]:
                    best = (abs(a[t][j]), t, j)
            swap_rows(t, best[1])
            swap_cols(t, best[2])
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return SmithForm(IntMatrix.from_rows(a, n), IntMatrix.from_rows(U, m), IntMatrix.from_rows(V, n))


def _eliminate_units(rows: list[dict[int, int]]) -> tuple[list[dict[int, int]], int]:
    """Sparse elimination of +-1 pivots; returns the residual rows and the
    number of unit pivots removed.  Cokernel invariants are unchanged apart
    from the removed trivial summands."""
    rows = [dict(r) for r in rows if r]
    removed = 0
    col_index: dict[int, set[int]] = {}
    for ri, r in enumerate(rows):
        for c in r:
            col_index.setdefault(c, set()).add(ri)
    alive = set(range(len(rows)))
    changed = True
    while changed:
        changed = False
        for ri in sorted(alive, key=lambda k: len(rows[k])):
            if ri not in alive:
                continue
            r = rows[ri]
            pivot = None
            for c, v in r.items():
                if v in (1, -1) and (pivot is None or len(col_index[c]) < len(col_index[pivot])):
                    pivot = c
            if pivot is None:
                continue
            pv = r[pivot]
            for rj in list(col_index[pivot]):
                if rj == ri:
                    continue
                s = rows[rj]
                q = s[pivot] * pv  # pv is its own inverse
                for c, v in r.items():
                    nv = s.get(c, 0) - q * v
                    if nv:
                        if c not in s:
                            col_index.setdefault(c, set()).add(rj)
                        s[c] = nv
                    elif c in s:
                        del s[c]
                        col_index[c].discard(rj)
                if not s:
                    alive.discard(rj)
            for c in r:
                col_index[c].discard(ri)
            del col_index[pivot]
            alive.discard(ri)
            removed += 1
            changed = True
    return [rows[k] for k in sorted(alive) if rows[k]], removed


def abelian_invariants(A: IntMatrix | Sequence[Sequence[int]], cols: int | None = None) -> tuple[int, list[int]]:
    """Cokernel of a relation matrix (rows = relations, cols = generators).

    Returns ``(rank, torsion)`` where torsion lists the invariant factors > 1
    in divisibility order.
    """
    if isinstance(A, IntMatrix):
        rows, ncols = A.tolist(), A.cols
    else:
        rows = [list(r) for r in A]
        ncols = cols if cols is not None else (len(rows[0]) if rows else 0)
    sparse = [{j: x for j, x in enumerate(r) if x} for r in rows]
    rest, removed = _eliminate_units(sparse)
    used = sorted({c for r in rest for c in r})
    idx = {c: k for k, c in enumerate(used)}
    dense = [[0] * len(used) for _ in rest]
    for i, r in enumerate(rest):
        for c, v in r.items():
            dense[i][idx[c]] = v
    diag = smith_normal_form(dense, len(used)).diagonal if used else []
    nonzero = [d for d in diag if d]
    rank = ncols - removed - len(nonzero)
    return rank, [d for d in nonzero if d > 1]


def integer_kernel(A: Sequence[Sequence[int]], cols: int) -> list[list[int]]:
    """Lattice basis of {x in Z^cols : A x = 0}."""
    snf = smith_normal_form(A, cols)
    diag = snf.diagonal
    r = sum(1 for d in diag if d)
    V = snf.V.tolist()
    return [[V[i][j] for i in range(cols)] for j in range(r, cols)]


def solve_integer(A: Sequence[Sequence[int]], b: Sequence[int], cols: int) -> list[int] | None:
    """One integer solution of A x = b, or None."""
    snf = smith_normal_form(A, cols)
    U, V, diag = snf.U.tolist(), snf.V.tolist(), snf.diagonal
    ub = [sum(u * x for u, x in zip(row, b)) for row in U]
    y = [0] * cols
    for i, val in enumerate(ub):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if val:
                return None
        else:
            if val % d:
                return None
            y[i] = val // d
    return [sum(V[i][j] * y[j] for j in range(cols)) for i in range(cols)]


def minors_gcd(A: Sequence[Sequence[int]], k: int) -> int:
    """gcd of all k x k minors (brute force; for small test matrices)."""
    from itertools import combinations

    m = len(A)
    n = len(A[0]) if m else 0
    g = 0
    for rs in combinations(range(m), k):
        for cs in combinations(range(n), k):
            g = gcd(g, determinant([[A[i][j] for j in cs] for i in rs]))
    return g


def format_matrix(A: IntMatrix) -> str:
    lines = [f"mat {A.rows} {A.cols}"]
    lines += [" ".join(str(x) for x in row) for row in A.entries]
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> IntMatrix:
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0][0] != "mat" or len(lines[0]) != 3:
        raise ValueError("expected header 'mat <rows> <cols>'")
    rows, cols = int(lines[0][1]), int(lines[0][2])
    body = [[int(x) for x in ln] for ln in lines[1:]]
    if len(body) != rows:
        raise ValueError(f"expected {rows} rows, got {len(body)}")
    return IntMatrix.from_rows(body, cols)


def relation_matrix(vectors: Iterable[Sequence[int]], cols: int) -> IntMatrix:
    return IntMatrix.from_rows([list(v) for v in vectors], cols)
