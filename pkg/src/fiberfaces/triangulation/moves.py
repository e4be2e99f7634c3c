"""2-3 and 3-2 Pachner moves with exact transport of edge cocycles, and a
canonical isomorphism signature."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .core import EDGE_SLOTS, Triangulation, TriangulationError, perm_sign

# coordinates used only to fix orientations of the symbolic tetrahedra
_COORD = {"a": (1, 0, 0), "b": (0, 1, 0), "c": (-1, -1, 0), "p": (0, 0, 1), "q": (0, 0, -1)}


def _sign(syms) -> int:
    p0 = _COORD[syms[0]]
    v = [[x - y for x, y in zip(_COORD[s], p0)] for s in syms[1:]]
    d = (v[0][0] * (v[1][1] * v[2][2] - v[1][2] * v[2][1])
         - v[0][1] * (v[1][0] * v[2][2] - v[1][2] * v[2][0])
         + v[0][2] * (v[1][0] * v[2][1] - v[1][1] * v[2][0]))
    return (d > 0) - (d < 0)


@dataclass(frozen=True)
class TransportMap:
    """new edge class -> {old edge class: coefficient}."""

    rows: tuple
    tets: dict | None = None  # kept old tet -> new index
    faces: dict | None = None  # old (t, f) on the region boundary -> new (t, f)
    inner: frozenset = frozenset()  # new (t, f) interior to the new region

    def apply(self, omega) -> list[int]:
        return [sum(c * omega[e] for e, c in r) for r in self.rows]


class InvalidMove(TriangulationError):
    pass


def _replace(T: Triangulation, old: list[tuple], new_syms: list[tuple]):
    """Replace tets ``old = [(t, symbols of local vertices 0..3)]`` by new
    symbolic tets.  Returns (new triangulation, transport map)."""
    old_idx = {t: k for k, (t, _) in enumerate(old)}
    if len(old_idx) != len(old):
        raise InvalidMove("tetrahedra of the move are not distinct")
    signs = {_sign(s) for _, s in old}
    if len(signs) != 1:
        raise AssertionError("old tetrahedra are not coherently oriented")
    s0 = signs.pop()
    new_tets = []
    for ns in new_syms:
        ns = tuple(ns)
        if _sign(ns) != s0:
            ns = (ns[0], ns[1], ns[3], ns[2])
        new_tets.append(ns)
    keep = [t for t in range(T.size) if t not in old_idx]
    renum = {t: k for k, t in enumerate(keep)}
    base = len(keep)
    # faces of new tets keyed by symbol set
    new_face = {}
    for k, ns in enumerate(new_tets):
        for f in range(4):
            key = frozenset(ns[x] for x in range(4) if x != f)
            new_face.setdefault(key, []).append((k, f))
    # old external faces: symbol set -> (old tet pos, face)
    ext = {}
    for k, (t, syms) in enumerate(old):
        for f in range(4):
            key = frozenset(syms[x] for x in range(4) if x != f)
            g = T.gluings[t][f]
            internal = False
            if g is not None and g[0] in old_idx:
                syms2 = old[old_idx[g[0]]][1]
                if all(syms2[g[2][x]] == syms[x] for x in range(4) if x != f):
                    internal = True
            if internal:
                if len(new_face.get(key, ())) not in (0, 2):
                    raise InvalidMove("internal face reappears on the boundary of the region")
                continue
            if key in ext:
                raise InvalidMove("symbol face repeated")
            ext[key] = (k, f)
            if len(new_face.get(key, ())) != 1:
                raise InvalidMove("external face not matched by the new tetrahedra")

    def new_target(k, f, sym_of_local):
        """Where face f of new tet k is glued; sym_of_local maps local vertex -> symbol."""
        ns = new_tets[k]
        key = frozenset(ns[x] for x in range(4) if x != f)
        mates = [x for x in new_face[key] if x != (k, f)]
        if mates:
            k2, f2 = mates[0]
            ns2 = new_tets[k2]
            perm = tuple(f2 if x == f else ns2.index(ns[x]) for x in range(4))
            return (base + k2, f2, perm)
        ok, of = ext[key]
        t, syms = old[ok]
        g = T.gluings[t][of]
        if g is None:
            return None
        t2, f2, p = g
        # new local x -> symbol -> old local in t -> p -> local in t2
        loc = [syms.index(ns[x]) if x != f else of for x in range(4)]
        img = [p[loc[x]] for x in range(4)]
        if t2 in old_idx:
            syms2 = old[old_idx[t2]][1]
            key2 = frozenset(syms2[x] for x in range(4) if x != f2)
            (k2, g2), = new_face[key2]
            ns2 = new_tets[k2]
            perm = tuple(g2 if x == f else ns2.index(syms2[img[x]]) for x in range(4))
            return (base + k2, g2, perm)
        return (renum[t2], f2, tuple(img))

    rows = []
    for t in keep:
        row = []
        for f, g in enumerate(T.gluings[t]):
            if g is None:
                row.append(None)
            elif g[0] in old_idx:
                t2, f2, p = g
                syms2 = old[old_idx[t2]][1]
                key2 = frozenset(syms2[x] for x in range(4) if x != f2)
                (k2, g2), = new_face[key2]
                ns2 = new_tets[k2]
                row.append((base + k2, g2, tuple(g2 if x == f else ns2.index(syms2[p[x]])
                                                   for x in range(4))))
            else:
                row.append((renum[g[0]], g[1], g[2]))
        rows.append(row)
    for k in range(len(new_tets)):
        rows.append([new_target(k, f, None) for f in range(4)])
    try:
        T2 = Triangulation(rows)
    except TriangulationError as exc:
        raise InvalidMove(f"move produces an invalid triangulation: {exc}") from exc

    # transport: symbol lifts as linear forms in old edge classes
    lift = {old[0][1][0]: {}}
    changed = True
    while changed:
        changed = False
        for t, syms in old:
            have = [x for x in range(4) if syms[x] in lift]
            if not have or len(have) == 4:
                continue
            x0 = have[0]
            for y in range(4):
                if syms[y] in lift:
                    continue
                e, s = T.edge_of[t][EDGE_SLOTS.index(tuple(sorted((x0, y))))]
                sg = s if x0 < y else -s
                form = dict(lift[syms[x0]])
                form[e] = form.get(e, 0) + sg
                lift[syms[y]] = {k: v for k, v in form.items() if v}
                changed = True
    trans = []
    for ec in T2.edge_classes:
        t, k = ec.rep
        i, j = EDGE_SLOTS[k]
        if t < base:
            e, s = T.edge_of[keep[t]][k]
            trans.append(((e, s),))
        else:
            ns = new_tets[t - base]
            a, b = lift[ns[i]], lift[ns[j]]
            form = dict(b)
            for e, v in a.items():
                form[e] = form.get(e, 0) - v
            trans.append(tuple(sorted((e, v) for e, v in form.items() if v)))
    faces = {}
    for key, (k, f) in ext.items():
        (k2, f2), = new_face[key]
        faces[(old[k][0], f)] = (base + k2, f2)
    inner = frozenset((base + k, f) for lst in new_face.values() if len(lst) == 2
                      for k, f in lst)
    return T2, TransportMap(tuple(trans), renum, faces, inner)


def _region_path(T2: Triangulation, inner, a: int, b: int) -> list:
    prev = {a: None}
    queue = [a]
    for t in queue:
        if t == b:
            break
        for f in range(4):
            if (t, f) in inner:
                t2 = T2.gluings[t][f][0]
                if t2 not in prev:
                    prev[t2] = (t, f)
                    queue.append(t2)
    path = []
    while b != a:
        t, f = prev[b]
        path.append((t, f))
        b = t
    return path[::-1]


def transport_loop(T: Triangulation, T2: Triangulation, tm: TransportMap, loop) -> list:
    """Image of a closed dual loop (list of (tet, exit face)) under a move.
    Stretches inside the replaced region are rerouted through new tets."""
    loop = list(loop)
    start = next((i for i, (t, _) in enumerate(loop) if t in tm.tets), None)
    if start is None:
        return []
    loop = loop[start:] + loop[:start]
    out = []
    cur = None  # current new tet while inside the region
    for t, f in loop:
        if t in tm.tets:
            step = (tm.tets[t], f)
        elif (t, f) in tm.faces:
            step = tm.faces[(t, f)]
            out += _region_path(T2, tm.inner, cur, step[0])
        else:
            continue  # interior of the old region
        out.append(step)
        nxt = T2.gluings[step[0]][step[1]][0]
        cur = nxt if nxt >= len(tm.tets) else None
    return out


def loop_pairings(T: Triangulation, omega, loops) -> list[int]:
    """Values of the cocycle omega on closed dual loops."""
    sh = T.face_shifts(omega)
    return [sum(sh[c] for c in loop) for loop in loops]


def pachner_23(T: Triangulation, t0: int, f0: int):
    """2-3 move on the interior face (t0, f0) between two distinct tets."""
    g = T.gluings[t0][f0]
    if g is None:
        raise InvalidMove("boundary face")
    t1, f1, p = g
    if t1 == t0:
        raise InvalidMove("face joins a tet to itself")
    i, j, k = [x for x in range(4) if x != f0]
    s0 = [None] * 4
    s0[f0], s0[i], s0[j], s0[k] = "p", "a", "b", "c"
    s1 = [None] * 4
    s1[f1], s1[p[i]], s1[p[j]], s1[p[k]] = "q", "a", "b", "c"
    return _replace(T, [(t0, tuple(s0)), (t1, tuple(s1))],
                    [("p", "q", "a", "b"), ("p", "q", "b", "c"), ("p", "q", "c", "a")])


def pachner_32(T: Triangulation, e: int):
    """3-2 move removing an interior edge of degree 3 in three distinct tets."""
    walk = T.edge_walk(e)
    if walk is None or len(walk) != 3:
        raise InvalidMove("edge is not an interior edge of degree 3")
    if len({t for t, _ in walk}) != 3:
        raise InvalidMove("edge tetrahedra are not distinct")
    t, k = T.edge_classes[e].rep
    i, j = EDGE_SLOTS[k]
    a = [x for x in range(4) if x not in (i, j)][0]
    state = (t, i, j, a)
    old = []
    names = "abc"
    for step in range(3):
        t, i, j, a = state
        l = 6 - i - j - a
        syms = [None] * 4
        syms[i], syms[j] = "p", "q"
        syms[l] = names[step]
        syms[a] = names[(step - 1) % 3]
        old.append((t, tuple(syms)))
        t2, _, p = T.gluings[t][a]
        state = (t2, p[i], p[j], p[l])
    return _replace(T, old, [("a", "b", "c", "p"), ("a", "b", "c", "q")])


def available_23(T: Triangulation) -> list[tuple]:
    out = []
    for fi, (t, f) in enumerate(T.face_reps):
        g = T.gluings[t][f]
        if g is not None and g[0] != t:
            out.append((t, f))
    return out


def available_32(T: Triangulation) -> list[int]:
    out = []
    for ec in T.edge_classes:
        if ec.degree != 3 or ec.boundary:
            continue
        if len({t for t, _, _ in ec.members}) == 3:
            out.append(ec.index)
    return out


# ---------------------------------------------------------------------- signature

_EVEN = [p for p in permutations(range(4)) if perm_sign(p) == 1]
_PERM_CODE = {p: k for k, p in enumerate(sorted(permutations(range(4))))}


def _canon_odd(f: int) -> tuple:
    a, b, _ = [x for x in range(4) if x != f]
    c = list(range(4))
    c[a], c[b] = b, a
    return tuple(c)


_CANON = [_canon_odd(f) for f in range(4)]


def isomorphism_signature(T: Triangulation) -> str:
    """Smallest relabelled serialization over start tet and even vertex
    relabelling; equal for oriented-isomorphic triangulations."""
    best = None
    for t0 in range(T.size):
        for s0 in _EVEN:
            code = _relabel_code(T, t0, s0, best)
            if code is not None and (best is None or code < best):
                best = code
    return "".join(_ALPHA[x] if x < len(_ALPHA) else f"({x})" for x in best)


_ALPHA = "0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"


def _relabel_code(T, t0, s0, best):
    """BFS relabelling; newly reached tets are relabelled so that the gluing
    that reaches them becomes a fixed odd permutation."""
    order = [t0]
    newidx = {t0: 0}
    sigma = {t0: s0}
    code = []
    pos = 0
    n = T.size
    while pos < len(order):
        t = order[pos]
        s = sigma[t]
        sinv = [0] * 4
        for x, y in enumerate(s):
            sinv[y] = x
        for nf in range(4):
            g = T.gluings[t][sinv[nf]]
            if g is None:
                code += [n, 0]
            else:
                t2, _, p = g
                if t2 not in sigma:
                    s2 = [0] * 4
                    for nx in range(4):
                        s2[p[sinv[nx]]] = _CANON[nf][nx]
                    sigma[t2] = tuple(s2)
                    newidx[t2] = len(order)
                    order.append(t2)
                s2 = sigma[t2]
                code += [newidx[t2], _PERM_CODE[tuple(s2[p[sinv[nx]]] for nx in range(4))]]
            if best is not None:
                k = len(code)
                if tuple(code) > best[:k]:
                    return None
        pos += 1
    if len(order) != n:
        raise TriangulationError("triangulation is disconnected")
    return tuple(code)
