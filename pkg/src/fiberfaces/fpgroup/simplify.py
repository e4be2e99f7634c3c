"""Tietze and Nielsen simplification with a replayable move log, and
surface-group recognition by gluing the relator polygon.

Every move is a deterministic function of (presentation, move parameters),
so ``replay(P, log)`` reproduces the output exactly.  After each move the
relators are cyclically reduced, empty relators dropped and duplicates (up
to rotation and inversion) removed, keeping the first occurrence.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .presentation import (Presentation, canonical_cyclic, cyclically_reduce, format_presentation,
                           inverse, reduce_word)


def _normalize(rels: Sequence[tuple]) -> list[tuple]:
    out, seen = [], set()
    for r in rels:
        r = cyclically_reduce(r)
        if not r:
            continue
        k = canonical_cyclic(r)
        if k in seen:
            continue
        seen.add(k)
        out.append(r)
    return out


def _substitute(rels, g: int, image: tuple) -> list[tuple]:
    """Replace generator g by the word image (and g^-1 by its inverse)."""
    inv = inverse(image)
    out = []
    for r in rels:
        if g in r or -g in r:
            w = []
            for x in r:
                if x == g:
                    w.extend(image)
                elif x == -g:
                    w.extend(inv)
                else:
                    w.append(x)
            r = reduce_word(w)
        out.append(r)
    return out


def _drop_generator(gens, rels, g: int):
    gens = gens[:g - 1] + gens[g:]

    def f(x):
        a = abs(x)
        if a > g:
            return x - 1 if x > 0 else x + 1
        return x

    rels = [tuple(f(x) for x in r) for r in rels]
    return gens, rels


def apply_move(P: Presentation, move: tuple) -> Presentation:
    kind = move[0]
    gens, rels = list(P.gens), list(P.relators)
    if kind == "elim":
        _, g, ri = move
        r = rels[ri]
        if sum(1 for x in r if abs(x) == g) != 1:
            raise ValueError(f"generator {g} does not occur exactly once in relator {ri}")
        k = next(i for i, x in enumerate(r) if abs(x) == g)
        rest = r[k + 1:] + r[:k]
        image = inverse(rest) if r[k] > 0 else rest
        del rels[ri]
        rels = _substitute(rels, g, reduce_word(image))
        gens, rels = _drop_generator(gens, rels, g)
    elif kind == "sub":
        _, i, j, p, q, sign, ell = move
        ri = rels[i]
        rj = rels[j] if sign > 0 else inverse(rels[j])
        v = ri[p:] + ri[:p]
        s = rj[q:] + rj[:q]
        if v[:ell] != s[:ell]:
            raise ValueError("substitution move does not match")
        rels[i] = reduce_word(inverse(s[ell:]) + v[ell:])
    elif kind == "nielsen":
        _, g, h, eps, side = move
        # new generator g' = g h^eps (side R) or h^eps g (side L)
        hw = (h,) if eps > 0 else (-h,)
        image = (g,) + inverse(hw) if side == "R" else inverse(hw) + (g,)
        rels = _substitute(rels, g, image)
    else:
        raise ValueError(f"unknown move {kind!r}")
    return Presentation(tuple(gens), tuple(_normalize(rels)))


def replay(P: Presentation, log: Sequence[tuple]) -> Presentation:
    P = Presentation(P.gens, tuple(_normalize(P.relators)))
    for m in log:
        P = apply_move(P, m)
    return P


def _elimination_candidates(P: Presentation):
    """(growth, g, relator index) for each generator occurring once in a relator."""
    occ: dict[int, int] = {}
    for r in P.relators:
        for x in r:
            occ[abs(x)] = occ.get(abs(x), 0) + 1
    out = []
    for ri, r in enumerate(P.relators):
        cnt: dict[int, int] = {}
        for x in r:
            cnt[abs(x)] = cnt.get(abs(x), 0) + 1
        for g, c in cnt.items():
            if c == 1:
                growth = (len(r) - 1) * (occ[g] - 1) - len(r)
                out.append((growth, len(r), g, ri))
    out.sort()
    return out


def _find_substitution(P: Presentation):
    """A length-reducing replacement of a long common piece of two relators."""
    rels = P.relators
    order = sorted(range(len(rels)), key=lambda k: len(rels[k]))
    for j in order:
        rj0 = rels[j]
        L = len(rj0)
        for i in range(len(rels)):
            if i == j or len(rels[i]) < L // 2 + 1:
                continue
            ri = rels[i]
            for sign in (1, -1):
                rj = rj0 if sign > 0 else inverse(rj0)
                for q in range(L):
                    s = rj[q:] + rj[:q]
                    for p in range(len(ri)):
                        if ri[p] != s[0]:
                            continue
                        ell = 0
                        n = min(L, len(ri))
                        while ell < n and ri[(p + ell) % len(ri)] == s[ell]:
                            ell += 1
                        if 2 * ell > L:
                            return ("sub", i, j, p, q, sign, ell)
    return None


def _nielsen_gain(P: Presentation, move) -> int:
    _, g, h, eps, side = move
    hw = (h,) if eps > 0 else (-h,)
    image = (g,) + inverse(hw) if side == "R" else inverse(hw) + (g,)
    gain = 0
    for r, new in zip(P.relators, _substitute(P.relators, g, image)):
        gain += len(r) - len(cyclically_reduce(new))
    if gain <= 0:
        return gain, None
    Q = apply_move(P, move)
    return P.total_length() - Q.total_length(), Q


def _find_nielsen(P: Presentation):
    """First strictly length-reducing Nielsen move in a fixed scan order."""
    n = P.ngens
    used = {abs(x) for r in P.relators for x in r}
    for g in range(1, n + 1):
        if g not in used:
            continue
        for h in range(1, n + 1):
            if h == g or h not in used:
                continue
            for eps in (1, -1):
                for side in ("R", "L"):
                    m = ("nielsen", g, h, eps, side)
                    gain, Q = _nielsen_gain(P, m)
                    if gain > 0:
                        return m, Q
    return None, None


@dataclass
class SimplifyResult:
    presentation: Presentation
    log: list = field(default_factory=list)

    def replays_from(self, P: Presentation) -> bool:
        return format_presentation(replay(P, self.log)) == format_presentation(self.presentation)


def _greedy(P: Presentation, log: list, max_length: int, nielsen: bool = True) -> Presentation:
    while True:
        changed = False
        # eliminations, cheapest first, while total length stays bounded
        while True:
            done = False
            for growth, _, g, ri in _elimination_candidates(P):
                if P.total_length() + growth > max_length:
                    break
                m = ("elim", g, ri)
                P = apply_move(P, m)
                log.append(m)
                done = changed = True
                break
            if not done:
                break
        m = _find_substitution(P) if len(P.relators) <= 64 else None
        if m is not None:
            P = apply_move(P, m)
            log.append(m)
            continue
        if nielsen and P.ngens <= 24 and len(P.relators) <= 24:
            m, Q = _find_nielsen(P)
            if m is not None:
                P = Q
                log.append(m)
                continue
        if not changed:
            return P


def _score(P: Presentation):
    return (P.ngens, len(P.relators), P.total_length())


def simplify_presentation(P: Presentation, effort: int = 0, seed: int = 0,
                          max_growth: float = 2.0, nielsen: bool = True) -> SimplifyResult:
    """Tietze eliminations, relator substitutions and length-reducing Nielsen
    moves, iterated to a fixed point.

    ``effort`` extra restarts each begin with a random Nielsen move chosen
    from ``random.Random(seed)``; the best result (fewest generators, then
    relators, then total length) is returned.
    """
    P0 = Presentation(P.gens, tuple(_normalize(P.relators)))
    cap = max(int(max_growth * P0.total_length()), 8)
    log: list = []
    best = _greedy(P0, log, cap, nielsen)
    best_log = log
    rng = random.Random(seed)
    for _ in range(effort):
        if best.ngens < 2 or not best.relators:
            break
        g, h = rng.sample(range(1, best.ngens + 1), 2)
        m = ("nielsen", g, h, rng.choice((1, -1)), rng.choice(("R", "L")))
        log = list(best_log) + [m]
        Q = _greedy(apply_move(best, m), log, cap, nielsen)
        if _score(Q) < _score(best):
            best, best_log = Q, log
    return SimplifyResult(best, best_log)


@dataclass(frozen=True)
class SurfaceCertificate:
    """Certified surface group: ``kind`` is "closed" (one-vertex polygon
    gluing, genus = orientable genus or number of crosscaps) or "free"."""

    kind: str
    orientable: bool
    genus: int
    rank: int
    witness: Presentation
    log: tuple

    @property
    def euler_characteristic(self) -> int:
        if self.kind == "free":
            return 1 - self.rank
        return 2 - 2 * self.genus if self.orientable else 2 - self.genus


@dataclass(frozen=True)
class NotCertified:
    reason: str
    best: Presentation
    log: tuple


def polygon_vertex_classes(relator: Sequence[int]) -> int:
    """Number of vertex classes after gluing the edges of the relator polygon.

    Every generator must occur exactly twice.
    """
    L = len(relator)
    parent = list(range(L))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        a, b = find(a), find(b)
        if a != b:
            parent[a] = b

    ends: dict[int, list] = {}
    for k, x in enumerate(relator):
        # edge k runs from corner k to corner k+1; orient it along the generator
        tail, head = (k, (k + 1) % L) if x > 0 else ((k + 1) % L, k)
        ends.setdefault(abs(x), []).append((tail, head))
    for g, es in ends.items():
        if len(es) != 2:
            raise ValueError(f"generator {g} occurs {len(es)} times")
        (t1, h1), (t2, h2) = es
        union(t1, t2)
        union(h1, h2)
    return len({find(a) for a in range(L)})


def recognize_surface(P: Presentation):
    """Check a presentation directly (no simplification)."""
    if not P.relators:
        return "free", True, 0, P.ngens
    if len(P.relators) != 1:
        return None
    r = P.relators[0]
    counts: dict[int, list] = {}
    for x in r:
        counts.setdefault(abs(x), []).append(x > 0)
    if set(counts) != set(range(1, P.ngens + 1)) or any(len(v) != 2 for v in counts.values()):
        return None
    if polygon_vertex_classes(r) != 1:
        return None
    orientable = all(v[0] != v[1] for v in counts.values())
    n = P.ngens
    return "closed", orientable, (n // 2 if orientable else n), 0


def surface_group_certificate(P: Presentation, effort: int = 8, seed: int = 0):
    res = simplify_presentation(P, effort=effort, seed=seed)
    Q = res.presentation
    rec = recognize_surface(Q)
    if rec is None:
        return NotCertified("no one-relator polygon form reached", Q, tuple(res.log))
    kind, orientable, genus, rank = rec
    return SurfaceCertificate(kind, orientable, genus, rank, Q, tuple(res.log))


def standard_surface_presentation(genus: int) -> Presentation:
    gens = []
    rel = []
    for i in range(genus):
        a, b = 2 * i + 1, 2 * i + 2
        gens += [f"a{i + 1}", f"b{i + 1}"]
        rel += [a, b, -a, -b]
    return Presentation(tuple(gens), (tuple(rel),))


def scramble(P: Presentation, moves: int, seed: int = 0) -> Presentation:
    """Random isomorphism-preserving obfuscation: Nielsen moves plus added
    redundant generators (t = w) and relator products.  Used in tests."""
    rng = random.Random(seed)
    gens, rels = list(P.gens), [tuple(r) for r in P.relators]
    for step in range(moves):
        n = len(gens)
        kind = rng.random()
        if kind < 0.5 and n >= 2:
            g, h = rng.sample(range(1, n + 1), 2)
            eps = rng.choice((1, -1))
            hw = (h,) if eps > 0 else (-h,)
            img = (g,) + inverse(hw) if rng.random() < 0.5 else inverse(hw) + (g,)
            rels = _substitute(rels, g, img)
        elif kind < 0.8:
            # new generator t with relator t^-1 w for a short random word w
            w = tuple(rng.choice((1, -1)) * rng.randint(1, n) for _ in range(rng.randint(1, 3)))
            gens.append(f"t{step}")
            rels.append(reduce_word((-(n + 1),) + w))
        elif len(rels) >= 2:
            # multiply a relator by a conjugate of another
            i, j = rng.sample(range(len(rels)), 2)
            c = tuple(rng.choice((1, -1)) * rng.randint(1, n) for _ in range(rng.randint(0, 2)))
            rels[i] = reduce_word(rels[i] + c + rels[j] + inverse(c))
        rels = [cyclically_reduce(r) for r in rels if cyclically_reduce(r)]
    return Presentation(tuple(gens), tuple(rels))


def map_word(P: Presentation, move: tuple, w: Sequence[int]) -> tuple:
    """Rewrite an element word of P in the generators of apply_move(P, move)."""
    kind = move[0]
    if kind == "sub":
        return reduce_word(w)
    if kind == "elim":
        _, g, ri = move
        r = P.relators[ri]
        k = next(i for i, x in enumerate(r) if abs(x) == g)
        rest = r[k + 1:] + r[:k]
        image = reduce_word(inverse(rest) if r[k] > 0 else rest)
        (w2,) = _substitute([tuple(w)], g, image)
        _, (w3,) = _drop_generator(list(P.gens), [w2], g)
        return reduce_word(w3)
    if kind == "nielsen":
        _, g, h, eps, side = move
        hw = (h,) if eps > 0 else (-h,)
        image = (g,) + inverse(hw) if side == "R" else inverse(hw) + (g,)
        (w2,) = _substitute([tuple(w)], g, image)
        return reduce_word(w2)
    raise ValueError(f"unknown move {kind!r}")


def transport_words(P: Presentation, log: Sequence[tuple], words) -> list[tuple]:
    """Follow element words through a replayed simplification log."""
    P = Presentation(P.gens, tuple(_normalize(P.relators)))
    words = [reduce_word(w) for w in words]
    for m in log:
        words = [map_word(P, m, w) for w in words]
        P = apply_move(P, m)
    return words


def generates_free_group(words, rank: int) -> bool:
    """Do the words generate the free group on generators 1..rank?

    Stallings folding: the folded graph of the petals must be the rose.
    """
    out: list[dict] = [{}]
    inn: list[dict] = [{}]
    parent = [0]

    def new():
        out.append({})
        inn.append({})
        parent.append(len(parent))
        return len(parent) - 1

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    pending = []

    def add_edge(u, x, v):
        # edge u --x--> v with x > 0
        if x in out[u]:
            pending.append((out[u][x], v))
        else:
            out[u][x] = v
        if x in inn[v]:
            pending.append((inn[v][x], u))
        else:
            inn[v][x] = u

    for w in words:
        w = reduce_word(w)
        if not w:
            continue
        cur = 0
        for k, x in enumerate(w):
            nxt = 0 if k == len(w) - 1 else new()
            if x > 0:
                add_edge(cur, x, nxt)
            else:
                add_edge(nxt, -x, cur)
            cur = nxt
    while pending:
        a, b = pending.pop()
        a, b = find(a), find(b)
        if a == b:
            continue
        if len(out[a]) + len(inn[a]) < len(out[b]) + len(inn[b]):
            a, b = b, a
        parent[b] = a
        for x, v in out[b].items():
            v = find(v)
            if x in out[a]:
                pending.append((out[a][x], v))
            else:
                out[a][x] = v
        for x, u in inn[b].items():
            u = find(u)
            if x in inn[a]:
                pending.append((inn[a][x], u))
            else:
                inn[a][x] = u
        out[b], inn[b] = {}, {}
        # keep inverse maps of neighbours pointing at live roots lazily via find
    verts = {find(v) for v in range(len(parent))}
    if len(verts) != 1:
        return False
    root = find(0)
    return set(out[root]) == set(range(1, rank + 1))
