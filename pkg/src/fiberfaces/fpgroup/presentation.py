"""Words, presentations, parsing and abelianization.

A word is a tuple of nonzero ints: ``+i`` is generator ``i`` (1-based) and
``-i`` its inverse.  Single-letter generator names use the convention that
the uppercase letter is the inverse (``A = a^-1``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from ..exactalg.matrix import abelian_invariants, smith_normal_form

Word = tuple


class PresentationError(ValueError):
    pass


def reduce_word(w: Iterable[int]) -> Word:
    out: list[int] = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclically_reduce(w: Sequence[int]) -> Word:
    w = reduce_word(w)
    i, j = 0, len(w)
    while j - i >= 2 and w[i] == -w[j - 1]:
        i += 1
        j -= 1
    return tuple(w[i:j])


def inverse(w: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(w))


def multiply(*ws: Sequence[int]) -> Word:
    out: list[int] = []
    for w in ws:
        for x in w:
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(x)
    return tuple(out)


def power(w: Sequence[int], k: int) -> Word:
    if k < 0:
        return power(inverse(w), -k)
    return reduce_word(tuple(w) * k)


def canonical_cyclic(w: Sequence[int]) -> Word:
    """Least rotation of w or its inverse (a canonical relator form)."""
    w = cyclically_reduce(w)
    if not w:
        return w
    # order letters as 1 < -1 < 2 < -2 < ...
    best = None
    for v in (w, inverse(w)):
        enc = tuple(2 * x if x > 0 else -2 * x + 1 for x in v)
        for i in range(len(v)):
            c = enc[i:] + enc[:i]
            if best is None or c < best[0]:
                best = (c, v[i:] + v[:i])
    return best[1]


def exponent_sums(w: Sequence[int], ngens: int) -> list[int]:
    v = [0] * ngens
    for x in w:
        v[abs(x) - 1] += 1 if x > 0 else -1
    return v


@dataclass(frozen=True)
class Presentation:
    gens: tuple
    relators: tuple

    def __post_init__(self):
        n = len(self.gens)
        rels = []
        for r in self.relators:
            r = cyclically_reduce(r)
            if any(x == 0 or abs(x) > n for x in r):
                raise PresentationError(f"relator {r} uses a generator index out of range")
            if r:
                rels.append(r)
        object.__setattr__(self, "gens", tuple(self.gens))
        object.__setattr__(self, "relators", tuple(rels))

    @property
    def ngens(self) -> int:
        return len(self.gens)

    def total_length(self) -> int:
        return sum(len(r) for r in self.relators)

    def deficiency(self) -> int:
        return self.ngens - len(self.relators)

    def word_str(self, w: Sequence[int]) -> str:
        return format_word(w, self.gens)

    def parse_word(self, s: str) -> Word:
        return parse_word(s, self.gens)

    def relation_matrix(self) -> list[list[int]]:
        return [exponent_sums(r, self.ngens) for r in self.relators]

    def __str__(self):
        return format_presentation(self)


def _single_letters(gens: Sequence[str]) -> bool:
    return all(len(g) == 1 and g.islower() for g in gens)


def format_word(w: Sequence[int], gens: Sequence[str]) -> str:
    if not w:
        return "1"
    if _single_letters(gens):
        return "".join(gens[x - 1] if x > 0 else gens[-x - 1].upper() for x in w)
    return " ".join(gens[x - 1] if x > 0 else gens[-x - 1] + "^-1" for x in w)


def parse_word(s: str, gens: Sequence[str]) -> Word:
    s = s.strip()
    if s in ("", "1"):
        return ()
    index = {g: i + 1 for i, g in enumerate(gens)}
    single = _single_letters(gens)
    out: list[int] = []
    pos = 0
    names = sorted(gens, key=len, reverse=True)
    while pos < len(s):
        c = s[pos]
        if c in " \t*.":
            pos += 1
            continue
        if c == "(":
            depth, j = 1, pos + 1
            while j < len(s) and depth:
                depth += {"(": 1, ")": -1}.get(s[j], 0)
                j += 1
            if depth:
                raise PresentationError(f"unbalanced parentheses in {s!r}")
            inner = parse_word(s[pos + 1:j - 1], gens)
            pos, k = _exponent(s, j)
            out.extend(power(inner, k))
            continue
        if c == ")":
            raise PresentationError(f"unbalanced parentheses in {s!r}")
        gen = None
        if single:
            if c in index:
                gen = index[c]
            elif c.isupper() and c.lower() in index:
                gen = -index[c.lower()]
            pos += 1
        else:
            for name in names:
                if s.startswith(name, pos):
                    gen = index[name]
                    pos += len(name)
                    break
        if gen is None:
            raise PresentationError(f"unknown generator at {s[pos:]!r}")
        pos, k = _exponent(s, pos)
        out.extend([gen] * k if k > 0 else [-gen] * (-k))
    return reduce_word(out)


def _exponent(s: str, pos: int) -> tuple[int, int]:
    if pos < len(s) and s[pos] == "^":
        m = re.match(r"\^\s*(-?\d+)", s[pos:])
        if not m:
            raise PresentationError(f"bad exponent in {s!r}")
        return pos + m.end(), int(m.group(1))
    return pos, 1


def parse_presentation(text: str) -> Presentation:
    """Parse the ``pres v1`` text format."""
    gens = None
    rels_text = []
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    # compact one-line form "gens a b / rel abAB / rel ..."
    if len(lines) == 1 and "/" in lines[0]:
        lines = [p.strip() for p in lines[0].split("/") if p.strip()]
    for ln in lines:
        head, _, rest = ln.partition(" ")
        if head == "pres":
            if rest.strip() != "v1":
                raise PresentationError(f"unsupported format version {rest!r}")
        elif head == "gens":
            gens = rest.split()
            if len(set(gens)) != len(gens):
                raise PresentationError("duplicate generator names")
        elif head == "rel":
            rels_text.append(rest)
        elif head == "perm":
            continue
        else:
            raise PresentationError(f"unrecognized line {ln!r}")
    if gens is None:
        raise PresentationError("missing 'gens' line")
    rels = [parse_word(r, gens) for r in rels_text]
    return Presentation(tuple(gens), tuple(rels))


def format_presentation(P: Presentation) -> str:
    lines = ["pres v1", "gens " + " ".join(P.gens)]
    lines += ["rel " + format_word(r, P.gens) for r in P.relators]
    return "\n".join(lines) + "\n"


def abelianization(P: Presentation) -> tuple[int, list[int]]:
    """(free rank, torsion invariants) of H_1 from the exponent-sum matrix."""
    return abelian_invariants(P.relation_matrix(), P.ngens)


@dataclass(frozen=True)
class AbelianMap:
    """Map from generators to H_1 = Z^rank + sum Z/torsion.

    ``images[j]`` holds the coordinates of generator j+1: first the torsion
    coordinates (mod ``torsion[i]``), then the free part.
    """

    rank: int
    torsion: tuple
    images: tuple

    def free_images(self) -> list[tuple]:
        t = len(self.torsion)
        return [img[t:] for img in self.images]

    def of_word(self, w: Sequence[int]) -> tuple:
        t = len(self.torsion)
        acc = [0] * (t + self.rank)
        for x in w:
            img = self.images[abs(x) - 1]
            s = 1 if x > 0 else -1
            for i, v in enumerate(img):
                acc[i] += s * v
        for i, d in enumerate(self.torsion):
            acc[i] %= d
        return tuple(acc)

    def free_of_word(self, w: Sequence[int]) -> tuple:
        return self.of_word(w)[len(self.torsion):]


def abelian_map(P: Presentation) -> AbelianMap:
    """Explicit abelianization homomorphism via the Smith form column transform."""
    n = P.ngens
    A = P.relation_matrix()
    if not A:
        imgs = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        return AbelianMap(n, (), imgs)
    snf = smith_normal_form(A, n)
    diag = snf.diagonal
    V = snf.V.tolist()
    # new coordinates y = x V (x a row vector of generator exponents)
    tors_idx = [i for i, d in enumerate(diag) if d > 1]
    free_idx = [i for i in range(n) if i >= len(diag) or diag[i] == 0]
    torsion = tuple(diag[i] for i in tors_idx)
    images = []
    for j in range(n):
        row = V[j]
        img = [row[i] % diag[i] for i in tors_idx] + [row[i] for i in free_idx]
        images.append(tuple(img))
    return AbelianMap(len(free_idx), torsion, tuple(images))
