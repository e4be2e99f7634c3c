"""Multivariable Laurent polynomials over the integers.

A :class:`LaurentPoly` is an immutable map from exponent vectors in Z^b to
nonzero integer coefficients.  Units of the Laurent ring are the signed
monomials, so "equal up to units" is handled by :meth:`LaurentPoly.canonical`.

The gcd is computed on the polynomial part (after shifting exponents to be
nonnegative) by the heuristic evaluation/interpolation method, verified by
exact division, with a recursive primitive-PRS fallback.
"""

from __future__ import annotations

from math import gcd
from typing import Iterable, Mapping, Sequence


class VariableMismatch(ValueError):
    pass


def _add_exp(a, b):
    return tuple(x + y for x, y in zip(a, b))


class LaurentPoly:
    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: Sequence[str], terms: Mapping[tuple, int] | None = None):
        self.vars = tuple(vars)
        b = len(self.vars)
        clean = {}
        if terms:
            for e, c in terms.items():
                if c:
                    e = tuple(e)
                    if len(e) != b:
                        raise ValueError(f"exponent {e} has wrong length for {b} variables")
                    clean[e] = int(c)
        self.terms = clean
        self._hash = None

    # constructors -----------------------------------------------------
    @classmethod
    def constant(cls, vars, c: int) -> "LaurentPoly":
        return cls(vars, {(0,) * len(vars): c})

    @classmethod
    def monomial(cls, vars, exp, c: int = 1) -> "LaurentPoly":
        return cls(vars, {tuple(exp): c})

    @classmethod
    def variable(cls, vars, i: int) -> "LaurentPoly":
        e = [0] * len(vars)
        e[i] = 1
        return cls(vars, {tuple(e): 1})

    @classmethod
    def _raw(cls, vars, terms: dict) -> "LaurentPoly":
        p = cls.__new__(cls)
        p.vars = vars
        p.terms = terms
        p._hash = None
        return p

    # basic protocol -----------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            return self.terms == ({(0,) * len(self.vars): other} if other else {})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"LaurentPoly({self.to_string()!r})"

    def _check(self, other: "LaurentPoly"):
        if self.vars != other.vars:
            raise VariableMismatch(f"variables {self.vars} vs {other.vars}")

    def _coerce(self, other):
        if isinstance(other, int):
            return LaurentPoly.constant(self.vars, other)
        self._check(other)
        return other

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            v = t.get(e, 0) + c
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return LaurentPoly._raw(self.vars, t)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return LaurentPoly._raw(self.vars, {})
            return LaurentPoly._raw(self.vars, {e: c * other for e, c in self.terms.items()})
        self._check(other)
        return LaurentPoly._raw(self.vars, _mul_terms(self.terms, other.terms, len(self.vars)))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError("only units have negative powers")
            (e, c), = self.terms.items()
            if c not in (1, -1):
                raise ValueError("only units have negative powers")
            return LaurentPoly._raw(self.vars, {tuple(-x * -k for x in e): c ** (-k)})
        result = LaurentPoly.constant(self.vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def shift(self, exp: Sequence[int], sign: int = 1) -> "LaurentPoly":
        """Multiply by the unit sign * x^exp."""
        return LaurentPoly._raw(self.vars, {_add_exp(e, exp): sign * c for e, c in self.terms.items()})

    def is_unit(self) -> bool:
        return len(self.terms) == 1 and next(iter(self.terms.values())) in (1, -1)

    # inspection ---------------------------------------------------------
    def exponents(self) -> list[tuple]:
        return sorted(self.terms)

    def coefficient(self, exp) -> int:
        return self.terms.get(tuple(exp), 0)

    def min_exponents(self) -> tuple:
        b = len(self.vars)
        if not self.terms:
            return (0,) * b
        return tuple(min(e[i] for e in self.terms) for i in range(b))

    def max_exponents(self) -> tuple:
        b = len(self.vars)
        if not self.terms:
            return (0,) * b
        return tuple(max(e[i] for e in self.terms) for i in range(b))

    def evaluate(self, point: Sequence) -> object:
        """Evaluate at a point (ints or Fractions; negative powers allowed)."""
        total = 0
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                v = v * (x ** k)
            total += v
        return total

    def substitute(self, images: Sequence[Sequence[int]], new_vars: Sequence[str]) -> "LaurentPoly":
        """Apply the monomial map x_i -> y^{images[i]}."""
        nb = len(new_vars)
        t: dict = {}
        for e, c in self.terms.items():
            ne = [0] * nb
            for k, ek in enumerate(e):
                if ek:
                    for j in range(nb):
                        ne[j] += ek * images[k][j]
            ne = tuple(ne)
            v = t.get(ne, 0) + c
            if v:
                t[ne] = v
            else:
                t.pop(ne, None)
        return LaurentPoly._raw(tuple(new_vars), t)

    # normalization ------------------------------------------------------
    def canonical(self) -> "LaurentPoly":
        """Representative of the unit class: the lexicographically smallest
        exponent vector is moved to 0 and its coefficient made positive."""
        if not self.terms:
            return self
        e0 = min(self.terms)
        sign = 1 if self.terms[e0] > 0 else -1
        return self.shift(tuple(-x for x in e0), sign)

    def equal_up_to_unit(self, other: "LaurentPoly") -> bool:
        return self.canonical() == other.canonical()

    def content(self) -> int:
        g = 0
        for c in self.terms.values():
            g = gcd(g, c)
        return g

    # division -----------------------------------------------------------
    def exact_divide(self, other: "LaurentPoly") -> "LaurentPoly | None":
        """Return q with self == q * other, or None if no Laurent quotient exists."""
        self._check(other)
        if not other.terms:
            raise ZeroDivisionError("division by zero polynomial")
        if not self.terms:
            return self
        lo_a, lo_b = self.min_exponents(), other.min_exponents()
        a = _shift_terms(self.terms, tuple(-x for x in lo_a))
        b = _shift_terms(other.terms, tuple(-x for x in lo_b))
        q = _poly_divide(a, b)
        if q is None:
            return None
        return LaurentPoly._raw(self.vars, _shift_terms(q, _add_exp(lo_a, tuple(-x for x in lo_b))))

    def divides(self, other: "LaurentPoly") -> bool:
        return other.exact_divide(self) is not None

    # text ----------------------------------------------------------------
    def to_string(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = []
            for v, k in zip(self.vars, e):
                if k == 1:
                    mono.append(v)
                elif k:
                    mono.append(f"{v}^{k}")
            m = "*".join(mono)
            if m:
                coef = "" if abs(c) == 1 else f"{abs(c)}*"
                s = coef + m
            else:
                s = str(abs(c))
            parts.append(("- " if c < 0 else "+ ") + s)
        out = " ".join(parts)
        return out[2:] if out.startswith("+ ") else "-" + out[2:]

    __str__ = to_string


# ---------------------------------------------------------------------------
# term-dict helpers (exponent tuples -> int)


def _shift_terms(t: dict, s: tuple) -> dict:
    return {_add_exp(e, s): c for e, c in t.items()}


def _mul_terms(a: dict, b: dict, nvars: int) -> dict:
    if not a or not b:
        return {}
    if nvars == 0:
        c = a[()] * b[()]
        return {(): c} if c else {}
    # Kronecker packing keeps the inner loop on plain ints
    offa = [min(e[i] for e in a) for i in range(nvars)]
    offb = [min(e[i] for e in b) for i in range(nvars)]
    span = [max(e[i] for e in a) - offa[i] + max(e[i] for e in b) - offb[i] for i in range(nvars)]
    base = max(span) + 1
    mults = [base ** i for i in range(nvars)]
    pa = [(sum((x - o) * m for x, o, m in zip(e, offa, mults)), c) for e, c in a.items()]
    pb = [(sum((x - o) * m for x, o, m in zip(e, offb, mults)), c) for e, c in b.items()]
    acc: dict = {}
    get = acc.get
    for ka, ca in pa:
        for kb, cb in pb:
            k = ka + kb
            acc[k] = get(k, 0) + ca * cb
    off = [x + y for x, y in zip(offa, offb)]
    out = {}
    for k, c in acc.items():
        if c:
            e = []
            for i in range(nvars):
                k, r = divmod(k, base)
                e.append(r + off[i])
            out[tuple(e)] = c
    return out


def _poly_divide(a: dict, b: dict) -> dict | None:
    """Exact division of polynomials (nonnegative exponents) or None."""
    if not b:
        raise ZeroDivisionError
    if not a:
        return {}
    lb = max(b)
    cb = b[lb]
    # the quotient's exponents must fit inside the box spanned by a
    n = len(lb)
    qmax = tuple(max(e[i] for e in a) - max(e[i] for e in b) for i in range(n))
    r = dict(a)
    q = {}
    while r:
        lr = max(r)
        e = tuple(x - y for x, y in zip(lr, lb))
        if any(x < 0 for x in e) or any(x > m for x, m in zip(e, qmax)):
            return None
        c, rem = divmod(r[lr], cb)
        if rem:
            return None
        q[e] = c
        for eb, vb in b.items():
            k = _add_exp(e, eb)
            v = r.get(k, 0) - c * vb
            if v:
                r[k] = v
            else:
                r.pop(k, None)
    return q


def _content_terms(t: dict) -> int:
    g = 0
    for c in t.values():
        g = gcd(g, c)
    return g


def _max_norm(t: dict) -> int:
    return max((abs(c) for c in t.values()), default=0)


def _eval_last(t: dict, k: int, x: int) -> dict:
    """Substitute variable k := x, keeping the exponent slot (set to 0)."""
    out: dict = {}
    for e, c in t.items():
        ne = e[:k] + (0,) + e[k + 1:]
        out[ne] = out.get(ne, 0) + c * x ** e[k]
    return {e: c for e, c in out.items() if c}


def _active_vars(t: dict, nvars: int) -> list[int]:
    return [i for i in range(nvars) if any(e[i] for e in t)]


def _heu_gcd(a: dict, b: dict, nvars: int) -> dict | None:
    """Heuristic gcd (content included, leading coefficient positive); None on failure."""
    ca, cb = _content_terms(a), _content_terms(b)
    c = gcd(ca, cb)
    a = {e: v // ca for e, v in a.items()}
    b = {e: v // cb for e, v in b.items()}
    act = sorted(set(_active_vars(a, nvars)) | set(_active_vars(b, nvars)))
    if not act:
        return {(0,) * nvars: c}
    k = act[-1]
    xi = 2 * min(_max_norm(a), _max_norm(b)) + 29
    for _ in range(6):
        ea, eb = _eval_last(a, k, xi), _eval_last(b, k, xi)
        if ea and eb:
            h = _heu_gcd(ea, eb, nvars)
            if h is not None:
                # xi-adic reconstruction of each coefficient into a polynomial in x_k
                g: dict = {}
                for e, v in h.items():
                    j = 0
                    while v:
                        r = v % xi
                        if r > xi // 2:
                            r -= xi
                        if r:
                            ne = e[:k] + (j,) + e[k + 1:]
                            g[ne] = g.get(ne, 0) + r
                        v = (v - r) // xi
                        j += 1
                g = {e: v for e, v in g.items() if v}
                if g:
                    cont = _content_terms(g)
                    if g[max(g)] < 0:
                        cont = -cont
                    g = {e: v // cont for e, v in g.items()}
                    if _poly_divide(a, g) is not None and _poly_divide(b, g) is not None:
                        return {e: v * c for e, v in g.items()}
        xi = xi * 73794 // 27011
    return None


def _deg(t: dict, k: int) -> int:
    return max((e[k] for e in t), default=-1)


def _coeffs_in(t: dict, k: int) -> dict:
    out: dict = {}
    for e, c in t.items():
        out.setdefault(e[k], {})[e[:k] + (0,) + e[k + 1:]] = c
    return out


def _prs_gcd(a: dict, b: dict, nvars: int) -> dict:
    """Recursive primitive PRS gcd over Z[x_1..x_n]; slow but certain."""
    if not a:
        return _normalize_sign(b)
    if not b:
        return _normalize_sign(a)
    act = sorted(set(_active_vars(a, nvars)) | set(_active_vars(b, nvars)))
    if not act:
        return {(0,) * nvars: gcd(a.get((0,) * nvars, 0), b.get((0,) * nvars, 0))}
    k = act[-1]

    def content_k(t):
        g: dict = {}
        for coef in _coeffs_in(t, k).values():
            g = _prs_gcd(g, coef, nvars) if g else _normalize_sign(coef)
            if len(g) == 1 and next(iter(g.values())) == 1 and not any(next(iter(g))):
                break
        return g

    ca, cb = content_k(a), content_k(b)
    c = _prs_gcd(ca, cb, nvars)
    f, g = _poly_divide(a, ca), _poly_divide(b, cb)
    if _deg(f, k) < _deg(g, k):
        f, g = g, f
    while g and _deg(g, k) > 0:
        r = _prem(f, g, k, nvars)
        f = g
        if r:
            cr = content_k(r)
            g = _poly_divide(r, cr)
        else:
            g = {}
    if g:  # nonzero constant in x_k: primitive parts are coprime
        res = {(0,) * nvars: 1}
    else:
        res = _poly_divide(f, content_k(f))
    return _normalize_sign(_mul_terms(c, res, nvars))


def _prem(f: dict, g: dict, k: int, nvars: int) -> dict:
    dg = _deg(g, k)
    lc = _coeffs_in(g, k)[dg]
    r = dict(f)
    while r and _deg(r, k) >= dg:
        dr = _deg(r, k)
        lr = _coeffs_in(r, k)[dr]
        shift = tuple(dr - dg if i == k else 0 for i in range(nvars))
        t1 = _mul_terms(r, lc, nvars)
        t2 = _mul_terms(_mul_terms(lr, g, nvars), {shift: 1}, nvars)
        r = {}
        for e in set(t1) | set(t2):
            v = t1.get(e, 0) - t2.get(e, 0)
            if v:
                r[e] = v
    return r


def _normalize_sign(t: dict) -> dict:
    if t and t[max(t)] < 0:
        return {e: -c for e, c in t.items()}
    return dict(t)


def poly_gcd_terms(a: dict, b: dict, nvars: int) -> dict:
    if not a:
        return _normalize_sign(b)
    if not b:
        return _normalize_sign(a)
    g = _heu_gcd(a, b, nvars)
    if g is None:
        g = _prs_gcd(a, b, nvars)
    return _normalize_sign(g)


def laurent_gcd(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Greatest common divisor in Z[x^{+-1}], returned in canonical form."""
    p._check(q)
    if not p.terms:
        return q.canonical()
    if not q.terms:
        return p.canonical()
    a = _shift_terms(p.terms, tuple(-x for x in p.min_exponents()))
    b = _shift_terms(q.terms, tuple(-x for x in q.min_exponents()))
    g = poly_gcd_terms(a, b, len(p.vars))
    return LaurentPoly._raw(p.vars, g).canonical()


def laurent_gcd_many(polys: Iterable[LaurentPoly]) -> LaurentPoly | None:
    g = None
    for p in polys:
        g = p.canonical() if g is None else laurent_gcd(g, p)
    return g


def laurent_arith(p: LaurentPoly, q: LaurentPoly | int, op: str) -> LaurentPoly:
    """Dispatch form of the ring operations: ``op`` in add | sub | mul | pow."""
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    if op == "pow":
        return p ** int(q)
    raise ValueError(f"unknown operation {op!r}")


def format_poly(p: LaurentPoly) -> str:
    lines = ["poly vars " + " ".join(p.vars)]
    for e in sorted(p.terms):
        lines.append("term " + str(p.terms[e]) + "".join(f" {x}" for x in e))
    return "\n".join(lines) + "\n"


def parse_poly(text: str) -> LaurentPoly:
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines or lines[0][:2] != ["poly", "vars"]:
        raise ValueError("expected header 'poly vars <v1> ...'")
    vars = lines[0][2:]
    terms: dict = {}
    for ln in lines[1:]:
        if ln[0] != "term" or len(ln) != 2 + len(vars):
            raise ValueError(f"bad term line: {' '.join(ln)}")
        e = tuple(int(x) for x in ln[2:])
        terms[e] = terms.get(e, 0) + int(ln[1])
    return LaurentPoly(vars, terms)
