"""Cover-tower arithmetic: the prime set, degrees d_n, face-count and
genus/Betti lower bounds, and the Whitehead face count."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt, prod

from mpmath import iv, mp, mpf
from mpmath import log as mplog

from .curves import E, ap, is_prime, kronecker


def primes_up_to(limit: int) -> list[int]:
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p::p] = bytearray(len(range(p * p, limit + 1, p)))
    return [i for i, v in enumerate(sieve) if v]


def in_special_set(p: int) -> bool:
    return p not in (2, 3, 7) and kronecker(-3, p, False) == 1 and kronecker(-7, p, False) == -1


def special_primes(limit: int, check_limit: int = 10 ** 4) -> list[int]:
    """Primes p != 2, 3, 7 with (-3/p) = 1 and (-7/p) = -1, up to limit.
    Emitted primes below check_limit are cross-checked against a_p(E) = 0."""
    if limit < 2:
        raise ValueError("limit must be >= 2")
    out = [p for p in primes_up_to(limit) if in_special_set(p)]
    for p in out:
        if p >= check_limit:
            break
        if ap(E, p) != 0:
            raise AssertionError(f"a_{p}(E) != 0 for an inert prime")
    return out


def first_special(n: int) -> list[int]:
    limit = 128
    while True:
        ps = special_primes(limit, check_limit=0)
        if len(ps) >= n:
            return ps[:n]
        limit *= 2


def tower_degree(n: int, primes=None) -> int:
    """d_n = (prod_{i<=n} (1 + p_i))^2."""
    if n < 0:
        raise ValueError("n must be >= 0")
    ps = primes if primes is not None else first_special(n)
    return prod(1 + p for p in ps[:n]) ** 2


@dataclass(frozen=True)
class FaceBound:
    n: int
    nu: int  # lower bound 2^(2n) on fibered face pairs
    d: int
    comparison: tuple  # enclosure of exp(0.3 log d / log log d)
    holds: bool
    ratio: float  # 2n loglog d / log d


def face_bound(n: int, primes=None) -> FaceBound:
    """2^(2n) and the verified inequality 2^(2n) >= exp(0.3 log d_n / log log d_n)."""
    if n < 1:
        raise ValueError("n must be >= 1 (log log d_0 is undefined)")
    d = tower_degree(n, primes)
    iv.prec = 256
    L = iv.log(iv.mpf(str(d)))
    rhs = iv.exp(iv.mpf("0.3") * L / iv.log(L))
    nu = 4 ** n
    holds = bool(iv.mpf(nu).a >= rhs.b)
    mp.prec = 64
    ld = mplog(mpf(d))
    ratio = float(2 * n * mplog(ld) / ld)
    return FaceBound(n, nu, d, (float(rhs.a), float(rhs.b)), holds, ratio)


def log_ratio(n: int, primes=None) -> float:
    """2n log log d_n / log d_n without forming d_n."""
    ps = primes if primes is not None else first_special(n)
    mp.prec = 80
    ld = 2 * sum(mplog(1 + p) for p in ps[:n])
    return float(2 * n * mplog(ld) / ld)


def _factor_squarefree(N: int) -> list[int]:
    ps = []
    m = N
    p = 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                raise ValueError(f"{N} is not squarefree")
            ps.append(p)
        p += 1
    if m > 1:
        ps.append(m)
    return ps


def genus_gamma0(N: int) -> int:
    """Genus of X_0(N) for squarefree N > 1 (standard elliptic-point counts)."""
    if N <= 1:
        raise ValueError("N must be > 1")
    ps = _factor_squarefree(N)
    mu = prod(p + 1 for p in ps)
    nu2 = prod(1 + kronecker(-4, p) for p in ps)
    nu3 = prod(1 + kronecker(-3, p) for p in ps)
    ninf = 2 ** len(ps)
    g = 1 + Fraction(mu, 12) - Fraction(nu2, 4) - Fraction(nu3, 3) - Fraction(ninf, 2)
    if g.denominator != 1 or g < 0:
        raise AssertionError(f"non-integral genus {g} at N = {N}")
    return int(g)


@dataclass(frozen=True)
class BettiBound:
    n: int
    level: int
    genus: int
    new_dim: Fraction  # 5/7 g_0(N_n)
    new_dim_integral: bool
    new_dim_exact: int  # g_0(N) - 2 g_0(N/7)
    intermediate: Fraction  # (sqrt d_n - 13 2^n) / 12
    intermediate_ok: bool
    leading: Fraction  # 5/84 sqrt d_n


def betti_lower_bound(n: int, primes=None) -> BettiBound:
    if n < 1:
        raise ValueError("n must be >= 1")
    ps = (primes if primes is not None else first_special(n))[:n]
    N = 7 * prod(ps)
    g = genus_gamma0(N)
    g_old = genus_gamma0(N // 7) if N > 7 else 0
    root = prod(1 + p for p in ps)  # sqrt(d_n)
    inter = Fraction(root - 13 * 2 ** n, 12)
    nd = Fraction(5 * g, 7)
    return BettiBound(n, N, g, nd, nd.denominator == 1, g - 2 * g_old, inter, inter <= g,
                      Fraction(5 * root, 84))


def whitehead_faces(n: int) -> int:
    if n < 1:
        raise ValueError("n must be >= 1")
    return 2 ** (n + 1)


@dataclass(frozen=True)
class TowerReport:
    n: int
    primes: tuple
    d: int
    faces: FaceBound
    betti: BettiBound


def tower_report(n: int) -> TowerReport:
    ps = first_special(n)
    if any(a >= b for a, b in zip(ps, ps[1:])) or not all(is_prime(p) for p in ps):
        raise AssertionError("prime list is not increasing primes")
    d = tower_degree(n, ps)
    if isqrt(d) ** 2 != d:
        raise AssertionError("d_n is not a square")
    return TowerReport(n, tuple(ps), d, face_bound(n, ps), betti_lower_bound(n, ps))


def format_tower_report(r: TowerReport) -> str:
    b = r.betti
    rows = [
        ("n", r.n), ("primes", ",".join(map(str, r.primes))), ("d_n", r.d),
        ("sqrt_d_n", isqrt(r.d)), ("nu_lower_bound", r.faces.nu),
        ("exp_bound_lo", f"{r.faces.comparison[0]:.6g}"),
        ("exp_bound_hi", f"{r.faces.comparison[1]:.6g}"),
        ("nu_bound_holds", r.faces.holds), ("log_ratio", f"{r.faces.ratio:.6f}"),
        ("level", b.level), ("genus", b.genus), ("new7_dim", b.new_dim),
        ("new7_dim_integral", b.new_dim_integral), ("new7_dim_standard", b.new_dim_exact),
        ("genus_intermediate_bound", b.intermediate),
        ("genus_intermediate_holds", b.intermediate_ok), ("betti_leading", b.leading),
    ]
    return "".join(f"{k}\t{v}\n" for k, v in rows)
