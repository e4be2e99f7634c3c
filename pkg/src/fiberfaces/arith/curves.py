"""Primality, quadratic symbols and point counts on the conductor-49 curve."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# deterministic for n < 3.317e24
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    if n >= 3317044064679887385961981:
        raise ValueError("Miller-Rabin bases are only certified below 3.3e24")
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def legendre(a: int, p: int) -> int:
    """(a/p) for an odd prime p, by Euler's criterion."""
    if p % 2 == 0 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    return _euler(a, p)


def _euler(a: int, p: int) -> int:
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def kronecker(D: int, p: int, checked: bool = True) -> int:
    """Kronecker symbol (D/p) for a prime p; D = 1 mod 4 or 0 mod 4 at p = 2.
    ``checked=False`` skips the primality test (caller guarantees it)."""
    if p == 2:
        if D % 2 == 0:
            return 0
        return 1 if D % 8 in (1, 7) else -1
    return legendre(D, p) if checked else _euler(D, p)


@dataclass(frozen=True)
class EllipticCurve:
    a1: int
    a2: int
    a3: int
    a4: int
    a6: int
    conductor: int | None = None

    @property
    def discriminant(self) -> int:
        b2 = self.a1 ** 2 + 4 * self.a2
        b4 = 2 * self.a4 + self.a1 * self.a3
        b6 = self.a3 ** 2 + 4 * self.a6
        b8 = (self.a1 ** 2 * self.a6 + 4 * self.a2 * self.a6 - self.a1 * self.a3 * self.a4
              + self.a2 * self.a3 ** 2 - self.a4 ** 2)
        return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    def __post_init__(self):
        if self.discriminant == 0:
            raise ValueError("singular curve")


# y^2 + xy = x^3 - x^2 - 2x - 1, conductor 49, CM by Q(sqrt -7)
E = EllipticCurve(1, -1, 0, -2, -1, conductor=49)


def count_points(C: EllipticCurve, p: int) -> int:
    """#C(F_p) including the point at infinity, by exhaustive counting.

    For odd p the y-count per x comes from a table of square-root counts
    (equivalent to looping over y, but O(p) instead of O(p^2))."""
    if p == 2 or p < 50:
        n = 1
        for x in range(p):
            rhs = (x ** 3 + C.a2 * x * x + C.a4 * x + C.a6) % p
            for y in range(p):
                if (y * y + C.a1 * x * y + C.a3 * y - rhs) % p == 0:
                    n += 1
        return n
    if p > 2 ** 20:
        raise ValueError("exhaustive count is limited to p < 2^20")
    r = np.arange(p, dtype=np.int64)
    roots = np.bincount(r * r % p, minlength=p)
    # (2y + a1 x + a3)^2 = 4 rhs + (a1 x + a3)^2, reduced step by step to stay in int64
    u = (C.a1 * r + C.a3) % p
    cube = (r * r % p) * r % p
    rhs = (cube + C.a2 * (r * r % p) + C.a4 * r + C.a6) % p
    d = (4 * rhs + u * u) % p
    return 1 + int(roots[d].sum())


def ap(C: EllipticCurve, p: int) -> int:
    """a_p = p + 1 - #C(F_p) at a prime of good reduction."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if C.discriminant % p == 0:
        raise ValueError(f"bad reduction at {p}")
    a = p + 1 - count_points(C, p)
    if a * a > 4 * p:
        raise AssertionError(f"Hasse bound violated at p = {p}")
    return a

