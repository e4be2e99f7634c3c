from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fiberfaces.arith.curves import E, EllipticCurve, ap, count_points, is_prime, kronecker, legendre
from fiberfaces.arith.tower import (betti_lower_bound, face_bound, first_special, format_tower_report,
                                    genus_gamma0, log_ratio, primes_up_to, special_primes,
                                    tower_degree, tower_report, whitehead_faces)


def brute_count(C, p):
    n = 1
    for x in range(p):
        for y in range(p):
            if (y * y + C.a1 * x * y + C.a3 * y - x ** 3 - C.a2 * x * x - C.a4 * x - C.a6) % p == 0:
                n += 1
    return n


def test_is_prime_matches_sieve():
    ps = set(primes_up_to(20000))
    assert all(is_prime(n) == (n in ps) for n in range(20000))
    assert is_prime(2 ** 61 - 1) and not is_prime(2 ** 61 + 1)
    with pytest.raises(ValueError):
        is_prime(43 ** 16)


def test_legendre_matches_squares():
    for p in primes_up_to(200)[1:]:
        sq = {x * x % p for x in range(1, p)}
        for a in range(p):
            assert legendre(a, p) == (0 if a == 0 else 1 if a in sq else -1)
    with pytest.raises(ValueError):
        legendre(3, 9)


def test_kronecker_at_two():
    assert kronecker(-7, 2) == 1 and kronecker(-3, 2) == -1 and kronecker(-4, 2) == 0


def test_curve_data():
    assert E.discriminant == -343
    with pytest.raises(ValueError):
        EllipticCurve(0, 0, 0, 0, 0)


@pytest.mark.parametrize("p", [53, 59, 101, 131, 197, 251, 293])
def test_vectorized_count_matches_brute(p):
    assert count_points(E, p) == brute_count(E, p)
    C = EllipticCurve(0, 0, 1, -1, 0)
    assert count_points(C, p) == brute_count(C, p)


def test_known_ap():
    # q-expansion q + q^2 - q^4 - 3q^8 - 3q^9 + 4q^11 + ...
    assert ap(E, 2) == 1 and ap(E, 11) == 4
    assert ap(E, 3) == ap(E, 5) == ap(E, 13) == 0
    with pytest.raises(ValueError):
        ap(E, 7)
    with pytest.raises(ValueError):
        ap(E, 15)


def test_ap_zero_iff_inert_below_1e4():
    for p in primes_up_to(10 ** 4):
        if p == 7:
            continue
        assert (ap(E, p) == 0) == (p > 2 and legendre(-7, p) == -1)


def test_special_primes():
    assert special_primes(100) == [13, 19, 31, 61, 73, 97]
    assert first_special(5) == [13, 19, 31, 61, 73]
    with pytest.raises(ValueError):
        special_primes(1)


def test_degrees():
    assert tower_degree(0) == 1
    assert tower_degree(1) == 196 and tower_degree(2) == 78400
    with pytest.raises(ValueError):
        tower_degree(-1)


def test_face_bound_small():
    fb = face_bound(1)
    assert fb.holds and fb.nu == 4 and fb.comparison[0] <= fb.comparison[1] < 4
    with pytest.raises(ValueError):
        face_bound(0)


def test_log_ratio_matches_direct():
    for n in (1, 3, 10):
        assert log_ratio(n) == pytest.approx(face_bound(n).ratio, rel=1e-12)


@pytest.mark.parametrize("N,g", [(2, 0), (11, 1), (23, 2), (30, 3), (35, 3), (37, 2), (91, 7),
                                 (1729, 181)])
def test_genus_gamma0(N, g):
    assert genus_gamma0(N) == g


def test_genus_errors():
    with pytest.raises(ValueError):
        genus_gamma0(1)
    with pytest.raises(ValueError):
        genus_gamma0(12)


def test_betti_n1():
    b = betti_lower_bound(1)
    assert b.level == 91 and b.genus == 7
    assert b.new_dim == 5 and b.new_dim_integral and b.new_dim_exact == 7
    assert b.intermediate == Fraction(14 - 26, 12) and b.intermediate_ok


def test_betti_n2_new_dim_not_integral():
    b = betti_lower_bound(2)
    assert b.level == 7 * 13 * 19 and not b.new_dim_integral


def test_tower_report_text():
    text = format_tower_report(tower_report(2))
    rows = dict(line.split("\t") for line in text.splitlines())
    assert rows["d_n"] == "78400" and rows["primes"] == "13,19" and rows["nu_bound_holds"] == "True"


def test_whitehead_faces():
    assert [whitehead_faces(n) for n in (1, 2, 3)] == [4, 8, 16]
    with pytest.raises(ValueError):
        whitehead_faces(0)


@settings(max_examples=100, deadline=None)
@given(st.integers(3, 3000))
def test_hasse_bound(n):
    if is_prime(n) and n != 7:
        a = ap(E, n)
        assert a * a <= 4 * n


def test_genus_integral_all_squarefree_below_1e4():
    n = 0
    for N in range(2, 10 ** 4 + 1):
        if any(N % (q * q) == 0 for q in range(2, int(N ** 0.5) + 1)):
            continue
        assert genus_gamma0(N) >= 0
        n += 1
    assert n == 6082


def test_nu_bound_n3():
    assert face_bound(3).nu == 64 and face_bound(3).holds
