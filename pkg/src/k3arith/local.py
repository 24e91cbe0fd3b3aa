"""Hilbert symbols, square classes and the small amount of elementary number
theory the lattice code needs."""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import List, Tuple, Union

REAL = "real"
Place = Union[int, str]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> List[int]:
    """Distinct prime factors of |n|, ascending.  prime_factors(0) is an error."""
    n = abs(n)
    if n == 0:
        raise ValueError("0 has no finite factorization")
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out.append(n)
    return out


def valuation(n: int, p: int) -> Tuple[int, int]:
    """Split n = p^k * u with p not dividing u; returns (k, u)."""
    if n == 0:
        raise ValueError("valuation of 0")
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k, n


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def _as_int(x) -> int:
    """Integer in the same square class as the nonzero rational x."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("Hilbert symbol arguments must be nonzero")
    return x.numerator * x.denominator


def hilbert_symbol(a, b, place: Place) -> int:
    """(a, b)_v for nonzero rationals a, b at a prime p or at ``REAL``."""
    a, b = _as_int(a), _as_int(b)
    if place == REAL:
        return -1 if a < 0 and b < 0 else 1
    if not isinstance(place, int) or not is_prime(place):
        raise ValueError(f"place must be a prime or {REAL!r}, got {place!r}")
    p = place
    alpha, u = valuation(a, p)
    beta, v = valuation(b, p)
    if p == 2:
        eps = lambda t: ((t - 1) // 2) % 2
        omega = lambda t: ((t * t - 1) // 8) % 2
        e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u)
        return -1 if e % 2 else 1
    sign = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    return sign * legendre(u, p) ** beta * legendre(v, p) ** alpha


def square_class(x, place: Place) -> Tuple[int, int]:
    """Class of x in Q_v^* / (Q_v^*)^2.

    Odd p: (v_p(x) mod 2, Legendre symbol of the unit part).  p = 2:
    (v_2(x) mod 2, unit part mod 8).  Real place: (0, sign).
    """
    n = _as_int(x)
    if place == REAL:
        return (0, 1 if n > 0 else -1)
    k, u = valuation(n, place)
    if place == 2:
        return (k % 2, u % 8)
    return (k % 2, legendre(u, place))


def is_local_square(x, place: Place) -> bool:
    return square_class(x, place) == (0, 1)


def hasse_invariant(diag, place: Place) -> int:
    """Product of (d_i, d_j)_v over i < j."""
    out = 1
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            out *= hilbert_symbol(diag[i], diag[j], place)
    return out


def places_for(*numbers) -> List[Place]:
    """Primes dividing 2 * prod(numbers), then the real place."""
    primes = {2}
    for n in numbers:
        primes.update(prime_factors(_as_int(n)))
    return sorted(primes) + [REAL]


def hilbert_product(a: int, b: int) -> int:
    """Product of (a, b)_v over all places; +1 by reciprocity."""
    out = 1
    for v in places_for(a, b):
        out *= hilbert_symbol(a, b, v)
    return out


def is_perfect_square(n: int) -> bool:

    return n >= 0 and isqrt(n) ** 2 == n
