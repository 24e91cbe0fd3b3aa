"""Integer monodromy matrices: quasi-unipotency, Kulikov type, logarithms."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import List, Optional, Sequence, Tuple

from .exact_linalg import IntMatrix, RatMatrix, as_matrix, char_poly, determinant
from .lattice import LatticeError
from .local import prime_factors

Poly = Tuple[int, ...]  # leading coefficient first


class NotQuasiUnipotent(LatticeError):
    """Characteristic polynomial has a non-cyclotomic factor."""


def poly_divmod(num: Sequence[int], den: Sequence[int]) -> Tuple[Poly, Poly]:
    """Division by a monic integer polynomial."""
    if den[0] != 1:
        raise ValueError("monic divisor required")
    num = list(num)
    if len(num) < len(den):
        while num and num[0] == 0:
            num.pop(0)
        return (0,), tuple(num)
    q = []
    for i in range(len(num) - len(den) + 1):
        c = num[i]
        q.append(c)
        if c:
            for j in range(1, len(den)):
                num[i + j] -= c * den[j]
    rem = num[len(num) - len(den) + 1:] if len(den) > 1 else []
    while rem and rem[0] == 0:
        rem.pop(0)
    return tuple(q) or (0,), tuple(rem)


def totient(n: int) -> int:
    out = n
    for p in prime_factors(n) if n > 1 else []:
        out = out // p * (p - 1)
    return out


@lru_cache(maxsize=None)
def cyclotomic(d: int) -> Poly:
    """The d-th cyclotomic polynomial, by dividing x^d - 1 by Phi_k, k | d."""
    poly: Poly = (1,) + (0,) * (d - 1) + (-1,)
    for k in range(1, d):
        if d % k == 0:
            poly, rem = poly_divmod(poly, cyclotomic(k))
            assert not rem
    return poly


def cyclotomic_orders(T) -> List[int]:
    """Orders d of the cyclotomic factors Phi_d of char_poly(T), with
    multiplicity.  Raises NotQuasiUnipotent if anything is left over."""
    T = as_matrix(T)
    n = T.nrows
    cp = char_poly(T)
    orders = []
    d = 1
    # phi(d) >= sqrt(d / 2), so every Phi_d with phi(d) <= n has d <= 2 n^2.
    while len(cp) > 1 and d <= 2 * n * n:
        if totient(d) < len(cp):
            q, rem = poly_divmod(cp, cyclotomic(d))
            if not rem:
                cp = q
                orders.append(d)
                continue
        d += 1
    if len(cp) > 1:
        raise NotQuasiUnipotent(f"non-cyclotomic factor {cp} in the characteristic polynomial")
    return orders


def validate_monodromy(T) -> IntMatrix:
    T = as_matrix(T)
    if not T.is_square():
        raise LatticeError(f"monodromy must be square, got {T.shape}")
    if determinant(T) not in (1, -1):
        raise LatticeError("monodromy must be invertible over the integers (det +-1)")
    return T


def quasi_unipotency(T) -> Tuple[int, int]:
    """Minimal (e, f) with (T^e - I)^f = 0."""
    T = validate_monodromy(T)
    e = lcm(*cyclotomic_orders(T)) if T.nrows else 1
    N0 = T ** e - IntMatrix.identity(T.nrows)
    P = N0
    f = 1
    while not P.is_zero():
        P = P @ N0
        f += 1
    return e, f


def acampo_test(T) -> str:
    """``section_exists`` when trace(T) != -2 (Euler characteristic of the
    reduced part of the special fibre is 2 + trace), else ``inconclusive``."""
    T = validate_monodromy(T)
    quasi_unipotency(T)
    return "section_exists" if T.trace() != -2 else "inconclusive"


KULIKOV_TYPES = {1: "I", 2: "II", 3: "III"}


def kulikov_type(T) -> str:
    e, f = quasi_unipotency(T)
    if e != 1:
        raise LatticeError(f"Kulikov type needs unipotent monodromy; T^{e} is the first unipotent power")
    if f > 3:
        raise LatticeError(f"nilpotency index {f} > 3 cannot come from a K3 degeneration")
    return KULIKOV_TYPES[f]


def log_unipotent(U) -> RatMatrix:
    """log(U) = sum_{k>=1} (-1)^(k+1) (U - I)^k / k for unipotent U.

    For nilpotency index <= 3 this is (U - I) - (U - I)^2 / 2.
    """
    U = as_matrix(U)
    n = U.nrows
    N0 = U - IntMatrix.identity(n)
    out = RatMatrix(IntMatrix.zeros(n, n))
    P = N0
    k = 1
    while not P.is_zero():
        out = out + RatMatrix(P).scale(Fraction((-1) ** (k + 1), k))
        P = P @ N0
        k += 1
    return out


def primitive_log(T) -> Tuple[Fraction, IntMatrix]:
    """(m, N) with m N = log(T^e) and N primitive."""
    e, _ = quasi_unipotency(T)
    L = log_unipotent(as_matrix(T) ** e)
    if L.numerators.is_zero():
        raise LatticeError("monodromy has finite order; its logarithm vanishes")
    m = L.content()
    N = L.scale(1 / m)
    if not N.is_integral():
        raise LatticeError("internal inconsistency: L / content(L) is not integral")
    return m, N.to_int()


@dataclass(frozen=True)
class MonodromyReport:
    e: int
    f: int
    trace: int
    kulikov: Optional[str]
    m: Optional[Fraction]
    N: Optional[IntMatrix]
    acampo: str
    char_poly: Tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "e": self.e,
            "f": self.f,
            "trace": self.trace,
            "kulikov": self.kulikov,
            "m": None if self.m is None else f"{self.m.numerator}/{self.m.denominator}",
            "N": None if self.N is None else self.N.tolist(),
            "acampo": self.acampo,
            "char_poly": list(self.char_poly),
        }


def monodromy_report(T) -> MonodromyReport:
    T = validate_monodromy(T)
    e, f = quasi_unipotency(T)
    kulikov = KULIKOV_TYPES.get(f) if e == 1 else None
    try:
        m, N = primitive_log(T)
    except LatticeError:
        m, N = None, None
    return MonodromyReport(e, f, T.trace(), kulikov, m, N, acampo_test(T), char_poly(T))
