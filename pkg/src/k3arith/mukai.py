"""Mukai vectors over a Picard lattice.

The algebraic Mukai lattice is H^0 + Pic + H^4 where H^0 and H^4 pair to
-1 with each other, so ((r, D, s), (r', D', s')) = D.D' - r s' - s r'.
Coordinates of the underlying lattice are ordered (H^0, H^4, Pic...).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import Sequence, Tuple

from .exact_linalg import IntMatrix
from .lattice import IntegralLattice, LatticeError, make_lattice
from .local import prime_factors

MUKAI_HYPERBOLIC = IntMatrix([[0, -1], [-1, 0]])


@dataclass(frozen=True)
class MukaiVector:
    r: int
    D: Tuple[int, ...]
    s: int

    def __post_init__(self):
        object.__setattr__(self, "D", tuple(int(x) for x in self.D))

    def __add__(self, other: "MukaiVector") -> "MukaiVector":
        if len(self.D) != len(other.D):
            raise LatticeError("Mukai vectors over different Picard ranks")
        return MukaiVector(self.r + other.r, tuple(a + b for a, b in zip(self.D, other.D)), self.s + other.s)

    def __mul__(self, k: int) -> "MukaiVector":
        return MukaiVector(k * self.r, tuple(k * x for x in self.D), k * self.s)

    __rmul__ = __mul__

    def __neg__(self) -> "MukaiVector":
        return self * -1

    def coordinates(self) -> Tuple[int, ...]:
        return (self.r, self.s) + self.D

    @classmethod
    def from_json(cls, doc: dict) -> "MukaiVector":
        try:
            return cls(int(doc["r"]), tuple(doc["d"]), int(doc["s"]))
        except KeyError as exc:
            raise LatticeError(f"Mukai vector document is missing {exc.args[0]!r}") from None

    def to_json(self) -> dict:
        return {"r": self.r, "d": list(self.D), "s": self.s}


@dataclass(frozen=True)
class AlgebraicMukaiLattice:
    pic: IntegralLattice

    def check(self, v: MukaiVector) -> MukaiVector:
        if len(v.D) != self.pic.rank:
            raise LatticeError(
                f"Mukai vector has {len(v.D)} divisor coordinates, Picard lattice has rank {self.pic.rank}"
            )
        return v

    def as_lattice(self) -> IntegralLattice:
        labels = None
        if self.pic.labels:
            labels = ["H0", "H4", *self.pic.labels]
        return make_lattice(IntMatrix.block_diag(MUKAI_HYPERBOLIC, self.pic.gram), labels)

    def vector(self, r: int, D: Sequence[int], s: int) -> MukaiVector:
        return self.check(MukaiVector(r, tuple(D), s))


def mukai_pairing(M: AlgebraicMukaiLattice, v: MukaiVector, w: MukaiVector) -> int:
    M.check(v)
    M.check(w)
    return M.pic.pairing(v.D, w.D) - v.r * w.s - v.s * w.r


def is_spherical(M: AlgebraicMukaiLattice, v: MukaiVector) -> bool:
    return mukai_pairing(M, v, v) == -2


def is_isotropic(M: AlgebraicMukaiLattice, v: MukaiVector) -> bool:
    return mukai_pairing(M, v, v) == 0


def spherical_twist(M: AlgebraicMukaiLattice, v: MukaiVector, sph: MukaiVector) -> MukaiVector:
    """Reflection v -> v + (v, sph) sph in a spherical class."""
    if not is_spherical(M, sph):
        raise LatticeError("twisting class is not spherical (self-pairing != -2)")
    return v + mukai_pairing(M, v, sph) * sph


def twisted_rank(r: int, a: int, s: int, h2: int, gamma: int) -> int:
    """Rank of the twist of (r, a h, s) by (1, h, gamma) in Picard rank one."""
    return r + (a * h2 - s - r * gamma)


def odd_rank_reduction(r: int, a: int, s: int, h2: int) -> MukaiVector:
    """Twist an isotropic (r, a h, s) with r, s odd into even rank.

    Isotropy a^2 h^2 = 2 r s with r s odd forces h^2 = 2 (mod 4); with
    h^2 = 2 gamma - 2 the class (1, h, gamma) is spherical and the twisted
    vector has even rank.
    """
    if a * a * h2 != 2 * r * s:
        raise LatticeError("(r, a h, s) is not isotropic")
    if r % 2 == 0 or s % 2 == 0:
        raise LatticeError("reduction applies only when r and s are both odd")
    gamma = h2 // 2 + 1
    M = AlgebraicMukaiLattice(make_lattice([[h2]]))
    out = spherical_twist(M, MukaiVector(r, (a,), s), MukaiVector(1, (1,), gamma))
    assert out.r == twisted_rank(r, a, s, h2, gamma) and out.r % 2 == 0
    return out


def euler_characteristic(v: MukaiVector) -> int:
    return v.r + v.s


def c2_from_mukai(M: AlgebraicMukaiLattice, v: MukaiVector) -> int:
    """c_2 = c_1^2 / 2 - chi + 2 rank = D^2 / 2 + r - s."""
    d2 = M.pic.evaluate(M.check(v).D)
    if d2 % 2:
        raise LatticeError(f"D^2 = {d2} is odd; c_2 needs an even Picard lattice")
    return d2 // 2 + v.r - v.s


def decomposable_index(L: IntegralLattice) -> int:
    """gcd of all intersection numbers D1.D2, i.e. of the Gram entries."""
    return reduce(gcd, L.gram.entries, 0)


def index_upper_bound(L: IntegralLattice) -> int:
    return gcd(24, decomposable_index(L))


def index_transfer_check(r: int, s: int, n: int, modulus: int) -> bool:
    """Whether gcd(n (n r s + r - s), modulus) == gcd(n, modulus).

    This is the congruence c_2 = n (mod modulus) for the transform of a
    length-n point.  It is guaranteed when the pair comes from an isotropic
    vector, i.e. modulus | 2 r s; see :func:`index_transfer_applies`.
    """
    if modulus <= 0:
        raise LatticeError("modulus must be positive")
    if gcd(gcd(r, s), modulus) != 1:
        raise LatticeError(f"gcd(r, s, modulus) = {gcd(gcd(r, s), modulus)} != 1")
    return gcd(n * (n * r * s + r - s), modulus) == gcd(n, modulus)


def index_transfer_applies(r: int, s: int, modulus: int) -> bool:
    """The isotropy constraint a^2 h^2 = 2 r s read modulo the
    decomposable index h^2: the modulus divides 2 r s."""
    return (2 * r * s) % modulus == 0


def distinct_prime_count(n: int) -> int:
    return len(prime_factors(n)) if n > 1 else 0


def fm_partner_count(n: int) -> int:
    """Number of Fourier-Mukai partners of a Picard-rank-one K3 with h^2 = 2n."""
    if n < 1:
        raise LatticeError("n must be positive")
    tau = distinct_prime_count(n)
    return 2 ** (tau - 1) if tau else 1


def pic_inverse_degree(c: int, n: int) -> int:
    """Least positive b with b c = 1 (mod n)."""
    if n < 1:
        raise LatticeError("n must be positive")
    if gcd(c, n) != 1:
        raise LatticeError(f"gcd({c}, {n}) != 1")
    return pow(c, -1, n) or 1


# Jacobian elliptic K3: fibre f and section S span [[0, 1], [1, -2]].
FIBRE_SECTION = IntMatrix([[0, 1], [1, -2]])


def fibre_section_lattice() -> IntegralLattice:
    return make_lattice(FIBRE_SECTION, ["f", "Sigma"])


def jacobian_mukai_lattice() -> AlgebraicMukaiLattice:
    return AlgebraicMukaiLattice(fibre_section_lattice())


def two_summand_lattice() -> IntegralLattice:
    return jacobian_mukai_lattice().as_lattice()


def jacobian_action_images(a: int, b: int, c: int, d: int) -> Tuple[MukaiVector, MukaiVector]:
    """Images of (1,0,0) and (0,0,1) under the SL_2 element [[c, a], [d, b]].

    (1,0,0) -> (0, a f, c) and (0,0,1) -> (b, d (f + Sigma), 0).
    """
    if c * b - a * d != 1:
        raise LatticeError(f"[[c, a], [d, b]] has determinant {c * b - a * d}, not 1")
    return MukaiVector(0, (a, 0), c), MukaiVector(b, (d, d), 0)
