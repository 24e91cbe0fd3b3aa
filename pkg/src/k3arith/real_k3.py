"""Nikulin invariants of lattice involutions and real K3 topology.

Involutions act on column coordinate vectors: x -> M x.  The caller supplies
the action on H^2 in whatever sign convention the application uses; this
module is purely lattice-theoretic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

from .exact_linalg import IntMatrix, kernel_basis
from .lattice import IntegralLattice, LatticeError, discriminant_group, zero_lattice
from .mukai import MUKAI_HYPERBOLIC


@dataclass(frozen=True)
class LatticeInvolution:
    lattice: IntegralLattice
    matrix: IntMatrix

    def __post_init__(self):
        M = self.matrix if isinstance(self.matrix, IntMatrix) else IntMatrix(self.matrix)
        object.__setattr__(self, "matrix", M)
        n = self.lattice.rank
        if M.shape != (n, n):
            raise LatticeError(f"involution matrix has shape {M.shape}, lattice rank is {n}")
        if M @ M != IntMatrix.identity(n):
            raise LatticeError("matrix does not square to the identity")
        G = self.lattice.gram
        if M.T @ G @ M != G:
            raise LatticeError("matrix is not an isometry of the lattice")

    @classmethod
    def from_json(cls, doc: dict) -> "LatticeInvolution":
        from .lattice import lattice_from_json

        return cls(lattice_from_json(doc["lattice"]), IntMatrix(doc["matrix"]))


@dataclass(frozen=True)
class RealInvariants:
    r: int
    a: int
    delta: int

    def as_tuple(self) -> Tuple[int, int, int]:
        return (self.r, self.a, self.delta)


@dataclass(frozen=True)
class TopologicalType:
    kind: str  # "empty", "two_tori" or "general"
    g: Optional[int] = None
    k: Optional[int] = None

    def euler_characteristic(self) -> int:
        if self.kind != "general":
            return 0
        return 2 - 2 * self.g + 2 * self.k

    def describe(self) -> str:
        if self.kind == "empty":
            return "empty"
        if self.kind == "two_tori":
            return "T_1 + T_1"
        spheres = f" + {self.k} x T_0" if self.k else ""
        return f"T_{self.g}{spheres}"


def _eigen(inv: LatticeInvolution, sign: int) -> IntegralLattice:
    n = inv.lattice.rank
    basis = kernel_basis(inv.matrix - IntMatrix.identity(n).scale(sign))
    if not basis:
        return zero_lattice()
    return inv.lattice.sublattice(basis)


def eigenlattices(inv: LatticeInvolution) -> Tuple[IntegralLattice, IntegralLattice]:
    """(Lambda_+, Lambda_-) as saturated sublattices with induced forms."""
    plus, minus = _eigen(inv, 1), _eigen(inv, -1)
    assert plus.rank + minus.rank == inv.lattice.rank
    return plus, minus


def _two_elementary_length(L: IntegralLattice, name: str) -> int:
    if L.rank == 0:
        return 0
    dg = discriminant_group(L)
    if not dg.is_two_elementary():
        raise LatticeError(f"discriminant group of {name} is not 2-elementary: {dg.elementary_divisors}")
    return dg.length


def delta_invariant(inv: LatticeInvolution) -> int:
    """0 iff (x, M x) is even for every x; checking a basis suffices."""
    GM = inv.lattice.gram @ inv.matrix
    return 0 if all(GM[i, i] % 2 == 0 for i in range(inv.lattice.rank)) else 1


def real_invariants(inv: LatticeInvolution) -> RealInvariants:
    plus, minus = eigenlattices(inv)
    a = _two_elementary_length(minus, "Lambda_-")
    a_plus = _two_elementary_length(plus, "Lambda_+")
    if inv.lattice.is_unimodular() and a_plus != a:
        raise LatticeError(f"eigenlattice discriminant lengths differ: {a_plus} vs {a}")
    return RealInvariants(minus.rank, a, delta_invariant(inv))


def extend_to_mukai(inv: LatticeInvolution) -> LatticeInvolution:
    """Act by -1 on an added H^0 + H^4 hyperbolic block."""
    G = IntMatrix.block_diag(inv.lattice.gram, MUKAI_HYPERBOLIC)
    labels = None
    if inv.lattice.labels:
        labels = [*inv.lattice.labels, "H0", "H4"]
    M = IntMatrix.block_diag(inv.matrix, -IntMatrix.identity(2))
    return LatticeInvolution(IntegralLattice(G, labels), M)


def topological_type(ri: RealInvariants) -> TopologicalType:
    """Topology of the real locus from (r, a, delta)."""
    r, a, delta = ri.as_tuple()
    if (r, a, delta) == (10, 10, 0):
        return TopologicalType("empty")
    if (r, a, delta) == (10, 8, 0):
        return TopologicalType("two_tori")
    if delta not in (0, 1) or r < 0 or a < 0:
        raise LatticeError(f"invalid invariants {(r, a, delta)}")
    if (22 - r - a) % 2 or (r - a) % 2 or r + a > 22 or a > r:
        raise LatticeError(f"(r, a) = {(r, a)} gives non-integral or negative genus/sphere count")
    return TopologicalType("general", (22 - r - a) // 2, (r - a) // 2)
