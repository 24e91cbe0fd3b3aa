"""Integral quadratic lattices and their invariants."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import floor, isqrt
from typing import Dict, List, Optional, Sequence, Tuple

from .exact_linalg import (
    IntMatrix,
    Vector,
    as_matrix,
    determinant,
    kernel_basis,
    rank,
    signature,
    smith_normal_form,
    symmetric_diagonalization,
)
from .local import Place, hasse_invariant, hilbert_symbol, is_perfect_square, places_for, square_class


class LatticeError(ValueError):
    """Invalid lattice data or a violated precondition."""


class IntegralLattice:
    """Lattice given by a symmetric integer Gram matrix.

    ``make_lattice`` is the validating entry point and rejects degenerate
    Gram matrices.  Degenerate lattices can still arise internally, for
    example as the orthogonal complement of an isotropic vector.
    """

    __slots__ = ("gram", "labels")

    def __init__(self, gram, labels: Optional[Sequence[str]] = None, *, allow_degenerate: bool = False):
        gram = as_matrix(gram)
        if not gram.is_symmetric():
            raise LatticeError("Gram matrix is not symmetric")
        if not allow_degenerate and determinant(gram) == 0:
            raise LatticeError("Gram matrix is degenerate (determinant 0)")
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != gram.nrows:
                raise LatticeError(f"{len(labels)} labels for a rank-{gram.nrows} lattice")
        self.gram = gram
        self.labels = labels

    @property
    def rank(self) -> int:
        return self.gram.nrows

    @property
    def det(self) -> int:
        return determinant(self.gram)

    def is_even(self) -> bool:
        return all(self.gram[i, i] % 2 == 0 for i in range(self.rank))

    def is_degenerate(self) -> bool:
        return self.det == 0

    def is_unimodular(self) -> bool:
        return abs(self.det) == 1

    def signature(self) -> Tuple[int, int, int]:
        return signature(self.gram)

    def is_negative_definite(self) -> bool:
        return self.signature()[1] == self.rank

    def is_positive_definite(self) -> bool:
        return self.signature()[0] == self.rank

    def is_indefinite(self) -> bool:
        p, m, _ = self.signature()
        return p > 0 and m > 0

    def _check(self, x) -> Vector:
        x = tuple(int(t) for t in x)
        if len(x) != self.rank:
            raise LatticeError(f"vector of length {len(x)} in a rank-{self.rank} lattice")
        return x

    def evaluate(self, x) -> int:
        x = self._check(x)
        return sum(a * b for a, b in zip(x, self.gram @ x))

    def pairing(self, x, y) -> int:
        x, y = self._check(x), self._check(y)
        return sum(a * b for a, b in zip(x, self.gram @ y))

    def sublattice(self, basis: Sequence[Sequence[int]], labels=None, *, allow_degenerate=True) -> "IntegralLattice":
        """Lattice spanned by ``basis`` (ambient coordinates) with the induced form."""
        B = IntMatrix.from_columns([self._check(b) for b in basis], self.rank)
        return IntegralLattice(B.T @ self.gram @ B, labels, allow_degenerate=allow_degenerate)

    def __eq__(self, other) -> bool:
        return isinstance(other, IntegralLattice) and self.gram == other.gram

    def __hash__(self) -> int:
        return hash(self.gram)

    def __repr__(self) -> str:
        lab = f", labels={list(self.labels)!r}" if self.labels else ""
        return f"IntegralLattice({self.gram.tolist()!r}{lab})"

    def to_json(self) -> dict:
        doc = {"gram": self.gram.tolist()}
        if self.labels:
            doc["labels"] = list(self.labels)
        return doc


def make_lattice(gram, labels: Optional[Sequence[str]] = None) -> IntegralLattice:
    return IntegralLattice(gram, labels)


def lattice_from_json(doc: dict) -> IntegralLattice:
    if "gram" not in doc:
        raise LatticeError("lattice document needs a 'gram' field")
    return make_lattice(doc["gram"], doc.get("labels"))


def hyperbolic_plane() -> IntegralLattice:
    return make_lattice([[0, 1], [1, 0]], ["e", "f"])


def diagonal_lattice(*entries: int) -> IntegralLattice:
    n = len(entries)
    return make_lattice([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])


def direct_sum(*lattices: IntegralLattice) -> IntegralLattice:
    labels = None
    if all(L.labels for L in lattices if L.rank):
        labels = [lab for L in lattices if L.rank for lab in L.labels]
    degenerate = any(L.is_degenerate() for L in lattices)
    return IntegralLattice(
        IntMatrix.block_diag(*(L.gram for L in lattices)), labels or None, allow_degenerate=degenerate
    )


def zero_lattice() -> IntegralLattice:
    return IntegralLattice(IntMatrix.zeros(0, 0))


# ---------------------------------------------------------------------------
# discriminant groups and local invariants


@dataclass(frozen=True)
class DiscriminantGroup:
    elementary_divisors: Tuple[int, ...]

    @property
    def order(self) -> int:
        out = 1
        for d in self.elementary_divisors:
            out *= d
        return out

    def is_two_elementary(self) -> bool:
        return all(d == 2 for d in self.elementary_divisors)

    @property
    def length(self) -> int:
        return len(self.elementary_divisors)


def discriminant_group(L: IntegralLattice) -> DiscriminantGroup:
    if L.is_degenerate():
        raise LatticeError("discriminant group of a degenerate lattice is infinite")
    d, _, _ = smith_normal_form(L.gram)
    return DiscriminantGroup(tuple(x for x in d if x > 1))


@dataclass(frozen=True)
class LocalInvariants:
    signature: Tuple[int, int]
    det_square_class: Dict[Place, Tuple[int, int]] = field(hash=False)
    hasse: Dict[Place, int] = field(hash=False)

    def to_json(self) -> dict:
        key = lambda v: str(v)
        return {
            "signature": list(self.signature),
            "det_square_class": {key(v): list(c) for v, c in self.det_square_class.items()},
            "hasse": {key(v): h for v, h in self.hasse.items()},
        }


def local_invariants(L: IntegralLattice) -> LocalInvariants:
    if L.is_degenerate():
        raise LatticeError("local invariants need a nondegenerate lattice")
    diag = symmetric_diagonalization(L.gram)
    det = L.det
    places = places_for(det)
    p, m, _ = L.signature()
    return LocalInvariants(
        signature=(p, m),
        det_square_class={v: square_class(det, v) for v in places},
        hasse={v: hasse_invariant(diag, v) for v in places},
    )


def genus_equal(L: IntegralLattice, M: IntegralLattice) -> bool:
    """Compare the genus fingerprint: rank, parity, signature, discriminant
    group, and determinant square class plus Hasse symbol at every place
    dividing 2*det and at infinity.

    This is exact for odd determinant; for even determinant it does not use
    the full 2-adic Conway-Sloane symbol and may identify distinct genera.
    """
    if L.rank != M.rank or L.is_even() != M.is_even():
        return False
    if discriminant_group(L) != discriminant_group(M):
        return False
    a, b = local_invariants(L), local_invariants(M)
    return a.signature == b.signature and a.det_square_class == b.det_square_class and a.hasse == b.hasse


# ---------------------------------------------------------------------------
# isotropy


def is_isotropic_rational(L: IntegralLattice) -> bool:
    """Whether the form represents zero nontrivially over Q."""
    if L.is_degenerate():
        raise LatticeError("isotropy test needs a nondegenerate lattice")
    n = L.rank
    if n <= 1:
        return False
    if n == 2:
        return is_perfect_square(-L.det)
    if not L.is_indefinite():
        return False
    if n >= 5:
        return True
    diag = symmetric_diagonalization(L.gram)
    d = L.det
    for p in places_for(d)[:-1]:
        eps = hasse_invariant(diag, p)
        if n == 3:
            if hilbert_symbol(-1, -d, p) != eps:
                return False
        else:
            if square_class(d, p) == (0, 1) and eps != hilbert_symbol(-1, -1, p):
                return False
    return True


# ---------------------------------------------------------------------------
# orthogonal complements


def orthogonal_complement_basis(L: IntegralLattice, S: Sequence[Sequence[int]]) -> List[Vector]:
    S = [L._check(s) for s in S]
    if not S:
        return [tuple(int(i == j) for j in range(L.rank)) for i in range(L.rank)]
    if rank(IntMatrix(S)) < len(S):
        raise LatticeError("sublattice generators are linearly dependent")
    A = IntMatrix([L.gram @ s for s in S])
    return kernel_basis(A)


def orthogonal_complement(L: IntegralLattice, S: Sequence[Sequence[int]]) -> IntegralLattice:
    """Saturated sublattice of vectors orthogonal to every vector in S.

    May be degenerate when the span of S contains isotropic vectors.
    """
    basis = orthogonal_complement_basis(L, S)
    if not basis:
        return zero_lattice()
    return L.sublattice(basis)


# ---------------------------------------------------------------------------
# short vectors


def _ldl(q: IntMatrix) -> Tuple[List[Fraction], List[List[Fraction]]]:
    """q = L diag(D) L^T with L unit lower triangular (q positive definite)."""
    n = q.nrows
    Lm = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    D: List[Fraction] = []
    for j in range(n):
        dj = Fraction(q[j, j]) - sum(Lm[j][k] ** 2 * D[k] for k in range(j))
        if dj <= 0:
            raise LatticeError("form is not definite")
        D.append(dj)
        for i in range(j + 1, n):
            Lm[i][j] = (q[i, j] - sum(Lm[i][k] * Lm[j][k] * D[k] for k in range(j))) / dj
    return D, Lm


def short_vectors(q: IntMatrix, bound: int) -> List[Vector]:
    """All x with 0 < x^T q x <= bound for positive-definite q (Fincke-Pohst)."""
    n = q.nrows
    D, Lm = _ldl(q)
    out: List[Vector] = []
    x = [0] * n

    def rec(i: int, budget: Fraction) -> None:
        if i < 0:
            if any(x):
                out.append(tuple(x))
            return
        center = -sum(Lm[j][i] * x[j] for j in range(i + 1, n))
        t = budget / D[i]
        r = isqrt(floor(t)) + 1
        c0 = floor(center)
        for xi in range(c0 - r, c0 + r + 2):
            dev = (xi - center) ** 2
            if dev <= t:
                x[i] = xi
                rec(i - 1, budget - D[i] * dev)
        x[i] = 0

    rec(n - 1, Fraction(bound))
    return out


def enumerate_norm_vectors(L: IntegralLattice, n: int) -> List[Vector]:
    """All vectors of norm n < 0 in a negative-definite lattice, sorted."""
    if L.rank == 0:
        return []
    if not L.is_negative_definite():
        raise LatticeError("lattice is not negative definite")
    if n >= 0:
        raise LatticeError("norm must be negative")
    q = -L.gram
    return sorted(v for v in short_vectors(q, -n) if L.evaluate(v) == n)
