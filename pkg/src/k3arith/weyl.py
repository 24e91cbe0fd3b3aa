"""Root systems in negative-definite sublattices and Weyl-group membership.

Roots have norm -2, so the reflection in a root alpha is
x -> x + (x, alpha) alpha on the whole ambient lattice.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import count
from typing import List, Optional, Sequence, Tuple

from .exact_linalg import IntMatrix, Vector, as_matrix, inverse, rank
from .lattice import IntegralLattice, LatticeError, enumerate_norm_vectors, orthogonal_complement_basis


@dataclass(frozen=True)
class RootSystemContext:
    ambient: IntegralLattice
    generators: Tuple[Vector, ...]
    roots: Tuple[Vector, ...]  # ambient coordinates, sorted
    positive_roots: Tuple[Vector, ...]
    simple_roots: Tuple[Vector, ...]


def reflection_matrix(ambient: IntegralLattice, root: Sequence[int]) -> IntMatrix:
    """Matrix of x -> x + (x, root) root (root of norm -2)."""
    if ambient.evaluate(root) != -2:
        raise LatticeError(f"{tuple(root)} is not a root (norm {ambient.evaluate(root)})")
    n = ambient.rank
    Ga = ambient.gram @ tuple(root)
    return IntMatrix(
        ((1 if i == j else 0) + root[i] * Ga[j] for j in range(n)) for i in range(n)
    )


def _functionals(dim: int):
    # Deterministic sequence of candidate functionals (1, k, k^2, ...).
    for k in count(2):
        yield tuple(k ** i for i in range(dim))


def build_root_context(ambient: IntegralLattice, generators: Sequence[Sequence[int]]) -> RootSystemContext:
    gens = [ambient._check(g) for g in generators]
    if not gens:
        raise LatticeError("no generators given")
    if rank(IntMatrix(gens)) < len(gens):
        raise LatticeError("generators are linearly dependent")
    sub = ambient.sublattice(gens)
    if not sub.is_negative_definite():
        raise LatticeError("generators do not span a negative-definite sublattice")
    local = enumerate_norm_vectors(sub, -2)
    if not local:
        raise LatticeError("sublattice contains no vectors of norm -2")
    B = IntMatrix.from_columns(gens, ambient.rank)
    for w in _functionals(len(gens)):
        values = [sum(a * b for a, b in zip(w, x)) for x in local]
        if all(values):
            break
    positive_local = [x for x, v in zip(local, values) if v > 0]
    pos_set = set(positive_local)
    simple_local = [
        x for x in positive_local
        if not any(tuple(a - b for a, b in zip(x, y)) in pos_set for y in positive_local)
    ]
    embed = lambda xs: tuple(sorted(B @ x for x in xs))
    return RootSystemContext(ambient, tuple(gens), embed(local), embed(positive_local), embed(simple_local))


def _pair(G: IntMatrix, x: Sequence, y: Sequence):
    return sum(a * b for a, b in zip(x, G @ tuple(y)))


def chamber_point(ctx: RootSystemContext) -> Tuple[Fraction, ...]:
    """x in the root span with (x, alpha) = -1 for every simple root alpha,
    i.e. the sum of fundamental coweights for the positive form -G."""
    S = ctx.simple_roots
    G = ctx.ambient.gram
    cartan = IntMatrix([[-_pair(G, a, b) for b in S] for a in S])
    coeffs = [sum(row) for row in inverse(cartan).fractions()]
    n = ctx.ambient.rank
    return tuple(sum(c * a[i] for c, a in zip(coeffs, S)) for i in range(n))


def compose_word(ctx: RootSystemContext, word: Sequence[int]) -> IntMatrix:
    """s_{w[0]} s_{w[1]} ... as an ambient matrix."""
    out = IntMatrix.identity(ctx.ambient.rank)
    for i in word:
        out = out @ reflection_matrix(ctx.ambient, ctx.simple_roots[i])
    return out


def weyl_membership(ctx: RootSystemContext, T) -> Optional[Tuple[int, ...]]:
    """Word (indices into ``simple_roots``) whose product of simple
    reflections equals T, or None when T is not in the Weyl group."""
    T = as_matrix(T)
    G = ctx.ambient.gram
    if T.shape != G.shape or T.T @ G @ T != G:
        raise LatticeError("matrix is not an isometry of the ambient lattice")
    for c in orthogonal_complement_basis(ctx.ambient, ctx.simple_roots):
        if T @ c != c:
            raise LatticeError("matrix moves the orthogonal complement of the root lattice")
    roots = set(ctx.roots)
    if {T @ r for r in ctx.roots} != roots:
        return None
    x = chamber_point(ctx)
    y = list(T @ x)
    word: List[int] = []
    S = ctx.simple_roots
    for _ in range(len(ctx.positive_roots) + 1):
        # y is in the chamber iff (y, alpha) < 0 for all simple alpha
        i = next((i for i, a in enumerate(S) if _pair(G, a, y) > 0), None)
        if i is None:
            break
        t = _pair(G, y, S[i])
        y = [yi + t * ai for yi, ai in zip(y, S[i])]
        word.append(i)
    else:
        raise LatticeError("chamber reduction did not terminate")
    # word = (i1, ..., ik) with s_ik ... s_i1 T fixing the chamber.
    if compose_word(ctx, list(reversed(word))) @ T != IntMatrix.identity(T.nrows):
        return None
    return tuple(word)
