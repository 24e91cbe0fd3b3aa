"""Independent brute-force oracles shared by the test modules."""

from itertools import product

from k3arith.exact_linalg import IntMatrix

import numpy as np


def has_zero_in_box(gram, bound):
    """Whether x^T G x = 0 for some nonzero integer x with |x_i| <= bound."""
    G = np.array(gram, dtype=np.int64)
    n = G.shape[0]
    r = np.arange(-bound, bound + 1, dtype=np.int64)
    if n <= 3:
        grids = np.meshgrid(*([r] * n), indexing="ij")
        X = np.stack([g.ravel() for g in grids])
        q = np.einsum("ik,ij,jk->k", X, G, X)
        nz = X.any(axis=0)
        return bool(np.any((q == 0) & nz))
    # split off the last coordinate; by symmetry x -> -x it can be taken >= 0
    head = G[: n - 1, : n - 1]
    grids = np.meshgrid(*([r] * (n - 1)), indexing="ij")
    X = np.stack([g.ravel() for g in grids])
    q0 = np.einsum("ik,ij,jk->k", X, head, X)
    lin = 2 * (G[n - 1, : n - 1] @ X)
    nz = X.any(axis=0)
    for t in range(0, bound + 1):
        q = q0 + t * lin + t * t * G[n - 1, n - 1]
        mask = q == 0
        if t == 0:
            mask &= nz
        if np.any(mask):
            return True
    return False


def box_vectors(gram, value, bound):
    """All x with |x_i| <= bound and x^T G x == value."""
    n = len(gram)
    out = []
    for x in product(range(-bound, bound + 1), repeat=n):
        if sum(x[i] * gram[i][j] * x[j] for i in range(n) for j in range(n)) == value:
            out.append(x)
    return sorted(out)


def brute_gl2_equivalent(f, g, bound):
    """Search B in GL_2(Z), |entries| <= bound, with f(B x) = g(x).

    f, g are coefficient triples (a, b, c) of a x^2 + b x y + c y^2.
    """
    a, b, c = f
    r = np.arange(-bound, bound + 1, dtype=np.int64)
    P, R = np.meshgrid(r, r, indexing="ij")
    P, R = P.ravel(), R.ravel()
    vals = a * P * P + b * P * R + c * R * R
    first = np.nonzero(vals == g[0])[0]
    second = np.nonzero(vals == g[2])[0]
    if len(first) == 0 or len(second) == 0:
        return False
    p, q = P[first][:, None], P[second][None, :]
    rr, s = R[first][:, None], R[second][None, :]
    det = p * s - q * rr
    mid = 2 * a * p * q + b * (p * s + q * rr) + 2 * c * rr * s
    return bool(np.any((np.abs(det) == 1) & (mid == g[1])))


def brute_represents(gram, n, bound):
    """Some x with |x_i| <= bound and x^T G x = n, or None."""
    G = np.array(gram, dtype=np.int64)
    r = np.arange(-bound, bound + 1, dtype=np.int64)
    X, Y = np.meshgrid(r, r, indexing="ij")
    q = G[0, 0] * X * X + 2 * G[0, 1] * X * Y + G[1, 1] * Y * Y
    hits = np.argwhere(q == n)
    if len(hits) == 0:
        return None
    i, j = hits[0]
    return int(r[i]), int(r[j])


def closure(generators):
    """The finite matrix group generated by ``generators``, by breadth-first search."""
    n = generators[0].nrows
    seen = {IntMatrix.identity(n)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for g in frontier:
            for s in generators:
                h = g @ s
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return seen
