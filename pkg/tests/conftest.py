import random

import pytest

from k3arith.exact_linalg import IntMatrix, determinant, unimodular_inverse
from k3arith.lattice import hyperbolic_plane, make_lattice
from k3arith.real_k3 import LatticeInvolution


@pytest.fixture
def pix():
    return make_lattice([[2, 13], [13, 12]], ["C", "f"])


@pytest.fixture
def piy():
    return make_lattice([[8, 15], [15, 10]], ["D", "g"])


@pytest.fixture
def U():
    return hyperbolic_plane()


@pytest.fixture
def fsigma():
    return make_lattice([[0, 1], [1, -2]], ["f", "Sigma"])


@pytest.fixture
def ex14():
    return make_lattice([[6, 2], [2, -2]], ["g", "C"])


@pytest.fixture
def twosummand():
    return make_lattice(
        [[0, -1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, -2]], ["H0", "H4", "f", "Sigma"]
    )


D4_GRAM = [[-2, 1, 0, 0], [1, -2, 1, 1], [0, 1, -2, 0], [0, 1, 0, -2]]
A2_GRAM = [[-2, 1], [1, -2]]


def random_unimodular(rng: random.Random, n: int, steps: int = 12, bound: int = 2) -> IntMatrix:
    """Product of random elementary matrices and sign flips."""
    P = IntMatrix.identity(n).tolist()
    for _ in range(steps):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i != j:
            k = rng.randint(-bound, bound)
            for row in P:
                row[j] += k * row[i]
        if rng.random() < 0.2:
            for row in P:
                row[i] = -row[i]
    return IntMatrix(P)


def random_even_lattice(rng: random.Random, n: int, bound: int = 6):
    """Random nondegenerate even lattice of rank n."""
    while True:
        g = [[0] * n for _ in range(n)]
        for i in range(n):
            g[i][i] = 2 * rng.randint(-bound // 2, bound // 2)
            for j in range(i):
                g[i][j] = g[j][i] = rng.randint(-bound, bound)
        G = IntMatrix(g)
        if determinant(G) != 0:
            return make_lattice(G)


U_GRAM = [[0, 1], [1, 0]]
BLOCKS = [
    (U_GRAM, [[1, 0], [0, 1]]),
    (U_GRAM, [[-1, 0], [0, -1]]),
    (U_GRAM, [[0, 1], [1, 0]]),
    ([[2]], [[1]]),
    ([[2]], [[-1]]),
    ([[-2]], [[1]]),
    ([[-2]], [[-1]]),
    ([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]],
     [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]),
]


def random_involution(rng, max_rank=6):
    """Block sum of small involutions, rebased by a random unimodular matrix.

    Returns the involution and the unrebased (Gram, matrix) pair.
    """
    grams, mats, n = [], [], 0
    while True:
        G, M = rng.choice(BLOCKS)
        if n + len(G) > max_rank:
            break
        grams.append(IntMatrix(G))
        mats.append(IntMatrix(M))
        n += len(G)
        if rng.random() < 0.3:
            break
    G, M = IntMatrix.block_diag(*grams), IntMatrix.block_diag(*mats)
    P = random_unimodular(rng, n, steps=10, bound=2)
    return LatticeInvolution(make_lattice(P.T @ G @ P), unimodular_inverse(P) @ M @ P), (G, M)


# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
