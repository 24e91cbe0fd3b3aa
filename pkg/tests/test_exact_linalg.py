import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from k3arith.exact_linalg import (
    IntMatrix,
    RatMatrix,
    char_poly,
    determinant,
    extend_to_basis,
    inverse,
    kernel_basis,
    poly_eval_matrix,
    rank,
    signature,
    smith_normal_form,
    symmetric_diagonalization,
)


def cofactor_det(rows):
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    return sum(
        (-1) ** j * rows[0][j] * cofactor_det([r[:j] + r[j + 1:] for r in rows[1:]])
        for j in range(n)
        if rows[0][j]
    )


def matrices(max_n=4, lo=-9, hi=9, square=True):
    @st.composite
    def build(draw):
        n = draw(st.integers(1, max_n))
        m = n if square else draw(st.integers(1, max_n))
        return IntMatrix([[draw(st.integers(lo, hi)) for _ in range(m)] for _ in range(n)])

    return build()


def symmetric_matrices(max_n=5, lo=-6, hi=6):
    @st.composite
    def build(draw):
        n = draw(st.integers(1, max_n))
        g = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1):
                g[i][j] = g[j][i] = draw(st.integers(lo, hi))
        return IntMatrix(g)

    return build()


@pytest.mark.parametrize(
    "m, expected",
    [([[2, 13], [13, 12]], -145), ([[0, 1], [1, 0]], -1), ([[8, 15], [15, 10]], -145)],
)
def test_determinant_examples(m, expected):
    assert determinant(m) == expected


def test_determinant_rejects_non_square():
    with pytest.raises(ValueError):
        determinant([[1, 2, 3], [4, 5, 6]])


@given(matrices())
def test_determinant_matches_cofactor_expansion(m):
    assert determinant(m) == cofactor_det(m.tolist())


@pytest.mark.parametrize(
    "m, d",
    [([[2, 13], [13, 12]], (1, 145)), ([[0, 1], [1, 0]], (1, 1)), ([[-2]], (2,))],
)
def test_smith_examples(m, d):
    assert smith_normal_form(m)[0] == d


@settings(max_examples=150)
@given(matrices(max_n=5, square=False))
def test_smith_reconstructs_diagonal(m):
    d, U, V = smith_normal_form(m)
    D = U @ m @ V
    for i in range(D.nrows):
        for j in range(D.ncols):
            assert D[i, j] == (d[i] if i == j else 0)
    assert abs(determinant(U)) == 1 and abs(determinant(V)) == 1
    assert all(x >= 0 for x in d)
    nz = [x for x in d if x]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert d[len(nz):] == (0,) * (len(d) - len(nz))
    if m.is_square() and determinant(m):
        prod = 1
        for x in d:
            prod *= x
        assert prod == abs(determinant(m))


@pytest.mark.parametrize(
    "m, poly",
    [([[1, 0], [0, 1]], (1, -2, 1)), ([[1, 1], [0, 1]], (1, -2, 1)), ([[0, -1], [1, 0]], (1, 0, 1))],
)
def test_char_poly_examples(m, poly):
    assert char_poly(m) == poly


@given(matrices(max_n=6, lo=-5, hi=5))
def test_cayley_hamilton(m):
    assert poly_eval_matrix(char_poly(m), m).is_zero()


@settings(max_examples=40)
@given(matrices(max_n=5, lo=-5, hi=5))
def test_char_poly_matches_sympy(m):
    x = sympy.Symbol("x")
    expected = sympy.Matrix(m.tolist()).charpoly(x).all_coeffs()
    assert list(char_poly(m)) == [int(c) for c in expected]


@pytest.mark.parametrize(
    "g, sig",
    [([[0, 1], [1, 0]], (1, 1, 0)), ([[-2]], (0, 1, 0)), ([[2, 13], [13, 12]], (1, 1, 0)),
     ([[0, 0], [0, 0]], (0, 0, 2)), ([[0, 1, 0], [1, 0, 0], [0, 0, 0]], (1, 1, 1))],
)
def test_signature_examples(g, sig):
    assert signature(g) == sig


def test_signature_rejects_asymmetric():
    with pytest.raises(ValueError):
        signature([[0, 1], [2, 0]])


@settings(max_examples=60)
@given(symmetric_matrices(max_n=4))
def test_signature_matches_sympy_eigenvalues(g):
    evs = sympy.Matrix(g.tolist()).eigenvals()
    plus = minus = zero = 0
    for ev, mult in evs.items():
        val = sympy.re(sympy.N(ev, 50))
        if ev == 0:
            zero += mult
        elif val > 0:
            plus += mult
        else:
            minus += mult
    assert signature(g) == (plus, minus, zero)


@given(symmetric_matrices(max_n=3), symmetric_matrices(max_n=3))
def test_signature_additive_on_direct_sums(a, b):
    s = signature(IntMatrix.block_diag(a, b))
    assert s == tuple(x + y for x, y in zip(signature(a), signature(b)))
    assert sum(s) == a.nrows + b.nrows


@given(symmetric_matrices(max_n=5))
def test_diagonalization_preserves_determinant(g):
    prod = Fraction(1)
    for x in symmetric_diagonalization(g):
        prod *= x
    # congruence by unimodular (row-add / swap) operations only
    assert prod == determinant(g)


@given(matrices(max_n=4, square=False))
def test_kernel_basis_is_saturated_kernel(m):
    K = kernel_basis(m)
    for v in K:
        assert not any(m @ v)
    assert len(K) == m.ncols - rank(m)
    if K:
        d, _, _ = smith_normal_form(IntMatrix.from_columns(K, m.ncols))
        assert all(x == 1 for x in d)


@given(matrices(max_n=4))
def test_inverse_roundtrip(m):
    if determinant(m) == 0:
        with pytest.raises(ZeroDivisionError):
            inverse(m)
        return
    inv = inverse(m)
    prod = RatMatrix.from_int(m) @ inv
    assert prod == RatMatrix.from_int(IntMatrix.identity(m.nrows))


def test_ratmatrix_normalizes():
    r = RatMatrix(IntMatrix([[2, 4], [6, 0]]), 4)
    assert r.denominator == 2 and r.numerators == IntMatrix([[1, 2], [3, 0]])
    assert RatMatrix(IntMatrix([[0, 0]]), 7).denominator == 1
    assert r.content() == Fraction(1, 2)


def test_extend_to_basis():
    rng = random.Random(3)
    for _ in range(50):
        v = [rng.randint(-20, 20) for _ in range(3)]
        from math import gcd

        g = gcd(gcd(v[0], v[1]), v[2])
        if g == 0:
            continue
        v = [x // g for x in v]
        P = extend_to_basis(v)
        assert P.col(0) == tuple(v) and abs(determinant(P)) == 1
    with pytest.raises(ValueError):
        extend_to_basis([2, 4])


def test_matrix_power_and_shape_errors():
    T = IntMatrix([[1, 1], [0, 1]])
    assert T ** 5 == IntMatrix([[1, 5], [0, 1]])
    with pytest.raises(ValueError):
        IntMatrix([[1, 2], [3]])
    with pytest.raises(ValueError):
        T @ IntMatrix([[1, 2, 3]])
