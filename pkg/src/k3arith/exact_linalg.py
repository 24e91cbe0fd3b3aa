"""Exact integer and rational matrix kernel.

Everything here works on Python ints and :class:`fractions.Fraction`; there is
no floating point anywhere.  Matrices are small (rank <= ~30), so the
algorithms favour clarity over asymptotics.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, List, Sequence, Tuple

Vector = Tuple[int, ...]


class IntMatrix:
    """Immutable integer matrix stored as a tuple of row tuples."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable[int]], ncols: int | None = None):
        rows = tuple(tuple(int(x) for x in row) for row in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for row in rows:
            if len(row) != ncols:
                raise ValueError("ragged matrix rows")
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols

    # -- constructors -------------------------------------------------------
    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(((1 if i == j else 0) for j in range(n)) for i in range(n)) if n else cls((), 0)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "IntMatrix":
        return cls(((0,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def from_entries(cls, entries: Sequence[int], nrows: int, ncols: int) -> "IntMatrix":
        if len(entries) != nrows * ncols:
            raise ValueError("entry count does not match shape")
        return cls((entries[i * ncols:(i + 1) * ncols] for i in range(nrows)), ncols)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[int]], nrows: int | None = None) -> "IntMatrix":
        if not cols:
            return cls.zeros(nrows or 0, 0)
        return cls(zip(*cols), len(cols))

    @classmethod
    def block_diag(cls, *blocks: "IntMatrix") -> "IntMatrix":
        n = sum(b.nrows for b in blocks)
        m = sum(b.ncols for b in blocks)
        out = [[0] * m for _ in range(n)]
        r = c = 0
        for b in blocks:
            for i, row in enumerate(b.rows):
                out[r + i][c:c + b.ncols] = row
            r += b.nrows
            c += b.ncols
        return cls(out, m)

    # -- accessors ----------------------------------------------------------
    @property
    def entries(self) -> Tuple[int, ...]:
        return tuple(x for row in self.rows for x in row)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij: Tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]

    def col(self, j: int) -> Vector:
        return tuple(row[j] for row in self.rows)

    def columns(self) -> List[Vector]:
        return [self.col(j) for j in range(self.ncols)]

    def tolist(self) -> List[List[int]]:
        return [list(r) for r in self.rows]

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_symmetric(self) -> bool:
        return self.is_square() and all(
            self.rows[i][j] == self.rows[j][i] for i in range(self.nrows) for j in range(i)
        )

    def is_zero(self) -> bool:
        return not any(self.entries)

    def trace(self) -> int:
        _require_square(self)
        return sum(self.rows[i][i] for i in range(self.nrows))

    # -- arithmetic ---------------------------------------------------------
    @property
    def T(self) -> "IntMatrix":
        return IntMatrix(zip(*self.rows), self.nrows) if self.nrows else IntMatrix.zeros(self.ncols, 0)

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            cols = other.columns()
            return IntMatrix(
                (tuple(sum(a * b for a, b in zip(row, c)) for c in cols) for row in self.rows),
                other.ncols,
            )
        v = tuple(other)
        if len(v) != self.ncols:
            raise ValueError(f"vector of length {len(v)} does not fit {self.shape}")
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self.rows)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix((tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)), self.ncols)

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def __neg__(self) -> "IntMatrix":
        return self.scale(-1)

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix((tuple(k * a for a in r) for r in self.rows), self.ncols)

    def __pow__(self, k: int) -> "IntMatrix":
        _require_square(self)
        if k < 0:
            raise ValueError("negative powers are not supported on IntMatrix")
        result = IntMatrix.identity(self.nrows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        return isinstance(other, IntMatrix) and self.shape == other.shape and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.shape, self.rows))

    def __repr__(self) -> str:
        return f"IntMatrix({self.tolist()!r})"

    def content(self) -> int:
        """gcd of all entries (0 for the zero matrix)."""
        return reduce(gcd, self.entries, 0)


class RatMatrix:
    """Rational matrix as integer numerators over one reduced positive denominator."""

    __slots__ = ("numerators", "denominator")

    def __init__(self, numerators: IntMatrix, denominator: int = 1):
        if denominator == 0:
            raise ZeroDivisionError("zero denominator")
        if denominator < 0:
            numerators, denominator = -numerators, -denominator
        g = gcd(numerators.content(), denominator)
        if numerators.is_zero():
            g = denominator
        if g > 1:
            numerators = IntMatrix(
                (tuple(x // g for x in row) for row in numerators.rows), numerators.ncols
            )
            denominator //= g
        self.numerators = numerators
        self.denominator = denominator

    @classmethod
    def from_fractions(cls, rows: Sequence[Sequence[Fraction]]) -> "RatMatrix":
        rows = [[Fraction(x) for x in r] for r in rows]
        den = reduce(_lcm, (x.denominator for r in rows for x in r), 1)
        ncols = len(rows[0]) if rows else 0
        return cls(IntMatrix(([int(x * den) for x in r] for r in rows), ncols), den)

    @classmethod
    def from_int(cls, m: IntMatrix) -> "RatMatrix":
        return cls(m, 1)

    def fractions(self) -> List[List[Fraction]]:
        return [[Fraction(x, self.denominator) for x in r] for r in self.numerators.rows]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.numerators.shape

    def is_integral(self) -> bool:
        return self.denominator == 1

    def to_int(self) -> IntMatrix:
        if not self.is_integral():
            raise ValueError("matrix has non-integral entries")
        return self.numerators

    def content(self) -> Fraction:
        """The positive rational c with self / c integral and primitive."""
        return Fraction(self.numerators.content(), self.denominator)

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        den = _lcm(self.denominator, other.denominator)
        a = self.numerators.scale(den // self.denominator)
        b = other.numerators.scale(den // other.denominator)
        return RatMatrix(a + b, den)

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        return self + RatMatrix(-other.numerators, other.denominator)

    def scale(self, k: Fraction | int) -> "RatMatrix":
        k = Fraction(k)
        return RatMatrix(self.numerators.scale(k.numerator), self.denominator * k.denominator)

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        return RatMatrix(self.numerators @ other.numerators, self.denominator * other.denominator)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RatMatrix)
            and self.numerators == other.numerators
            and self.denominator == other.denominator
        )

    def __hash__(self) -> int:
        return hash((self.numerators, self.denominator))

    def __repr__(self) -> str:
        return f"RatMatrix({self.numerators.tolist()!r}, {self.denominator})"


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b if a and b else 0


def _require_square(m: IntMatrix) -> None:
    if not m.is_square():
        raise ValueError(f"square matrix required, got shape {m.shape}")


def as_matrix(m) -> IntMatrix:
    return m if isinstance(m, IntMatrix) else IntMatrix(m)


def determinant(m) -> int:
    """Fraction-free Bareiss elimination."""
    m = as_matrix(m)
    _require_square(m)
    n = m.nrows
    if n == 0:
        return 1
    a = m.tolist()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def smith_normal_form(m) -> Tuple[Tuple[int, ...], IntMatrix, IntMatrix]:
    """Return ``(d, U, V)`` with ``U @ m @ V`` diagonal, ``d[i] | d[i+1]``.

    ``d`` has ``min(nrows, ncols)`` entries, zeros last.  ``U`` and ``V`` are
    unimodular.
    """
    m = as_matrix(m)
    nr, nc = m.shape
    a = m.tolist()
    U = IntMatrix.identity(nr).tolist()
    V = IntMatrix.identity(nc).tolist()

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row dst += k * row src
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        U[dst] = [x + k * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, k):
        for row in a:
            row[dst] += k * row[src]
        for row in V:
            row[dst] += k * row[src]

    for t in range(min(nr, nc)):
        while True:
            nz = [(abs(a[i][j]), i, j) for i in range(t, nr) for j in range(t, nc) if a[i][j]]
            if not nz:
                break
            _, pi, pj = min(nz)
            swap_rows(t, pi)
            swap_cols(t, pj)
            p = a[t][t]
            dirty = False
            for i in range(t + 1, nr):
                q = a[i][t] // p
                if q:
                    add_row(i, t, -q)
                dirty |= a[i][t] != 0
            for j in range(t + 1, nc):
                q = a[t][j] // p
                if q:
                    add_col(j, t, -q)
                dirty |= a[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, nr) for j in range(t + 1, nc) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
    d = tuple(a[i][i] for i in range(min(nr, nc)))
    return d, IntMatrix(U, nr), IntMatrix(V, nc)


def rank(m) -> int:
    return sum(1 for x in smith_normal_form(m)[0] if x)


def kernel_basis(m) -> List[Vector]:
    """Z-basis of the (automatically saturated) integer kernel of ``m``."""
    m = as_matrix(m)
    d, _, V = smith_normal_form(m)
    r = sum(1 for x in d if x)
    return [V.col(j) for j in range(r, m.ncols)]


def char_poly(m) -> Tuple[int, ...]:
    """Monic characteristic polynomial det(xI - m), leading coefficient first.

    Faddeev-LeVerrier; every division is exact over the integers.
    """
    m = as_matrix(m)
    _require_square(m)
    n = m.nrows
    coeffs = [1]
    M = IntMatrix.zeros(n, n)
    c = 1
    ident = IntMatrix.identity(n)
    for k in range(1, n + 1):
        M = m @ M + ident.scale(c)
        tr = (m @ M).trace()
        assert tr % k == 0
        c = -tr // k
        coeffs.append(c)
    return tuple(coeffs)


def poly_eval_matrix(coeffs: Sequence[int], m: IntMatrix) -> IntMatrix:
    """Horner evaluation of an integer polynomial (leading first) at ``m``."""
    n = m.nrows
    out = IntMatrix.zeros(n, n)
    ident = IntMatrix.identity(n)
    for c in coeffs:
        out = out @ m + ident.scale(c)
    return out


def symmetric_diagonalization(g) -> List[Fraction]:
    """Diagonal of a rational congruence-diagonalization of symmetric ``g``.

    Symmetric Gaussian elimination with exact pivots.  When the remaining
    block has zero diagonal but a nonzero off-diagonal entry a_ij, the
    congruence e_i -> e_i + e_j produces the pivot 2*a_ij.  Trailing zeros
    account for the radical.
    """
    g = as_matrix(g)
    if not g.is_symmetric():
        raise ValueError("symmetric matrix required")
    a = [[Fraction(x) for x in row] for row in g.rows]
    diag: List[Fraction] = []
    while a:
        n = len(a)
        piv = next((i for i in range(n) if a[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in range(n) for j in range(i + 1, n) if a[i][j] != 0), None)
            if pair is None:
                diag.extend([Fraction(0)] * n)
                break
            i, j = pair
            a[i] = [x + y for x, y in zip(a[i], a[j])]
            for row in a:
                row[i] += row[j]
            piv = i
        a[0], a[piv] = a[piv], a[0]
        for row in a:
            row[0], row[piv] = row[piv], row[0]
        p = a[0][0]
        diag.append(p)
        a = [
            [a[i][j] - a[i][0] * a[0][j] / p for j in range(1, n)]
            for i in range(1, n)
        ]
    return diag


def signature(g) -> Tuple[int, int, int]:
    """(n_plus, n_minus, n_zero) of a symmetric integer matrix."""
    diag = symmetric_diagonalization(g)
    return (
        sum(1 for x in diag if x > 0),
        sum(1 for x in diag if x < 0),
        sum(1 for x in diag if x == 0),
    )


def inverse(m) -> RatMatrix:
    """Exact inverse over the rationals (Gauss-Jordan)."""
    m = as_matrix(m)
    _require_square(m)
    n = m.nrows
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m.rows)]
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[c], a[piv] = a[piv], a[c]
        p = a[c][c]
        a[c] = [x / p for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return RatMatrix.from_fractions([row[n:] for row in a])


def unimodular_inverse(m) -> IntMatrix:
    inv = inverse(m)
    if not inv.is_integral():
        raise ValueError("matrix is not unimodular")
    return inv.to_int()


def extend_to_basis(v: Sequence[int]) -> IntMatrix:
    """Unimodular matrix whose first column is the primitive vector ``v``."""
    d, U, _ = smith_normal_form(IntMatrix([[x] for x in v]))
    if d[0] != 1:
        raise ValueError(f"vector {tuple(v)} is not primitive")
    # U v = e1, hence v is the first column of U^-1.
    return unimodular_inverse(U)
