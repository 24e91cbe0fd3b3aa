"""Binary quadratic forms: reduction, cycles, representation, equivalence.

A rank-2 Gram matrix [[g11, g12], [g12, g22]] is handled as the form
(A, B, C) = (g11, 2*g12, g22), i.e. x^T G x = A x^2 + B xy + C y^2, with
discriminant B^2 - 4AC = -4 det G.  Every reduction step carries the
SL_2(Z) matrix P with f o P = reduced form, so equivalences and
representations come with checkable witnesses.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt
from typing import List, NamedTuple, Optional, Tuple

from .exact_linalg import IntMatrix, Vector, extend_to_basis, unimodular_inverse
from .lattice import IntegralLattice, LatticeError
from .local import is_perfect_square

_ID = IntMatrix.identity(2)
_S = IntMatrix([[0, -1], [1, 0]])
_FLIP = IntMatrix([[1, 0], [0, -1]])


class Form(NamedTuple):
    a: int
    b: int
    c: int

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def act(self, P: IntMatrix) -> "Form":
        """The form (x, y) -> f(P (x, y))."""
        (p, q), (r, s) = P.rows
        a, b, c = self
        return Form(
            a * p * p + b * p * r + c * r * r,
            2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s,
            a * q * q + b * q * s + c * s * s,
        )

    def gram(self) -> IntMatrix:
        if self.b % 2:
            raise ValueError("odd middle coefficient has no integral Gram matrix")
        return IntMatrix([[self.a, self.b // 2], [self.b // 2, self.c]])

    def conjugate(self) -> "Form":
        return Form(self.a, -self.b, self.c)


def form_of(L) -> Form:
    g = L.gram if isinstance(L, IntegralLattice) else IntMatrix(L)
    if g.shape != (2, 2):
        raise LatticeError("binary form operations need a rank-2 lattice")
    return Form(g[0, 0], 2 * g[0, 1], g[1, 1])


def _translate(t: int) -> IntMatrix:
    return IntMatrix([[1, t], [0, 1]])


# ---------------------------------------------------------------------------
# definite forms


def reduce_definite(f: Form) -> Tuple[Form, IntMatrix]:
    """Unique reduced form |b| <= a <= c (b >= 0 on the boundary) of a
    positive-definite form, with the transformation used."""
    if f.disc >= 0 or f.a <= 0:
        raise ValueError("positive-definite form required")
    P = _ID
    while True:
        a, b, c = f
        t = (a - b) // (2 * a)  # brings b into (-a, a]
        if t:
            T = _translate(t)
            f, P = f.act(T), P @ T
            continue
        if c < a:
            f, P = f.act(_S), P @ _S
            continue
        if a == c and b < 0:
            f, P = f.act(_S), P @ _S
            continue
        return f, P


# ---------------------------------------------------------------------------
# indefinite forms with non-square discriminant


class _Sqrt:
    """Exact comparisons against sqrt(D) for a non-square D > 0."""

    def __init__(self, D: int):
        self.D = D
        self.s = isqrt(D)

    def lt(self, x: int) -> bool:  # x < sqrt(D)
        return x <= self.s

    def gt(self, x: int) -> bool:  # x > sqrt(D)
        return x > self.s


def _normalize(f: Form, rt: _Sqrt) -> Tuple[Form, IntMatrix]:
    a, b, _ = f
    m = 2 * abs(a)
    if rt.gt(abs(a)):
        lo = -abs(a) + 1  # b in (-|a|, |a|]
    else:
        lo = rt.s + 1 - m  # b in (sqrt(D) - 2|a|, sqrt(D))
    b_new = (b - lo) % m + lo
    t = (b_new - b) // (2 * a)
    T = _translate(t)
    return f.act(T), T


def _rho(f: Form, rt: _Sqrt) -> Tuple[Form, IntMatrix]:
    g, T = _normalize(f.act(_S), rt)
    return g, _S @ T


def is_reduced_indefinite(f: Form) -> bool:
    rt = _Sqrt(f.disc)
    a, b, _ = f
    # |sqrt(D) - 2|a|| < b < sqrt(D)
    return b > 0 and rt.lt(b) and rt.lt(2 * abs(a) - b) and rt.gt(2 * abs(a) + b)


def reduce_indefinite(f: Form) -> Tuple[Form, IntMatrix]:
    D = f.disc
    if D <= 0 or is_perfect_square(D):
        raise ValueError("indefinite form with non-square discriminant required")
    rt = _Sqrt(D)
    f, P = _normalize(f, rt)
    while not is_reduced_indefinite(f):
        f, T = _rho(f, rt)
        P = P @ T
    return f, P


def rho_cycle(f: Form) -> List[Tuple[Form, IntMatrix]]:
    """Cycle of reduced forms starting at reduced ``f``; entry k is
    (f_k, Q_k) with f o Q_k = f_k."""
    rt = _Sqrt(f.disc)
    out = [(f, _ID)]
    g, Q = f, _ID
    while True:
        g, T = _rho(g, rt)
        Q = Q @ T
        if g == f:
            return out
        out.append((g, Q))


# ---------------------------------------------------------------------------
# isotropic forms (square discriminant)


def _isotropic_frame(f: Form) -> Tuple[Form, IntMatrix]:
    """Return (0, B, C) = f o P with B = sqrt(disc) > 0."""
    k = isqrt(f.disc)
    if f.a == 0:
        v = (1, 0)
    else:
        x, y = -f.b + k, 2 * f.a
        g = gcd(x, y)
        v = (x // g, y // g)
    P = extend_to_basis(v)
    g = f.act(P)
    if g.b < 0:
        P = P @ _FLIP  # improper, harmless for representation questions
        g = f.act(P)
    return g, P


def _isotropic_lines(f: Form) -> List[Vector]:
    k = isqrt(f.disc)
    if f.a == 0:
        roots = [(1, 0), (-f.c, f.b)]
    else:
        roots = [(-f.b + k, 2 * f.a), (-f.b - k, 2 * f.a)]
    out = []
    for x, y in roots:
        g = gcd(x, y)
        v = (x // g, y // g)
        if v not in out and (-v[0], -v[1]) not in out:
            out.append(v)
    return out


def _isotropic_invariant(f: Form) -> Tuple[Form, ...]:
    """GL_2(Z)-class invariant: the canonical forms (0, k, C mod k) obtained
    from each isotropic line."""
    k = isqrt(f.disc)
    forms = set()
    for v in _isotropic_lines(f):
        g = f.act(extend_to_basis(v))
        forms.add(Form(0, k, g.c % k))
    return tuple(sorted(forms))


# ---------------------------------------------------------------------------
# public operations


@dataclass(frozen=True)
class BinaryFormClass:
    """Reduced data of a binary lattice, up to proper (SL_2) equivalence.

    For definite lattices ``reduced_cycle`` has one Gram matrix; for
    indefinite non-square discriminant it is the full reduction cycle;
    for square discriminant it lists the canonical forms (0, k, C).
    """

    kind: str
    reduced_cycle: Tuple[IntMatrix, ...]


def _reduced_forms(f: Form) -> Tuple[str, List[Form]]:
    D = f.disc
    if D < 0:
        sign = 1 if f.a > 0 else -1
        g, _ = reduce_definite(Form(*(sign * t for t in f)))
        return "definite", [Form(*(sign * t for t in g))]
    if is_perfect_square(D):
        return "isotropic", list(_isotropic_invariant(f))
    g, _ = reduce_indefinite(f)
    cycle = [h for h, _ in rho_cycle(g)]
    start = cycle.index(min(cycle))
    return "indefinite", cycle[start:] + cycle[:start]


def binary_form_class(L: IntegralLattice) -> BinaryFormClass:
    kind, forms = _reduced_forms(form_of(L))
    return BinaryFormClass(kind, tuple(h.gram() for h in forms))


def proper_equivalence(f: Form, g: Form) -> Optional[IntMatrix]:
    """P in SL_2(Z) with f o P = g, or None.  Non-square discriminant only."""
    if f.disc != g.disc:
        return None
    D = f.disc
    if D < 0:
        if (f.a > 0) != (g.a > 0):
            return None
        sign = 1 if f.a > 0 else -1
        rf, Pf = reduce_definite(Form(*(sign * t for t in f)))
        rg, Pg = reduce_definite(Form(*(sign * t for t in g)))
        return Pf @ unimodular_inverse(Pg) if rf == rg else None
    if is_perfect_square(D):
        raise ValueError("square discriminant: use the isotropic routines")
    rf, Pf = reduce_indefinite(f)
    rg, Pg = reduce_indefinite(g)
    for h, Q in rho_cycle(rf):
        if h == rg:
            return Pf @ Q @ unimodular_inverse(Pg)
    return None


def binary_equivalent(L: IntegralLattice, M: IntegralLattice) -> bool:
    """Isometry of rank-2 lattices (proper or improper equivalence)."""
    f, g = form_of(L), form_of(M)
    if f.disc != g.disc:
        return False
    if f.disc == 0:
        raise LatticeError("degenerate binary lattice")
    if is_perfect_square(f.disc):
        return _isotropic_invariant(f) == _isotropic_invariant(g)
    return proper_equivalence(f, g) is not None or proper_equivalence(f.conjugate(), g) is not None


def _represents_definite(f: Form, n: int) -> Optional[Vector]:
    if f.a < 0:
        f, n = Form(-f.a, -f.b, -f.c), -n
    if n < 0:
        return None
    a, b, _ = f
    D = -f.disc
    ymax = isqrt(4 * a * n // D) + 1
    for y in sorted(range(-ymax, ymax + 1), key=lambda t: (abs(t), -t)):
        R = 4 * a * n - D * y * y
        if R < 0 or not is_perfect_square(R):
            continue
        r = isqrt(R)
        for s in (r, -r):
            num = s - b * y
            if num % (2 * a) == 0:
                x = num // (2 * a)
                if f(x, y) == n:
                    return (x, y)
    return None


def _divisors(n: int) -> List[int]:
    n = abs(n)
    small = [d for d in range(1, isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def _represents_isotropic(f: Form, n: int) -> Optional[Vector]:
    g, P = _isotropic_frame(f)
    _, B, C = g
    # g(X, Y) = Y (B X + C Y)
    for d in _divisors(n):
        for Y in (d, -d):
            num = n // Y - C * Y
            if num % B == 0:
                return P @ (num // B, Y)
    return None


def _represents_indefinite(f: Form, n: int) -> Optional[Vector]:
    D = f.disc
    for k in _divisors(n):
        if n % (k * k):
            continue
        m = n // (k * k)
        for b in range(0, 2 * abs(m)):
            if (b * b - D) % (4 * abs(m)):
                continue
            target = Form(m, b, (b * b - D) // (4 * m))
            P = proper_equivalence(f, target)
            if P is not None:
                x, y = P.col(0)
                return (k * x, k * y)
    return None


def represents(L: IntegralLattice, n: int) -> Optional[Vector]:
    """A vector x with x^T G x = n, or None if the rank-2 lattice misses n."""
    f = form_of(L)
    if n == 0:
        raise LatticeError("n = 0 is an isotropy question; use is_isotropic_rational")
    D = f.disc
    if D == 0:
        raise LatticeError("degenerate binary lattice")
    if D < 0:
        x = _represents_definite(f, n)
    elif is_perfect_square(D):
        x = _represents_isotropic(f, n)
    else:
        x = _represents_indefinite(f, n)
    if x is not None:
        assert L.evaluate(x) == n
    return x
