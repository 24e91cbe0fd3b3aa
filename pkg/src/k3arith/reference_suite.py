"""End-to-end reproduction of the numeric claims, driven by fixture files."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd
from pathlib import Path
from typing import Any, Callable, List, Optional

from .binary_forms import binary_equivalent, represents
from .exact_linalg import IntMatrix
from .lattice import genus_equal, is_isotropic_rational, lattice_from_json
from .monodromy import acampo_test, kulikov_type, primitive_log, quasi_unipotency
from .mukai import (
    AlgebraicMukaiLattice,
    MukaiVector,
    c2_from_mukai,
    decomposable_index,
    fm_partner_count,
    index_transfer_applies,
    index_transfer_check,
    index_upper_bound,
    is_isotropic,
    jacobian_action_images,
)
from .real_k3 import LatticeInvolution, RealInvariants, extend_to_mukai, real_invariants, topological_type
from .weyl import build_root_context, compose_word, weyl_membership

FIXTURE_DIR = Path(__file__).with_name("fixtures")

REQUIRED_FIXTURES = (
    "pix", "piy", "u", "fsigma", "ex14", "deg12", "twosummand",
    "mono_identity", "mono_rotation", "mono_unipotent2", "mono_unipotent3", "mono_unipotent2_m2",
    "inv_swap_u", "inv_neg_u", "weyl_a1a1_neg", "weyl_a1a1_swap",
    "v_deg12", "v_ex14", "v_tangent",
)


class FixtureError(FileNotFoundError):
    pass


@dataclass
class ClaimResult:
    claim: str
    statement: str
    expected: Any
    actual: Any
    passed: bool

    def to_json(self) -> dict:
        return {
            "claim": self.claim,
            "statement": self.statement,
            "expected": _plain(self.expected),
            "actual": _plain(self.actual),
            "passed": self.passed,
        }

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        out = f"{tag} {self.claim}: {self.statement}"
        if not self.passed:
            out += f" (expected {_plain(self.expected)!r}, got {_plain(self.actual)!r})"
        return out


def _plain(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, IntMatrix):
        return x.tolist()
    if isinstance(x, (tuple, list)):
        return [_plain(t) for t in x]
    if isinstance(x, RealInvariants):
        return list(x.as_tuple())
    return x


def load_fixtures(directory: Optional[Path] = None) -> dict:
    directory = Path(directory) if directory else FIXTURE_DIR
    if not directory.is_dir():
        raise FixtureError(f"fixture directory {directory} does not exist")
    missing = [n for n in REQUIRED_FIXTURES if not (directory / f"{n}.json").is_file()]
    if missing:
        raise FixtureError(f"missing fixtures in {directory}: {', '.join(missing)}")
    return {n: json.loads((directory / f"{n}.json").read_text()) for n in REQUIRED_FIXTURES}


def _guard(fn: Callable[[], Any]) -> Any:
    try:
        return fn()
    except Exception as exc:  # a check that crashes is a failed check
        return f"error: {exc}"


def run_reference_suite(fixtures: Optional[Path] = None) -> List[ClaimResult]:
    fx = load_fixtures(fixtures)
    results: List[ClaimResult] = []

    def check(claim: str, statement: str, expected, actual_fn: Callable[[], Any]) -> None:
        actual = _guard(actual_fn)
        results.append(ClaimResult(claim, statement, expected, actual, actual == expected))

    lat = lambda name: lattice_from_json(fx[name])
    vec = lambda name: MukaiVector.from_json(fx[name])
    mat = lambda name: IntMatrix(fx[name]["matrix"])

    # rank-two pair of discriminant 145
    check("disc145.determinants", "Pi_X and Pi_Y both have determinant -145",
          (-145, -145), lambda: (lat("pix").det, lat("piy").det))
    check("disc145.same_genus", "Pi_X and Pi_Y have the same local invariants",
          True, lambda: genus_equal(lat("pix"), lat("piy")))
    check("disc145.not_isometric", "Pi_X and Pi_Y are not isometric over Z",
          False, lambda: binary_equivalent(lat("pix"), lat("piy")))
    check("disc145.named_roots", "(2f-C)^2 = (25C-2f)^2 = -2 in Pi_X (basis C, f)",
          (-2, -2), lambda: (lat("pix").evaluate((-1, 2)), lat("pix").evaluate((25, -2))))

    def pix_witness():
        x = represents(lat("pix"), -2)
        return x is not None and lat("pix").evaluate(x) == -2

    check("disc145.pix_represents_-2", "Pi_X represents -2 with a verified witness", True, pix_witness)
    check("disc145.piy_misses_-2", "Pi_Y does not represent -2",
          None, lambda: represents(lat("piy"), -2))

    # elliptic criterion and example lattices
    check("elliptic.fibre_section", "fibre/section lattice is isotropic (f^2 = 0)",
          True, lambda: is_isotropic_rational(lat("fsigma")))
    check("elliptic.pix_anisotropic", "Pi_X has no square-zero class (145 is not a square)",
          False, lambda: is_isotropic_rational(lat("pix")))
    check("ex14.degree", "h = 2g - C has h^2 = 14", 14, lambda: lat("ex14").evaluate((2, -1)))

    # Chern classes and indices
    m12 = lambda: AlgebraicMukaiLattice(lat("deg12"))
    m14 = lambda: AlgebraicMukaiLattice(lat("ex14"))
    check("c2.degree12", "v = (2, h, 3), h^2 = 12 gives chi = 5 and c_2 = 5",
          5, lambda: c2_from_mukai(m12(), vec("v_deg12")))
    check("c2.degree12_isotropic", "(2, h, 3) is isotropic when h^2 = 12",
          True, lambda: is_isotropic(m12(), vec("v_deg12")))
    check("c2.degree14", "v = (2, h, 4), h^2 = 14 gives c_2 = 5",
          5, lambda: c2_from_mukai(m14(), vec("v_ex14")))
    check("c2.tangent", "tangent bundle (2, 0, -22) has c_2 = 24",
          24, lambda: c2_from_mukai(m12(), vec("v_tangent")))
    check("index.degree12", "decomposable index of <12> is 12, coprime to c_2 = 5",
          (12, 1), lambda: (decomposable_index(lat("deg12")), gcd(12, 5)))
    check("index.degree14_bound", "index bound for the degree-14 example is 2",
          2, lambda: index_upper_bound(lat("ex14")))

    def transfer_sweep():
        for r, s, n in product(range(1, 31), repeat=3):
            for mod in range(1, 61):
                if gcd(gcd(r, s), mod) == 1 and index_transfer_applies(r, s, mod):
                    if not index_transfer_check(r, s, n, mod):
                        return (r, s, n, mod)
        return True

    check("index.transfer_sweep", "c_2 of n v is n times a unit modulo the index (r, s, n <= 30, modulus <= 60)",
          True, transfer_sweep)

    # Fourier-Mukai partner counts
    check("fm.degree12", "degree 12 (n = 6) has 2 partners", 2, lambda: fm_partner_count(6))
    check("fm.degree14", "degree 14 (n = 7) has 1 partner", 1, lambda: fm_partner_count(7))

    # real K3 surfaces
    check("nikulin.empty", "(10, 10, 0) has empty real locus",
          "empty", lambda: topological_type(RealInvariants(10, 10, 0)).kind)
    check("nikulin.two_tori", "(10, 8, 0) gives two tori",
          "two_tori", lambda: topological_type(RealInvariants(10, 8, 0)).kind)
    inv = lambda name: LatticeInvolution.from_json(fx[name])
    check("nikulin.swap_u", "swap on U has (r, a, delta) = (1, 1, 1)",
          RealInvariants(1, 1, 1), lambda: real_invariants(inv("inv_swap_u")))
    check("nikulin.neg_u", "-1 on U has (r, a, delta) = (2, 0, 0)",
          RealInvariants(2, 0, 0), lambda: real_invariants(inv("inv_neg_u")))
    check("nikulin.mukai_extension", "adding H^0 + H^4 keeps delta and a, raises r by 2",
          RealInvariants(3, 1, 1), lambda: real_invariants(extend_to_mukai(inv("inv_swap_u"))))

    # monodromy
    for name, ef in (("mono_identity", (1, 1)), ("mono_rotation", (4, 1)),
                     ("mono_unipotent2", (1, 2)), ("mono_unipotent3", (1, 3))):
        check(f"monodromy.{name}.ef", f"(e, f) of {name} is {ef}", ef, lambda n=name: quasi_unipotency(mat(n)))
    for name, kind in (("mono_identity", "I"), ("mono_unipotent2", "II"), ("mono_unipotent3", "III")):
        check(f"monodromy.{name}.kulikov", f"Kulikov type of {name} is {kind}", kind,
              lambda n=name: kulikov_type(mat(n)))
    for name in ("mono_identity", "mono_rotation", "mono_unipotent2", "mono_unipotent3"):
        expected = "section_exists" if _guard(lambda n=name: mat(n).trace()) != -2 else "inconclusive"
        check(f"monodromy.{name}.acampo", f"trace rule for {name}", expected, lambda n=name: acampo_test(mat(n)))
    check("monodromy.primitive_log", "log [[1,2],[0,1]] = 2 [[0,1],[0,0]]",
          (Fraction(2), IntMatrix([[0, 1], [0, 0]])), lambda: primitive_log(mat("mono_unipotent2_m2")))

    # Weyl groups
    def weyl(name):
        doc = fx[name]
        ctx = build_root_context(lattice_from_json(doc["lattice"]), doc["generators"])
        T = IntMatrix(doc["matrix"])
        word = weyl_membership(ctx, T)
        if word is None:
            return None
        return (len(word), compose_word(ctx, word) == T)

    check("weyl.a1a1_neg", "-1 on A1 + A1 is a product of two reflections", (2, True), lambda: weyl("weyl_a1a1_neg"))
    check("weyl.a1a1_swap", "swapping the A1 summands is not in the Weyl group", None, lambda: weyl("weyl_a1a1_swap"))

    # Jacobian elliptic SL_2 action
    def jacobian_sweep():
        L = lattice_from_json(fx["twosummand"])
        for a, b, c, d in product(range(-10, 11), repeat=4):
            if c * b - a * d != 1:
                continue
            v, w = (x.coordinates() for x in jacobian_action_images(a, b, c, d))
            if (L.evaluate(v), L.evaluate(w), L.pairing(v, w)) != (0, 0, -1):
                return (a, b, c, d)
        return True

    check("jacobian.sl2_images", "images of (1,0,0) and (0,0,1) are isotropic and pair to -1",
          True, jacobian_sweep)
    return results
