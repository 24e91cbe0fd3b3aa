"""Command-line front end.

Exit codes: 0 success, 1 domain error (a precondition of the computation
failed, or a reference-suite claim failed), 2 usage error (bad arguments,
unreadable or malformed input documents).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from .binary_forms import binary_equivalent, binary_form_class, represents
from .exact_linalg import IntMatrix
from .lattice import (
    IntegralLattice,
    LatticeError,
    discriminant_group,
    genus_equal,
    is_isotropic_rational,
    lattice_from_json,
    local_invariants,
)
from .monodromy import monodromy_report
from .mukai import (
    AlgebraicMukaiLattice,
    MukaiVector,
    c2_from_mukai,
    decomposable_index,
    euler_characteristic,
    fm_partner_count,
    index_upper_bound,
    is_isotropic,
    is_spherical,
    jacobian_action_images,
    mukai_pairing,
    spherical_twist,
    two_summand_lattice,
)
from .reference_suite import FixtureError, run_reference_suite
from .real_k3 import LatticeInvolution, RealInvariants, eigenlattices, extend_to_mukai, real_invariants, topological_type
from .weyl import build_root_context, compose_word, weyl_membership

SUBCOMMANDS = (
    "lattice-info", "represents", "isotropic", "genus-compare", "binary-equiv", "mukai", "twist",
    "c2", "index-bound", "fm-count", "real-type", "involution", "monodromy", "weyl",
    "jacobian-check", "paper-suite",
)


class UsageError(Exception):
    pass


@dataclass
class Request:
    subcommand: str
    args: argparse.Namespace
    format: str = "json"
    docs: Dict[str, Any] = field(default_factory=dict)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def load_document(path: str) -> Any:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"{path}: cannot read ({exc.strerror})") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}:{exc.lineno}:{exc.colno}: malformed JSON ({exc.msg})") from None


def _int_matrix(doc, path: str, key: str = "matrix") -> IntMatrix:
    try:
        rows = doc[key]
        return IntMatrix(rows)
    except (KeyError, TypeError):
        raise UsageError(f"{path}: expected an object with a {key!r} field") from None
    except ValueError as exc:
        raise UsageError(f"{path}: {key}: {exc}") from None


def build_parser() -> argparse.ArgumentParser:
    fmt = _Parser(add_help=False)
    fmt.add_argument("--format", choices=("json", "text"), default="json")
    parser = _Parser(prog="k3arith", description="Exact lattice invariants for derived-equivalent K3 surfaces.")
    sub = parser.add_subparsers(dest="subcommand", parser_class=_Parser)
    sub.required = True

    def add(name, help_):
        return sub.add_parser(name, help=help_, parents=[fmt])

    p = add("lattice-info", "rank, determinant, signature, discriminant group and local invariants")
    p.add_argument("lattice")
    p = add("represents", "find x with x^T G x = n in a rank-2 lattice")
    p.add_argument("lattice")
    p.add_argument("--value", type=int, required=True)
    p = add("isotropic", "does the lattice represent zero over Q")
    p.add_argument("lattice")
    for name, help_ in (("genus-compare", "compare genus fingerprints"),
                        ("binary-equiv", "isometry test for rank-2 lattices")):
        p = add(name, help_)
        p.add_argument("lattice")
        p.add_argument("other")
    p = add("mukai", "Mukai pairing and classification of a vector")
    p.add_argument("--lattice", required=True)
    p.add_argument("vector")
    p.add_argument("other", nargs="?")
    p = add("twist", "reflect a Mukai vector in a spherical class")
    p.add_argument("--lattice", required=True)
    p.add_argument("vector")
    p.add_argument("spherical")
    p = add("c2", "second Chern class from a Mukai vector")
    p.add_argument("--lattice", required=True)
    p.add_argument("vector")
    p = add("index-bound", "decomposable index and gcd(24, .)")
    p.add_argument("lattice")
    p = add("fm-count", "Fourier-Mukai partner count for Picard rank one, h^2 = 2n")
    p.add_argument("--n", type=int, required=True)
    p = add("real-type", "topology of the real locus from (r, a, delta)")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--delta", type=int, choices=(0, 1), required=True)
    p = add("involution", "eigenlattices and (r, a, delta) of a lattice involution")
    p.add_argument("involution")
    p.add_argument("--mukai", action="store_true", help="extend by -1 on H^0 + H^4 first")
    p.add_argument("--compare", help="second involution document to compare invariants with")
    p = add("monodromy", "(e, f), trace, Kulikov type and primitive logarithm")
    p.add_argument("monodromy")
    p.add_argument("--compare", help="second monodromy document")
    p = add("weyl", "Weyl-group membership of an isometry")
    p.add_argument("document", help='{"lattice": ..., "generators": [[int]], "matrix": [[int]]}')
    p = add("jacobian-check", "images of (1,0,0), (0,0,1) under [[c, a], [d, b]] in SL_2(Z)")
    for k in "abcd":
        p.add_argument(f"--{k}", type=int)
    p.add_argument("--bound", type=int, help="check every SL_2 quadruple with |entries| <= bound")
    p = add("paper-suite", "run every fixture-driven reference check")
    p.add_argument("--fixtures", help="fixture directory (default: bundled fixtures)")
    return parser


def parse_request(argv: Sequence[str]) -> Request:
    args = build_parser().parse_args(list(argv))
    req = Request(args.subcommand, args, args.format)
    docs = req.docs
    for key in ("lattice", "other", "vector", "spherical", "involution", "monodromy", "document"):
        path = getattr(args, key, None)
        if path is not None:
            docs[key] = load_document(path)
    if args.subcommand == "paper-suite" and args.fixtures and not Path(args.fixtures).is_dir():
        raise UsageError(f"{args.fixtures}: fixture directory does not exist")
    if args.subcommand == "jacobian-check":
        given = [getattr(args, k) for k in "abcd"]
        if args.bound is None and None in given:
            raise UsageError("jacobian-check needs --a --b --c --d or --bound")
    for key in ("compare",):
        path = getattr(args, key, None)
        if path is not None:
            docs[key] = load_document(path)
    # shape checks with file context
    if "lattice" in docs and args.subcommand in ("mukai", "twist", "c2"):
        gram = docs["lattice"].get("gram") if isinstance(docs["lattice"], dict) else None
        if not isinstance(gram, list):
            raise UsageError(f"{args.lattice}: expected an object with a 'gram' field")
        for key in ("vector", "other", "spherical"):
            if key in docs:
                d = docs[key].get("d") if isinstance(docs[key], dict) else None
                if not isinstance(d, list) or len(d) != len(gram):
                    raise UsageError(
                        f"{getattr(args, key)}: Mukai vector 'd' must have {len(gram)} entries "
                        f"to match {args.lattice}"
                    )
    for key in ("monodromy", "compare"):
        if key in docs and args.subcommand == "monodromy":
            _int_matrix(docs[key], getattr(args, key))
    return req


# ---------------------------------------------------------------------------
# handlers


def _lattice(doc) -> IntegralLattice:
    if not isinstance(doc, dict):
        raise UsageError("lattice document must be a JSON object")
    return lattice_from_json(doc)


def _lattice_info(L: IntegralLattice) -> dict:
    p, m, z = L.signature()
    out = {
        "gram": L.gram.tolist(),
        "labels": list(L.labels) if L.labels else None,
        "rank": L.rank,
        "det": L.det,
        "even": L.is_even(),
        "signature": [p, m, z],
        "discriminant_group": list(discriminant_group(L).elementary_divisors),
        "local_invariants": local_invariants(L).to_json(),
        "decomposable_index": decomposable_index(L),
        "isotropic": is_isotropic_rational(L),
    }
    if L.rank == 2:
        cls = binary_form_class(L)
        out["binary_class"] = {"kind": cls.kind, "reduced": [g.tolist() for g in cls.reduced_cycle]}
    return out


def _handle(req: Request) -> dict:
    a, d = req.args, req.docs
    cmd = req.subcommand
    if cmd == "lattice-info":
        return _lattice_info(_lattice(d["lattice"]))
    if cmd == "represents":
        L = _lattice(d["lattice"])
        x = represents(L, a.value)
        return {"value": a.value, "represented": x is not None, "witness": list(x) if x else None}
    if cmd == "isotropic":
        L = _lattice(d["lattice"])
        return {"isotropic": is_isotropic_rational(L), "rank": L.rank, "signature": list(L.signature())}
    if cmd == "genus-compare":
        L, M = _lattice(d["lattice"]), _lattice(d["other"])
        return {
            "genus_equal": genus_equal(L, M),
            "first": local_invariants(L).to_json(),
            "second": local_invariants(M).to_json(),
            "discriminant_groups": [
                list(discriminant_group(L).elementary_divisors),
                list(discriminant_group(M).elementary_divisors),
            ],
        }
    if cmd == "binary-equiv":
        return {"equivalent": binary_equivalent(_lattice(d["lattice"]), _lattice(d["other"]))}
    if cmd in ("mukai", "twist", "c2"):
        M = AlgebraicMukaiLattice(_lattice(d["lattice"]))
        v = MukaiVector.from_json(d["vector"])
        if cmd == "c2":
            return {"vector": v.to_json(), "c2": c2_from_mukai(M, v), "chi": euler_characteristic(v)}
        if cmd == "twist":
            sph = MukaiVector.from_json(d["spherical"])
            return {
                "vector": v.to_json(),
                "spherical": sph.to_json(),
                "pairing": mukai_pairing(M, v, sph),
                "result": spherical_twist(M, v, sph).to_json(),
            }
        out = {
            "vector": v.to_json(),
            "self_pairing": mukai_pairing(M, v, v),
            "spherical": is_spherical(M, v),
            "isotropic": is_isotropic(M, v),
            "chi": euler_characteristic(v),
        }
        if M.pic.is_even():
            out["c2"] = c2_from_mukai(M, v)
        if "other" in d:
            out["pairing"] = mukai_pairing(M, v, MukaiVector.from_json(d["other"]))
        return out
    if cmd == "index-bound":
        L = _lattice(d["lattice"])
        return {"decomposable_index": decomposable_index(L), "index_upper_bound": index_upper_bound(L)}
    if cmd == "fm-count":
        return {"n": a.n, "degree": 2 * a.n, "partners": fm_partner_count(a.n)}
    if cmd == "real-type":
        t = topological_type(RealInvariants(a.r, a.a, a.delta))
        return {"invariants": [a.r, a.a, a.delta], "kind": t.kind, "g": t.g, "k": t.k, "real_locus": t.describe()}
    if cmd == "involution":
        return _involution(req)
    if cmd == "monodromy":
        T = _int_matrix(d["monodromy"], a.monodromy)
        rep = monodromy_report(T).to_json()
        if "compare" in d:
            other = monodromy_report(_int_matrix(d["compare"], a.compare)).to_json()
            same_cp = rep["char_poly"] == other["char_poly"]
            rep = {
                "first": rep,
                "second": other,
                "same_char_poly": same_cp,
                "same_ef": (rep["e"], rep["f"]) == (other["e"], other["f"]),
            }
        return rep
    if cmd == "weyl":
        doc = d["document"]
        if not isinstance(doc, dict):
            raise UsageError(f"{a.document}: expected a JSON object")
        ctx = build_root_context(_lattice(doc.get("lattice")), doc.get("generators", []))
        T = _int_matrix(doc, a.document)
        word = weyl_membership(ctx, T)
        return {
            "roots": len(ctx.roots),
            "simple_roots": [list(r) for r in ctx.simple_roots],
            "member": word is not None,
            "word": list(word) if word is not None else None,
            "word_roots": [list(ctx.simple_roots[i]) for i in word] if word is not None else None,
            "recomposes": compose_word(ctx, word) == T if word is not None else None,
        }
    if cmd == "jacobian-check":
        return _jacobian(a)
    raise UsageError(f"unknown subcommand {cmd}")


def _involution(req: Request) -> dict:
    d, a = req.docs, req.args

    def one(doc, path):
        try:
            inv = LatticeInvolution.from_json(doc)
        except (KeyError, TypeError):
            raise UsageError(f"{path}: expected {{'lattice': ..., 'matrix': ...}}") from None
        if a.mukai:
            inv = extend_to_mukai(inv)
        plus, minus = eigenlattices(inv)
        ri = real_invariants(inv)
        out = {
            "lambda_plus": plus.gram.tolist(),
            "lambda_minus": minus.gram.tolist(),
            "invariants": list(ri.as_tuple()),
        }
        try:
            t = topological_type(ri)
            out["real_locus"] = {"kind": t.kind, "g": t.g, "k": t.k, "description": t.describe()}
        except LatticeError as exc:
            out["real_locus"] = None
            out["real_locus_note"] = str(exc)
        return out

    out = one(d["involution"], a.involution)
    if "compare" in d:
        other = one(d["compare"], a.compare)
        out = {"first": out, "second": other, "same_invariants": out["invariants"] == other["invariants"]}
    return out


def _jacobian(a) -> dict:
    L = two_summand_lattice()

    def one(x):
        v, w = (t.coordinates() for t in jacobian_action_images(*x))
        return {
            "quadruple": list(x),
            "image_1_0_0": list(v),
            "image_0_0_1": list(w),
            "norms": [L.evaluate(v), L.evaluate(w)],
            "pairing": L.pairing(v, w),
        }

    if a.bound is None:
        return one((a.a, a.b, a.c, a.d))
    B = a.bound
    rng = range(-B, B + 1)
    total = bad = 0
    for q in ((x, y, z, t) for x in rng for y in rng for z in rng for t in rng):
        if q[2] * q[1] - q[0] * q[3] != 1:
            continue
        total += 1
        r = one(q)
        if r["norms"] != [0, 0] or r["pairing"] != -1:
            bad += 1
    return {"bound": B, "quadruples": total, "failures": bad}


# ---------------------------------------------------------------------------
# output


def render_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, default=_json_default) + "\n"


def _json_default(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, IntMatrix):
        return x.tolist()
    raise TypeError(f"cannot serialise {type(x).__name__}")


def gram_table(gram: List[List[int]], labels: Optional[List[str]]) -> str:
    labels = labels or [f"e{i + 1}" for i in range(len(gram))]
    cells = [[""] + labels] + [[lab] + [str(x) for x in row] for lab, row in zip(labels, gram)]
    width = max(len(c) for row in cells for c in row)
    lines = [" ".join(c.rjust(width) for c in row) for row in cells]
    lines.insert(1, "-" * len(lines[0]))
    return "\n".join(lines)


def render_text(report: dict) -> str:
    out = [f"# {report['subcommand']}"]
    result = report["result"]
    if report["subcommand"] == "paper-suite":
        out += report["lines"]
        out.append(f"{report['passed']}/{report['total']} claims passed")
        return "\n".join(out) + "\n"
    if isinstance(result, dict) and "gram" in result:
        out.append(gram_table(result["gram"], result.get("labels")))
    for key in sorted(result):
        if key in ("gram", "labels"):
            continue
        out.append(f"{key}: {json.dumps(result[key], sort_keys=True, default=_json_default)}")
    return "\n".join(out) + "\n"


def execute(req: Request) -> tuple:
    """Run a parsed request; returns (report, exit_code)."""
    if req.subcommand == "paper-suite":
        claims = run_reference_suite(Path(req.args.fixtures) if req.args.fixtures else None)
        passed = sum(c.passed for c in claims)
        report = {
            "subcommand": "paper-suite",
            "result": [c.to_json() for c in claims],
            "lines": [c.line() for c in claims],
            "passed": passed,
            "total": len(claims),
        }
        return report, 0 if passed == len(claims) else 1
    return {"subcommand": req.subcommand, "result": _handle(req)}, 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        req = parse_request(argv)
        report, code = execute(req)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except FixtureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (LatticeError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    text = render_text(report) if req.format == "text" else render_json(report)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
