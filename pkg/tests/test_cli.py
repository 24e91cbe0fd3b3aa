import json
import shutil
import subprocess
import sys

import pytest

from k3arith.cli import SUBCOMMANDS, UsageError, build_parser, main, parse_request
from k3arith.reference_suite import FIXTURE_DIR, REQUIRED_FIXTURES, run_reference_suite

FX = str(FIXTURE_DIR)


def fx(name):
    return f"{FX}/{name}.json"


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parser_covers_every_subcommand():
    sub = next(a for a in build_parser()._actions if a.dest == "subcommand")
    assert set(sub.choices) == set(SUBCOMMANDS)


def test_parse_request_examples():
    assert parse_request(["lattice-info", fx("pix")]).subcommand == "lattice-info"
    req = parse_request(["represents", fx("pix"), "--value", "-2"])
    assert req.subcommand == "represents" and req.args.value == -2
    assert parse_request(["fm-count", "--n", "6"]).args.n == 6


@pytest.mark.parametrize("argv", [
    [], ["frobnicate"], ["represents", fx("pix")], ["fm-count", "--n", "six"],
    ["jacobian-check", "--a", "1"], ["real-type", "--r", "1", "--a", "1", "--delta", "3"],
])
def test_usage_errors(argv, capsys):
    with pytest.raises(UsageError):
        parse_request(argv)
    assert run(argv, capsys)[0] == 2


def test_malformed_json_reports_position(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"gram": [[2, 13],\n [13, 12]')
    code, _, err = run(["lattice-info", str(bad)], capsys)
    assert code == 2 and f"{bad}:2:" in err


def test_missing_file(capsys):
    code, _, err = run(["lattice-info", "/nonexistent/x.json"], capsys)
    assert code == 2 and "cannot read" in err


def test_dimension_mismatch_is_usage_error(tmp_path, capsys):
    v = tmp_path / "v.json"
    v.write_text(json.dumps({"r": 2, "d": [1, 1], "s": 3}))
    code, _, err = run(["c2", "--lattice", fx("deg12"), str(v)], capsys)
    assert code == 2 and "must have 1 entries" in err


def test_domain_errors_exit_1(tmp_path, capsys):
    assert run(["represents", fx("pix"), "--value", "0"], capsys)[0] == 1
    assert run(["fm-count", "--n", "0"], capsys)[0] == 1
    assert run(["real-type", "--r", "3", "--a", "0", "--delta", "0"], capsys)[0] == 1
    assert run(["jacobian-check", "--a", "1", "--b", "1", "--c", "1", "--d", "1"], capsys)[0] == 1
    deg = tmp_path / "deg.json"
    deg.write_text(json.dumps({"gram": [[1, 1], [1, 1]]}))
    assert run(["lattice-info", str(deg)], capsys)[0] == 1
    nq = tmp_path / "nq.json"
    nq.write_text(json.dumps({"matrix": [[2, 1], [1, 1]]}))
    assert run(["monodromy", str(nq)], capsys)[0] == 1


def test_subcommand_outputs(tmp_path, capsys):
    code, out, _ = run(["represents", fx("piy"), "--value", "-2"], capsys)
    assert code == 0 and json.loads(out)["result"]["represented"] is False
    code, out, _ = run(["binary-equiv", fx("pix"), fx("piy")], capsys)
    assert json.loads(out)["result"]["equivalent"] is False
    code, out, _ = run(["genus-compare", fx("pix"), fx("piy")], capsys)
    assert json.loads(out)["result"]["genus_equal"] is True
    code, out, _ = run(["c2", "--lattice", fx("deg12"), fx("v_deg12")], capsys)
    assert json.loads(out)["result"]["c2"] == 5
    code, out, _ = run(["fm-count", "--n", "30"], capsys)
    assert json.loads(out)["result"]["partners"] == 4
    code, out, _ = run(["real-type", "--r", "10", "--a", "8", "--delta", "0"], capsys)
    assert json.loads(out)["result"]["kind"] == "two_tori"
    code, out, _ = run(["involution", fx("inv_swap_u"), "--mukai"], capsys)
    assert json.loads(out)["result"]["invariants"] == [3, 1, 1]
    code, out, _ = run(["monodromy", fx("mono_unipotent2_m2")], capsys)
    res = json.loads(out)["result"]
    assert (res["m"], res["N"], res["kulikov"]) == ("2/1", [[0, 1], [0, 0]], "II")
    code, out, _ = run(["monodromy", fx("mono_unipotent2"), "--compare", fx("mono_unipotent2_m2")], capsys)
    assert json.loads(out)["result"]["same_char_poly"] is True
    code, out, _ = run(["weyl", fx("weyl_a1a1_neg")], capsys)
    res = json.loads(out)["result"]
    assert res["member"] and res["recomposes"] and len(res["word"]) == 2
    code, out, _ = run(["jacobian-check", "--bound", "4"], capsys)
    assert json.loads(out)["result"]["failures"] == 0
    code, out, _ = run(["twist", "--lattice", fx("deg12"), fx("v_deg12"), fx("v_deg12")], capsys)
    assert code == 1  # (2, h, 3) is isotropic, not spherical


def test_text_format_uses_labels(capsys):
    code, out, _ = run(["lattice-info", fx("pix"), "--format", "text"], capsys)
    assert code == 0
    header = out.splitlines()[1].split()
    assert header == ["C", "f"]
    code, out, _ = run(["lattice-info", fx("twosummand"), "--format", "text"], capsys)
    assert "Sigma" in out.splitlines()[1]


def test_json_output_is_byte_stable(capsys):
    outs = [run(["lattice-info", fx("pix")], capsys)[1] for _ in range(2)]
    assert outs[0] == outs[1]
    cmd = [sys.executable, "-m", "k3arith", "monodromy", fx("mono_unipotent3")]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b


def test_reference_suite_all_pass(capsys):
    code, out, _ = run(["paper-suite"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["passed"] == doc["total"] == len(run_reference_suite())


def test_reference_suite_missing_fixtures(tmp_path, capsys):
    assert run(["paper-suite", "--fixtures", str(tmp_path / "nope")], capsys)[0] == 2
    shutil.copytree(FIXTURE_DIR, tmp_path / "fx")
    (tmp_path / "fx" / "pix.json").unlink()
    code, _, err = run(["paper-suite", "--fixtures", str(tmp_path / "fx")], capsys)
    assert code == 1 and "pix" in err


def test_reference_suite_detects_corrupted_fixture(tmp_path, capsys):
    shutil.copytree(FIXTURE_DIR, tmp_path / "fx")
    doc = json.loads((tmp_path / "fx" / "piy.json").read_text())
    doc["gram"] = [[8, 15], [15, 11]]
    (tmp_path / "fx" / "piy.json").write_text(json.dumps(doc))
    code, out, _ = run(["paper-suite", "--fixtures", str(tmp_path / "fx")], capsys)
    assert code == 1
    failed = {c["claim"] for c in json.loads(out)["result"] if not c["passed"]}
    assert "disc145.determinants" in failed
    # only claims that read Pi_Y may change
    assert failed <= {"disc145.determinants", "disc145.same_genus", "disc145.not_isometric", "disc145.piy_misses_-2"}


def test_fixture_set_is_complete():
    for name in REQUIRED_FIXTURES:
        assert (FIXTURE_DIR / f"{name}.json").is_file()
