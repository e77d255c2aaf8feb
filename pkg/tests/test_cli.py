import io
import json
import subprocess
import sys

import pytest

from conormal.cli import DEFAULT_SEED, main, resolve_seed

EX36 = "ring x y z s;\nparam s;\nfamily X = x^2 + y^2 + s, x^2 + z^2 - s;\n"
NODE = "ring x y s;\nparam s;\nmode plane;\nfamily X = x*y - s;\n"
NODAL = "ring x y;\nmode plane;\nfamily C = y^2 - x^3 - x^2;\n"


def run(tmp_path, text, *argv):
    path = tmp_path / "in.txt"
    path.write_text(text)
    out = io.StringIO()
    code = main(["--input", str(path), *argv], stdout=out)
    return code, out.getvalue()


def test_gauss_map_json(tmp_path):
    code, out = run(tmp_path, EX36, "gauss-map")
    assert code == 0
    rep = json.loads(out)
    assert rep["seed"] == DEFAULT_SEED
    forms = {c["name"]: c["form"] for c in rep["results"]["coordinates"]}
    assert forms == {"w12": "-4*x*y", "w13": "4*x*z", "w23": "4*y*z"}


def test_specialize_and_conserve(tmp_path):
    code, out = run(tmp_path, NODE, "specialize", "--at", "0")
    comps = json.loads(out)["results"]["components"]
    assert [c["multiplicity"] for c in comps] == [1, 1, 2]
    code, out = run(tmp_path, NODE, "conserve", "--samples", "0,1,-1/2")
    res = json.loads(out)["results"]
    assert code == 0 and res["conserved"] and [s["total"] for s in res["samples"]] == [-2, -2, -2]


def test_nodal_warning_in_both_renderings(tmp_path):
    for fmt in ("json", "text"):
        code, out = run(tmp_path, NODAL, "--format", fmt, "degree", "--route", "euler-obstruction")
        assert code == 0
        assert "nodal cubic" in out and "-3" in out


def test_exit_codes(tmp_path):
    code, out = run(tmp_path, "ring x;\nfamily F = x + q;\n", "conormal")
    assert code == 2 and "undeclared variable" in out
    code, out = run(tmp_path, "ring x y;\nmode plane;\nfamily C = y^2 - x^4;\n", "degree", "--route", "euler-obstruction")
    assert code == 2
    code, out = run(tmp_path, EX36, "--budget", "20", "conormal")
    rep = json.loads(out)
    assert code == 3 and rep["limit"] == 20 and "20" in rep["error"]


def test_schottky_needs_no_input():
    out = io.StringIO()
    assert main(["schottky", "--gmax", "4", "--format", "text"], stdout=out) == 0
    assert "20" in out.getvalue() and "two-planes" in out.getvalue()


def test_seed_precedence():
    assert resolve_seed(None, {}) == DEFAULT_SEED
    assert resolve_seed(None, {"CONORMAL_SEED": "7"}) == 7
    assert resolve_seed(3, {"CONORMAL_SEED": "7"}) == 3


def test_reruns_are_byte_identical(tmp_path):
    path = tmp_path / "node.txt"
    path.write_text(NODE)
    cmd = [sys.executable, "-m", "conormal.cli", "--input", str(path), "jump", "--at", "0"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and b"criterion holds" in a


@pytest.mark.parametrize("fmt", ["json", "text"])
def test_stdin_input(fmt):
    # the total space is smooth, the relative singular locus is the origin of the zero fibre
    base = [sys.executable, "-m", "conormal.cli", "--format", fmt, "singular-locus"]
    rel = subprocess.run(base, input=NODE, capture_output=True, text=True)
    ab = subprocess.run(base + ["--absolute"], input=NODE, capture_output=True, text=True)
    assert rel.returncode == ab.returncode == 0
    for name in ("s", "x", "y"):
        assert name in rel.stdout
    assert "-1" in ab.stdout
