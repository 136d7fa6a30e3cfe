import io
import json

import pytest

from ssends.cli import DOMAIN, OK, USAGE, VERIFY, run
from ssends.endspace import parse_descriptor
from ssends.homeo.tables import dumps_table, random_cell_permutation
from ssends.structure.standard_form import standard_form


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_classify_uniform():
    code, out, _ = call("classify", "--genus", "0", "cantor")
    assert code == OK
    assert "flags: self_similar uniformly_self_similar" in out
    assert "uniformly perfect" in out and "12 involutions" in out


def test_classify_type2_json():
    code, out, _ = call("classify", "--genus", "0", "--format", "json", "omega(pt)")
    assert code == OK
    rep = json.loads(out)
    assert rep["flags"]["theorem52_type2"]
    assert any("not perfect" in v and "not generated by torsion" in v for v in rep["verdicts"])


def test_classify_errors():
    assert call("classify", "cantor")[0] == USAGE
    code, _, err = call("classify", "--genus", "0", "pt[g]")
    assert code == DOMAIN and err.startswith("E:precondition:")
    code, _, err = call("classify", "--genus", "two", "pt")
    assert code == USAGE and err.startswith("E:usage:")
    code, _, err = call("classify", "--genus", "0", "omega(")
    assert code == DOMAIN and err.startswith("E:descriptor:")


def test_rank():
    code, out, _ = call("rank", "ord(w^2*3+1)")
    assert code == OK
    assert "rank: 3" in out and "multiplicity: 3" in out
    code, out, _ = call("rank", "--format", "json", "cseq(pt)")
    assert json.loads(out)["perfect_kernel"] == "cantor"


def test_order_formats():
    code, out, _ = call("order", "omega(pt)")
    assert code == OK and "1 < 0" in out
    code, out, _ = call("order", "--format", "dot", "omega(pt)")
    assert out.startswith("digraph") and "->" in out and "doublecircle" in out
    code, out, _ = call("order", "--format", "json", "cantor")
    assert json.loads(out)["classes"][0]["cardinality"] == "continuum"
    assert call("order", "--format", "svg", "cantor")[0] == USAGE


@pytest.mark.parametrize("text,verdict", [
    ("union(omega(pt),omega(pt))", "none"),
    ("omega(pt)", "self-similar"),
    ("cantor", "uniformly-self-similar"),
])
def test_selfsim(text, verdict):
    code, out, _ = call("selfsim", text)
    assert code == OK and out.strip() == verdict


def test_standard_form():
    code, out, _ = call("standard-form", "--window", "1", "cantor")
    assert code == OK
    assert "U[0]: 0.1" in out and "U[1]: 1.0" in out
    code, _, err = call("standard-form", "omega(pt)")
    assert code == DOMAIN and err.startswith("E:precondition:")
    assert call("standard-form", "--window", "-1", "cantor")[0] == USAGE


def test_emit_dot():
    code, out, _ = call("emit-dot", "union(cantor,omega[g](pt))")
    assert code == OK and out.startswith("digraph") and out.count("->") >= 3


def test_unknown_command_and_flag():
    assert call("frobnicate")[0] == USAGE
    assert call("rank", "--bogus", "pt")[0] == USAGE
    assert call()[0] == USAGE


def test_factor_and_verify(tmp_path):
    sf = standard_form(parse_descriptor("cseq(pt)"))
    table = tmp_path / "g.json"
    table.write_text(dumps_table(random_cell_permutation(sf.model, 4)))
    cert = tmp_path / "cert.json"
    code, out, _ = call("factor", "cseq(pt)", "--homeo", str(table), "--out", str(cert))
    assert code == OK and "verdict: pass" in out
    code, out, _ = call("verify", str(cert))
    assert code == OK and "verdict: pass" in out

    obj = json.loads(cert.read_text())
    obj["word"][0]["generator"] = "sigma" if obj["word"][0]["generator"] == "tau" else "tau"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(obj))
    code, _, err = call("verify", str(bad))
    assert code == VERIFY and err.startswith("E:verify:")


def test_factor_random_to_stdout_is_deterministic():
    first = call("factor", "cantor", "--random", "--seed", "9")
    second = call("factor", "cantor", "--random", "--seed", "9")
    assert first == second
    code, out, err = first
    assert code == OK and json.loads(out)["verdict"] == "pass"
    assert err.startswith("verdict: pass")


def test_factor_errors(tmp_path):
    assert call("factor", "cantor")[0] == USAGE
    assert call("factor", "cantor", "--random", "--homeo", "x")[0] == USAGE
    code, _, err = call("factor", "cantor", "--homeo", str(tmp_path / "missing.json"))
    assert code == DOMAIN and err.startswith("E:io:")
    junk = tmp_path / "junk.json"
    junk.write_text('{"format": "perm-v1", "pairs": [["0", "1"]]}')
    code, _, err = call("factor", "cantor", "--homeo", str(junk))
    assert code == DOMAIN and err.startswith("E:homeo:")
    code, _, err = call("verify", str(junk))
    assert code == DOMAIN and err.startswith("E:certificate:")
