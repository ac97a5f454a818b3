import json

import pytest

from hyperlap import parse, spectrum_vertex
from hyperlap.cli import main

SMALL = {"format_version": 1, "vertices": ["v1", "v2"], "hyperedges": [
    {"id": "h1", "coefficients": {"v1": 1, "v2": 1}},
    {"id": "h2", "coefficients": {"v1": 1, "v2": 2}}]}
TRIANGLE = {"format_version": 1, "vertices": ["v1", "v2", "v3"], "hyperedges": [
    {"id": "h1", "coefficients": {"v1": 1, "v2": 1}},
    {"id": "h2", "coefficients": {"v2": 1, "v3": 1}},
    {"id": "h3", "coefficients": {"v1": 1, "v2": 1, "v3": 1}}]}
MIRROR = '{"vertices": [["v1", "v3"]], "hyperedges": [["h1", "h2"]]}'


@pytest.fixture
def files(tmp_path):
    small = tmp_path / "small.json"
    small.write_text(json.dumps(SMALL))
    tri = tmp_path / "tri.json"
    tri.write_text(json.dumps(TRIANGLE))
    return tmp_path, str(small), str(tri)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_spectrum_json(files, capsys):
    _, small, _ = files
    code, out, _ = run(capsys, "spectrum", "-i", small)
    assert code == 0
    vals = [r["eigenvalue"] for r in json.loads(out)["vertex_spectrum"]]
    assert vals == pytest.approx([0.0513167019495, 1.94868329805], abs=1e-11)


def test_spectrum_csv(files, capsys):
    _, small, _ = files
    code, out, _ = run(capsys, "spectrum", "-i", small, "--format", "csv")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "index,eigenvalue" and len(lines) == 3
    assert lines[1].startswith("1,0.0513")


def test_output_is_deterministic(files, capsys):
    _, _, tri = files
    outputs = {run(capsys, cmd, "-i", tri)[1] for cmd in ["bounds"] * 3}
    assert len(outputs) == 1


def test_check_passes(files, capsys):
    _, small, tri = files
    assert run(capsys, "check", "-i", small)[0] == 0
    code, out, _ = run(capsys, "check", "-i", tri, "--tau", MIRROR)
    report = json.loads(out)
    assert code == 0 and report["passed"]
    assert "automorphism" in {c["name"] for c in report["checks"]}


def test_symmetries_with_tau(files, capsys):
    _, _, tri = files
    code, out, _ = run(capsys, "symmetries", "-i", tri, "--tau", MIRROR)
    rep = json.loads(out)
    assert code == 0
    assert rep["involution"]["antisymmetric"] == [0.5]
    assert {"first": "v1", "second": "v3", "mode": "opposite-sign", "eigenvalue": 0.5} in rep["localized_eigenpairs"]


def test_bipartite_and_kernel(files, capsys):
    _, small, _ = files
    code, out, _ = run(capsys, "bipartite", "-i", small)
    assert code == 0 and json.loads(out)["components"][0]["attained"] is False
    code, out, _ = run(capsys, "kernel", "-i", small)
    assert code == 0 and json.loads(out)["elementary_modes"] == []


def test_generate_twins_then_spectrum(tmp_path, capsys):
    doc = tmp_path / "g.json"
    assert main(["generate", "--seed", "7", "--planted", "twins", "-o", str(doc)]) == 0
    code, out, _ = run(capsys, "spectrum", "-i", str(doc))
    vals = [r["eigenvalue"] for r in json.loads(out)["vertex_spectrum"]]
    assert min(abs(v) for v in vals) <= 1e-9


def test_generate_is_seeded(capsys):
    a = run(capsys, "generate", "--seed", "3", "--n", "5", "--m", "4")[1]
    b = run(capsys, "generate", "--seed", "3", "--n", "5", "--m", "4")[1]
    assert a == b
    parse(a)


def test_generate_involution_quotient(tmp_path, capsys):
    doc, tau = tmp_path / "g.json", tmp_path / "tau.json"
    assert main(["generate", "--seed", "2", "--n", "7", "--m", "6", "--planted", "involution",
                 "-o", str(doc), "--tau-output", str(tau)]) == 0
    assert run(capsys, "check", "-i", str(doc), "--tau", str(tau))[0] == 0
    code, out, _ = run(capsys, "quotient", "-i", str(doc), "--tau", str(tau))
    assert code == 0
    assert spectrum_vertex(parse(out)).eigenvalues.size < parse(doc.read_text()).N


def test_bad_inputs(tmp_path, files, capsys, caplog):
    bad = dict(SMALL)
    bad["hyperedges"] = [{"id": "h1", "coefficients": {"v1": 0, "v2": 1}}]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    code, out, _ = run(capsys, "spectrum", "-i", str(path))
    assert code == 2 and out == ""
    assert "hyperedges[0].coefficients.v1" in caplog.text
    path.write_text("{not json")
    assert run(capsys, "spectrum", "-i", str(path))[0] == 2
    assert "line 1" in caplog.text
    assert run(capsys, "spectrum", "-i", str(tmp_path / "missing.json"))[0] == 2
    _, small, _ = files
    assert run(capsys, "quotient", "-i", small)[0] == 2
    assert run(capsys, "bipartite", "-i", small, "--format", "csv")[0] == 2
    assert run(capsys, "symmetries", "-i", small, "--tau", "{bad")[0] == 2
