"""CLI surface: config validation, exit codes, JSON documents, file round trips."""

import json
import os

import numpy as np
import pytest

from tssim.cli import RunConfig, main, run
from tssim.decompose import dense_to_json

H2_PATH = os.path.join(os.path.dirname(__file__), "fixtures", "h2.pauli")


def write_dense(tmp_path, m, name="m.json"):
    path = tmp_path / name
    path.write_text(json.dumps(dense_to_json(m)))
    return str(path)


def test_encode_document_shape():
    code, doc = run(RunConfig(command="encode", input_path=H2_PATH, t=0.0))
    assert code == 0
    assert doc["schema"] == "1"
    assert doc["terms"] == 15
    assert doc["system_dim"] == 16
    assert doc["ancilla_dim"] == 16
    assert doc["scale"] == pytest.approx(2.697693, abs=1e-9)
    assert doc["block_residual"] < 1e-12
    assert "series" not in doc


def test_encode_with_series_block():
    code, doc = run(RunConfig(command="encode", input_path=H2_PATH, t=0.2))
    assert code == 0
    assert doc["series"]["block_residual"] < 1e-12
    assert doc["series"]["t"] == 0.2
    code, doc = run(RunConfig(command="encode", input_path=H2_PATH, t=0.2, emit_matrix=True))
    dim = doc["series"]["system_dim"] * doc["series"]["ancilla_dim"]
    assert len(doc["series"]["matrix"]) == dim * dim


def test_encode_overlong_time_exits_3():
    code, doc = run(RunConfig(command="encode", input_path=H2_PATH, t=0.9))
    assert code == 3
    assert doc["error"]["exit"] == 3


def test_missing_input_exits_2():
    code, doc = run(RunConfig(command="encode", input_path="/nonexistent/x.pauli"))
    assert code == 2
    assert doc["error"]["type"] == "ParseError"


def test_bad_json_exits_2(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    code, doc = run(RunConfig(command="decompose", input_path=str(p), format="dense"))
    assert code == 2


def test_bad_config_exits_3():
    code, _ = run(RunConfig(command="estimate", input_path=H2_PATH, bits=0))
    assert code == 3
    code, _ = run(RunConfig(command="estimate", input_path=H2_PATH, t=-1.0))
    assert code == 3
    code, _ = run(RunConfig(command="nope"))
    assert code == 3


def test_estimate_requires_pauli_format(tmp_path):
    path = write_dense(tmp_path, np.diag([0.5, -0.5]))
    code, doc = run(RunConfig(command="estimate", input_path=path, format="dense"))
    assert code == 3


def test_estimate_matches_reference_energy():
    for method, t in (("exact", 1.0), ("taylor", 0.2), ("dc", 1.0)):
        code, doc = run(RunConfig(
            command="estimate", input_path=H2_PATH, method=method, t=t, bits=16))
        assert code == 0
        assert doc["energy"] == pytest.approx(-1.8510456784448643, abs=1e-3)
        assert len(doc["phase_bits"]) == 16
        assert 0 < doc["success_prob"] <= 1


def test_estimate_ipea_agrees_with_pea():
    base = dict(command="estimate", input_path=H2_PATH, method="exact", t=1.0, bits=14)
    _, a = run(RunConfig(estimator="pea", **base))
    _, b = run(RunConfig(estimator="ipea", **base))
    # rounding vs truncation: at most one grid step apart, scaled by the
    # steepest slope of scale * cos(2 pi phase)
    assert abs(a["energy"] - b["energy"]) <= 2.7 * 2 * np.pi * 2**-14


def test_decompose_then_verify_round_trip(tmp_path):
    rng = np.random.default_rng(5)
    m = (rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))) / 16.0
    src = write_dense(tmp_path, m)
    out = tmp_path / "dec.json"
    code, doc = run(RunConfig(command="decompose", input_path=src, format="dense",
                              output_path=str(out)))
    assert code == 0
    assert doc["residual"] < 1e-9
    out.write_text(json.dumps(doc))
    code, vdoc = run(RunConfig(command="verify", input_path=str(out)))
    assert code == 0
    assert vdoc["ok"] is True
    assert vdoc["branches"] == doc["branches"]


def test_verify_rejects_tampered_document(tmp_path):
    rng = np.random.default_rng(6)
    m = rng.normal(size=(4, 4)) / 8.0
    src = write_dense(tmp_path, m)
    code, doc = run(RunConfig(command="decompose", input_path=src, format="dense"))
    assert code == 0
    doc["matrix"]["entries"][0][0] += 0.5
    bad = tmp_path / "tampered.json"
    bad.write_text(json.dumps(doc))
    code, vdoc = run(RunConfig(command="verify", input_path=str(bad)))
    assert code == 3


def test_verify_requires_embedded_matrix(tmp_path):
    p = tmp_path / "no_matrix.json"
    p.write_text(json.dumps({"n": 1, "dim": 2, "scale": 1.0, "terms": []}))
    code, _ = run(RunConfig(command="verify", input_path=str(p)))
    assert code == 2


def test_gates_documents():
    code, doc = run(RunConfig(command="gates", input_path=H2_PATH, method="select"))
    assert (code, doc["cnots"], doc["ancilla_qubits"]) == (0, 80, 4)
    code, doc = run(RunConfig(command="gates", input_path=H2_PATH, method="dc",
                              pea_control=True))
    assert (code, doc["cnots"]) == (0, 256)
    code, doc = run(RunConfig(command="gates", input_path=H2_PATH, method="dense"))
    assert (code, doc["cnots"]) == (0, 384)
    code, _ = run(RunConfig(command="gates", input_path=H2_PATH, method="qft"))
    assert code == 3


def test_h2_walkthrough_pins():
    code, doc = run(RunConfig(command="h2", bits=16))
    assert code == 0
    assert doc["terms"] == 15
    assert doc["qubits"] == 4
    assert doc["ground_energy"] == pytest.approx(-1.8510456784448643, abs=1e-12)
    sel = doc["select_path"]
    assert sel["select_cnots"] == 64
    assert sel["prepare_cnots"] == 16
    assert sel["encoding_cnots"] == 80
    assert sel["series_cnots"] == 640
    dc = doc["decomposition"]
    assert dc["groups"] == 2
    assert dc["branches"] == 4
    assert dc["ancilla_dim"] == 4
    assert dc["gates"] == 32
    assert dc["cnots"] == 128
    assert dc["cnots_with_estimation_control"] == 256
    assert doc["dense_bound_cnots"] == 384
    for route in doc["estimates"].values():
        assert route["error"] < 1e-3


def test_histogram_command_deterministic():
    cfg = RunConfig(command="histogram", trials=500, iterations=10, seed=9)
    a = run(cfg)
    b = run(RunConfig(command="histogram", trials=500, iterations=10, seed=9))
    assert a == b
    assert a[0] == 0
    assert json.dumps(a[1], sort_keys=True) == json.dumps(b[1], sort_keys=True)


def test_main_writes_output_file(tmp_path, capsys):
    out = tmp_path / "doc.json"
    rc = main(["gates", "--input", H2_PATH, "--method", "select",
               "--output", str(out)])
    assert rc == 0
    assert capsys.readouterr().out == ""
    doc = json.loads(out.read_text())
    assert doc["cnots"] == 80


def test_main_stdout_and_exit_codes(capsys):
    rc = main(["estimate", "--input", H2_PATH, "--method", "taylor",
               "--t", "0.2", "--bits", "12"])
    assert rc == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["command"] == "estimate"
    rc = main(["encode", "--input", H2_PATH, "--t", "0.9"])
    assert rc == 3
    err = json.loads(capsys.readouterr().out)
    assert err["error"]["exit"] == 3
    rc = main(["encode", "--input", "/nonexistent/y.pauli"])
    assert rc == 2
    capsys.readouterr()


def test_main_rejects_unknown_flags():
    with pytest.raises(SystemExit) as e:
        main(["estimate", "--input", H2_PATH, "--frobnicate"])
    assert e.value.code == 2


def test_identical_config_bytes(capsys):
    args = ["h2", "--bits", "10"]
    assert main(args) == 0
    first = capsys.readouterr().out
    assert main(args) == 0
    assert capsys.readouterr().out == first
