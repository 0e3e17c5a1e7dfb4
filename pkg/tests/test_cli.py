import io
import json
import math

import pytest

from fracmt import cli, exponents, oracle
from fracmt.errors import ConvergenceError


def run(args):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(args, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_alpha_star_reference_value():
    code, out, _ = run(["alpha-star", "--N", "1", "--s", "0.5"])
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["alpha_star"] == pytest.approx(2 * math.pi ** 2, rel=1e-12)
    assert out.count("19.7392088") >= 1


def test_gamma_hurwitz():
    code, out, _ = run(["gamma", "--N", "2", "--s", "0.5", "--method", "hurwitz"])
    doc = json.loads(out)
    assert code == 0
    assert doc["result"]["gamma"] == pytest.approx(71.183, abs=5e-4)
    assert doc["result"]["method"] == "hurwitz_closed"


def test_metadata_block():
    _, out, _ = run(["gamma", "--N", "3", "--s", "0.7", "--seed", "4"])
    meta = json.loads(out)["metadata"]
    assert set(meta) >= {"params", "tolerances", "seed", "artifact_version"}
    assert meta["seed"] == 4 and meta["params"]["N"] == 3


def test_seventeen_digits_round_trip():
    _, out, _ = run(["gamma", "--N", "2", "--s", "0.3"])
    g = json.loads(out)["result"]["gamma"]
    assert g == exponents.gamma_constant(exponents.FractionalParams(2, 0.3)).gamma_value
    assert cli._num(0.1) == "0.10000000000000001"


def test_deterministic_output():
    args = ["sweep", "--factors", "0.9,1.1", "--eps", "1e-1,1e-2", "--format", "csv"]
    assert run(args)[1] == run(args)[1]


@pytest.mark.parametrize("args", [
    ["gamma", "--s", "1.5"],
    ["gamma", "--s", "0"],
    ["gamma", "--N", "0"],
    ["gamma", "--bogus"],
    ["nonsense"],
    [],
    ["moser-scan", "--eps", "a,b"],
    ["seminorm"],
    ["sweep", "--eps", "1e-2,1e-1"],
])
def test_input_errors_exit_1(args):
    code, _, err = run(args)
    assert code == 1
    assert err


def test_s_message_cites_constraint():
    _, _, err = run(["alpha-star", "--s", "1.2"])
    assert "sp = N" in err


def test_numeric_failure_exit_2(monkeypatch):
    def boom(*a, **k):
        raise ConvergenceError("no", {})

    monkeypatch.setattr(exponents, "gamma_constant", boom)
    assert run(["gamma"])[0] == 2


def test_verify_lemmas():
    code, out, _ = run(["verify", "--suite", "lemmas"])
    doc = json.loads(out)
    assert code == 0
    assert all(r["status"] == "pass" for r in doc["result"])
    assert set(doc["result"][0]) == {"check_name", "status", "discrepancy", "tolerance"}


def test_verify_failure_exit_3(monkeypatch):
    bad = [oracle.CheckRecord("x", "fail", 1.0, 0.1)]
    monkeypatch.setattr(oracle, "specfun_suite", lambda: bad)
    assert run(["verify", "--suite", "specfun"])[0] == 3


def test_moser_scan_csv_schema():
    code, out, _ = run(["moser-scan", "--eps", "1e-1,1e-2", "--format", "csv"])
    lines = [l for l in out.splitlines() if not l.startswith("#")]
    assert code == 0
    assert lines[0] == "eps,i1,i2,i3,i4,total,gamma_limit"
    assert len(lines) == 3


def test_sweep_csv_schema():
    _, out, _ = run(["sweep", "--factors", "1.0", "--eps", "1e-1,1e-2", "--format", "csv"])
    lines = [l for l in out.splitlines() if not l.startswith("#")]
    assert lines[0] == "factor,alpha,eps,seminorm_p,functional_value,regime"
    assert "decision_rules" in out


def test_seminorm_from_file(tmp_path):
    path = tmp_path / "u.json"
    path.write_text(json.dumps({"breakpoints": [0.1, 1.0], "values": [1.0, 0.0],
                                "interpolation": "linear_in_log_r"}))
    code, out, _ = run(["seminorm", "--profile", str(path), "--N", "2", "--s", "0.5"])
    assert code == 0
    assert json.loads(out)["result"]["value_p"] > 0


def test_seminorm_bad_profile(tmp_path):
    path = tmp_path / "u.json"
    path.write_text('{"breakpoints": [0.1, 1.0], "values": [1.0, 2.0]}')
    assert run(["seminorm", "--profile", str(path)])[0] == 1
    assert run(["seminorm", "--profile", str(tmp_path / "missing.json")])[0] == 1


def test_config_defaults_and_override(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# manifest\nN = 1\ns = 0.5\n")
    _, out, _ = run(["alpha-star", "--config", str(cfg)])
    assert json.loads(out)["result"]["alpha_star"] == pytest.approx(2 * math.pi ** 2)
    _, out, _ = run(["alpha-star", "--config", str(cfg), "--N", "2"])
    assert json.loads(out)["metadata"]["params"]["N"] == 2


def test_config_unknown_key(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("N = 2\ncolour = blue\n")
    code, _, err = run(["gamma", "--config", str(cfg)])
    assert code == 1 and "colour" in err


def test_out_file(tmp_path):
    path = tmp_path / "g.json"
    code, out, _ = run(["gamma", "--out", str(path)])
    assert code == 0 and out == ""
    assert json.loads(path.read_text())["command"] == "gamma"


def test_probe_smoke():
    code, out, _ = run(["probe", "--alpha-factor", "0.5", "--dof", "4", "--max-iters", "2"])
    doc = json.loads(out)
    assert code == 0
    trace = doc["result"]["trace"]
    assert all(b >= a for a, b in zip(trace, trace[1:]))
    assert set(doc["result"]["profile"]) == {"breakpoints", "values", "interpolation"}
