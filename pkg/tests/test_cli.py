import json
import subprocess
import sys

import pytest

from vqaa import cli

SDES = {
    "target": {"kind": "cipher", "cipher": "sdes"},
    "ansatz": {"n_qubits": 5, "n_layers": 3},
    "optimizer": {"method": "hyperspherical", "max_iterations": 512},
    "encoding": {"kind": "nonorthogonal", "states": 4},
    "trials": 3,
    "seed": 1,
}


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def write_config(tmp_path, **kw):
    p = tmp_path / "c.json"
    p.write_text(json.dumps({**SDES, **kw}))
    return str(p)


def test_equiv_check(capsys):
    code, out, _ = run(["equiv-check", "--qubits", "2", "--draws", "10"], capsys)
    assert code == 0
    assert json.loads(out)["max_tvd"] < 1e-10


def test_plot_missing_file(tmp_path, capsys):
    code, _, err = run(["plot", "--in", str(tmp_path / "nope.csv"), "--out", str(tmp_path / "f.svg")], capsys)
    assert code == 2 and "error" in err


def test_vectors(capsys):
    code, out, _ = run(["vectors", "--cipher", "blowfish"], capsys)
    data = json.loads(out)
    assert code == 0 and data["passed"] == data["vectors"] > 0 and not data["failures"]


def test_unknown_flag(capsys):
    code, _, err = run(["equiv-check", "--colour", "red"], capsys)
    assert code == 2 and "usage" in err


def test_attack_success(tmp_path, capsys):
    code, out, _ = run(["attack", "--config", write_config(tmp_path)], capsys)
    data = json.loads(out)
    assert code == 0 and data["success"] and data["recovered_key_hex"]


def test_attack_failure_exit_code(tmp_path, capsys):
    cfg = write_config(tmp_path, optimizer={"method": "gd", "max_iterations": 1})
    for trial in range(20):
        code, out, _ = run(["attack", "--config", cfg, "--trial", str(trial)], capsys)
        if code == 1:
            assert json.loads(out)["success"] is False
            return
    pytest.fail("every 1-iteration run succeeded")


def test_config_error(tmp_path, capsys):
    code, _, err = run(["attack", "--config", write_config(tmp_path, ansatz={"n_qubits": 3})], capsys)
    assert code == 2 and "error" in err


def test_seed_flag_and_env(tmp_path, capsys, monkeypatch):
    cfg = write_config(tmp_path)
    _, a, _ = run(["attack", "--config", cfg, "--seed", "9"], capsys)
    monkeypatch.setenv("VQAA_SEED", "9")
    _, b, _ = run(["attack", "--config", cfg], capsys)
    monkeypatch.setenv("VQAA_SEED", "10")
    _, c, _ = run(["attack", "--config", cfg], capsys)
    strip = lambda s: {k: v for k, v in json.loads(s).items() if k != "wall_time"}
    assert strip(a) == strip(b) != strip(c)


def test_bench_and_plot(tmp_path, capsys):
    cfg = write_config(tmp_path, output={"dir": str(tmp_path / "out"), "prefix": "s"})
    code, out, _ = run(["bench", "--config", cfg], capsys)
    summary = json.loads(out)
    assert code == 0 and summary["trials"] == 3
    cum = tmp_path / "out" / "s_cumulative.csv"
    code, _, _ = run(["plot", "--in", str(cum), "--out", str(tmp_path / "f.svg"), "--baseline", "512"], capsys)
    assert code == 0 and (tmp_path / "f.svg").read_text().startswith("<svg")


def test_brute(capsys):
    code, out, _ = run(["brute", "--target", "sdes", "--key-hex", "282", "--plain-hex", "97"], capsys)
    data = json.loads(out)
    assert code == 0 and 1 <= data["trials"] <= 1024


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "vqaa", "vectors", "--cipher", "saes"], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["passed"] == 2
