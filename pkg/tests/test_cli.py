import csv
import json

import pytest

from bcs_anneal import cli
from bcs_anneal.io import manifest_path


def run(argv, capsys=None):
    code = cli.main(argv)
    return code


def read_csv(path):
    with open(path) as fh:
        return list(csv.DictReader(fh))


def test_gibbs_table(tmp_path):
    out = tmp_path / "g.csv"
    assert cli.main(["gibbs", "--n", "4", "--two-sz", "0", "--g", "0.5", "--out", str(out)]) == 0
    rows = read_csv(out)
    assert len(rows) == 6
    assert sum(float(r["probability"]) for r in rows) == pytest.approx(1.0, abs=1e-15)
    man = json.loads(manifest_path(out).read_text())
    assert man["config"]["g"] == 0.5
    assert man["config"]["seed"] == 7
    assert man["prng"] and man["version"]


def test_byte_identical_reruns(tmp_path):
    a, b = tmp_path / "a" / "e.csv", tmp_path / "b" / "e.csv"
    for out in (a, b):
        assert cli.main(["entropy", "--n", "10", "--g-list", "0.04,0.1", "--out", str(out)]) == 0
    assert a.read_bytes() == b.read_bytes()
    ma = json.loads(manifest_path(a).read_text())
    mb = json.loads(manifest_path(b).read_text())
    ma["config"].pop("out"), mb["config"].pop("out")
    assert ma == mb


def test_full_precision_numbers(tmp_path):
    out = tmp_path / "d.csv"
    cli.main(["eta-dist", "--n", "20", "--g", "0.1", "--out", str(out)])
    rows = read_csv(out)
    p = [r["probability"] for r in rows]
    assert any(len(v.replace("e", "").lstrip("0.")) >= 15 for v in p)
    assert sum(map(float, p)) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize(
    "argv,code",
    [
        (["gibbs", "--n", "5", "--two-sz", "0", "--g", "0.1"], 2),
        (["gibbs", "--n", "4", "--g", "-1"], 2),
        (["gibbs", "--n", "4"], 2),
        (["evolve", "--n", "4", "--g", "0.1", "--t0", "5", "--t1", "1"], 2),
        (["gibbs", "--n", "4", "--g", "0.1", "--levels-file", "/nonexistent"], 2),
        (["gibbs", "--n", "80", "--g", "0.1"], 3),
        (["spectrum", "--n", "16", "--g", "0.1"], 3),
        (["eta-dist", "--n", "20000", "--g", "0.1"], 3),
        (["gibbs", "--bogus"], 2),
    ],
)
def test_exit_codes(argv, code, capsys):
    assert cli.main(argv + ["--error-json"] if argv[1] != "--bogus" else argv) == code
    err = capsys.readouterr().err
    if argv[1] != "--bogus":
        payload = json.loads(err.strip().splitlines()[-1])
        assert payload["exit_code"] == code


def test_levels_file(tmp_path):
    lv = tmp_path / "lv.txt"
    lv.write_text("0.1\n0.2\n0.35\n0.4\n")
    out = tmp_path / "s.csv"
    assert cli.main(["spectrum", "--n", "4", "--g", "0.2", "--levels-file", str(lv), "--out", str(out), "--points", "20"]) == 0
    assert len(read_csv(out)) == 20 * 6
    assert (tmp_path / "s.minima.csv").exists()
    lv.write_text("0.4\n0.2\n0.35\n0.5\n")
    assert cli.main(["spectrum", "--n", "4", "--g", "0.2", "--levels-file", str(lv)]) == 2


def test_evolve_json(tmp_path):
    out = tmp_path / "ev.json"
    assert cli.main(["evolve", "--n", "4", "--g", "0.2", "--out", str(out), "--samples", "10"]) == 0
    d = json.loads(out.read_text())
    assert set(d) >= {"params", "eta_trace", "polarizations", "final_probs", "final_eta"}
    assert len(d["final_probs"]) == 6
    assert sum(d["final_probs"].values()) == pytest.approx(1.0, abs=1e-6)
    assert manifest_path(out).exists()


def test_qgroup_and_verify(tmp_path, capsys):
    assert cli.main(["qgroup", "--out", str(tmp_path / "q.csv")]) == 0
    assert cli.main(["verify", "--check", "Yang-Baxter residual (relative)"]) == 0
    assert "[PASS]" in capsys.readouterr().err


def test_verify_failure_exit_code(monkeypatch):
    import bcs_anneal.gibbs as g

    orig = g.log_p_minus_plus
    monkeypatch.setattr(g, "log_p_minus_plus", lambda m, n, gg: orig(-m, n, gg))
    assert cli.main(["verify", "--check", "oracle equivalence product vs enumeration (rel)"]) == 4


def test_figure_tables(tmp_path):
    assert cli.main(["figure", "--id", "5b", "--out", str(tmp_path)]) == 0
    assert (tmp_path / "fig5b.csv").exists()
    assert manifest_path(tmp_path / "fig5b.csv").exists()
