import json
import subprocess
import sys


from indturan import decode
from indturan.cli import main
from indturan.geometry import pg2


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def manifest(out):
    return json.loads((out / "manifest.json").read_text())


def test_gen_pg2_writes_heawood_and_sidecar(tmp_path, capsys):
    out = tmp_path / "gen"
    code, _ = run(capsys, "gen", "--pg2", "2", "--out", str(out))
    assert code == 0
    g6 = next(out.glob("*.g6"))
    assert decode(g6.read_text().strip()) == pg2(2).graph
    side = json.loads(next(p for p in out.glob("*.json") if p.name not in ("manifest.json", "summary.json"))
                      .read_text())
    assert len(side["vertices"]) == 14
    m = manifest(out)
    assert m["command"] == "gen" and m["seeds"] == {"seed": 0} and g6.name in m["artifacts"]


def test_verify_quadrangle_three(tmp_path, capsys):
    code, cap = run(capsys, "verify", "--quadrangle", "3", "--out", str(tmp_path))
    assert code == 0
    assert "diagonals never colinear" in cap.out


def test_search_trivial_pattern(tmp_path, capsys):
    cst = tmp_path / "trivialH.cst"
    cst.write_text("# edge plus an isolated vertex\nsubgraph B_\n")
    out = tmp_path / "s"
    code, cap = run(capsys, "search", "--n", "5", "--constraints", str(cst), "--out", str(out))
    assert code == 0
    cert = json.loads((out / "certificate.json").read_text())
    assert cert["value"] == 0 and decode(cert["certificate"]).num_edges == 0
    assert str(cst) in manifest(out)["input_hashes"]

    code, cap = run(capsys, "certify", str(out / "certificate.json"), "--out", str(tmp_path / "c"))
    assert code == 0

    code, cap = run(capsys, "replay", str(out / "manifest.json"), "--out", str(tmp_path / "r"))
    assert code == 0 and "identical\tcertificate.json" in cap.out


def test_bad_manifest_reports_line(tmp_path, capsys):
    cst = tmp_path / "bad.cst"
    cst.write_text("subgraph Cr\nsupergraph Cr\n")
    out = tmp_path / "o"
    code, cap = run(capsys, "search", "--n", "4", "--constraints", str(cst), "--out", str(out))
    assert code == 2 and "line 2" in cap.err
    summary = json.loads((out / "summary.json").read_text())
    assert summary["ok"] is False


def test_exact_cap_refusal(tmp_path, capsys):
    cst = tmp_path / "k22.cst"
    cst.write_text("subgraph Cr\n")
    code, cap = run(capsys, "search", "--n", "12", "--constraints", str(cst), "--out", str(tmp_path / "o"))
    assert code == 2 and "lower_bound_search" in cap.err


def test_lower_bound_search_cli(tmp_path, capsys):
    cst = tmp_path / "k22.cst"
    cst.write_text("subgraph Cr\n")
    out = tmp_path / "o"
    code, cap = run(capsys, "search", "--n", "12", "--method", "lower_bound", "--budget", "300",
                    "--constraints", str(cst), "--out", str(out))
    assert code == 0
    cert = json.loads((out / "certificate.json").read_text())
    assert cert["method"] == "lower_bound" and cert["value"] > 0


def test_certify_detects_violation(tmp_path, capsys):
    cert = tmp_path / "cert.json"
    cert.write_text(json.dumps({"n": 4, "value": 4, "method": "exact", "constraints": ["subgraph Cr"],
                                "certificate": "Cr", "stats": {}}))
    code, cap = run(capsys, "certify", str(cert), "--out", str(tmp_path / "o"))
    assert code == 1 and "VIOLATED" in cap.out


def test_analyze_and_embed(tmp_path, capsys):
    code, cap = run(capsys, "analyze", "--graph6", pg2(2).graph.to_graph6(), "--kss", "2",
                    "--out", str(tmp_path / "a"))
    assert code == 0 and "girth=6" in cap.out
    out = tmp_path / "e"
    code, cap = run(capsys, "embed", "--pg2", "3", "--pattern", "c6", "--samples", "400", "--batch", "100",
                    "--out", str(out))
    assert code == 0
    rows = (out / "samples.csv").read_text().splitlines()
    assert len(rows) == 5
    again = tmp_path / "e2"
    run(capsys, "embed", "--pg2", "3", "--pattern", "c6", "--samples", "400", "--batch", "100",
        "--out", str(again))
    assert (again / "samples.csv").read_bytes() == (out / "samples.csv").read_bytes()


def test_verify_plane_and_absence(tmp_path, capsys):
    code, cap = run(capsys, "verify", "--plane", "3", "--absence", "2", "--patterns", "heawood_minus",
                    "--out", str(tmp_path))
    assert code == 0
    assert "plane q=3: ok" in cap.out
    data = json.loads((tmp_path / "verify.json").read_text())
    assert data


def test_unknown_subcommand_exits_nonzero(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "indturan", "frobnicate", "--out", str(tmp_path)],
                          capture_output=True, text=True)
    assert proc.returncode == 2
    assert json.loads((tmp_path / "summary.json").read_text())["ok"] is False


def test_not_prime_power_is_usage_error(tmp_path, capsys):
    code, cap = run(capsys, "gen", "--pg2", "6", "--out", str(tmp_path))
    assert code == 2 and "6 = 2·3" in cap.err
