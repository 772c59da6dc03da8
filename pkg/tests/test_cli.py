import json

import pytest

from cdlat import constructions as cons
from cdlat.cli import main
from cdlat.pcgroup import from_json, to_json


def write(tmp_path, pres, name=None):
    path = tmp_path / f"{name or pres.name}.json"
    path.write_text(to_json(pres))
    return str(path)


def test_build_writes_json(tmp_path, capsys):
    out = tmp_path / "l1n2.json"
    assert main(["build", "--construction", "l1n", "--p", "2", "--out", str(out)]) == 0
    pres = from_json(out.read_text())
    assert pres.order == 64
    again = tmp_path / "again.json"
    main(["build", "--construction", "l1n", "--p", "2", "--out", str(again)])
    assert out.read_bytes() == again.read_bytes()
    assert to_json(pres) == out.read_text()


def test_build_stdout_and_l2n3(capsys):
    assert main(["build", "--construction", "l2n", "--p", "3"]) == 0
    assert from_json(capsys.readouterr().out).order == 2187


def test_build_usage_errors(capsys):
    assert main(["build", "--construction", "l2odd", "--p", "2"]) == 2
    assert "odd prime" in capsys.readouterr().err
    with pytest.raises(SystemExit) as info:
        main(["build", "--construction", "l1n", "--p", "4"])
    assert info.value.code == 2


def test_cd_dot_outputs(tmp_path, capsys):
    d4 = write(tmp_path, cons.dihedral(3))
    assert main(["cd", "--in", d4, "--format", "dot"]) == 0
    dot = capsys.readouterr().out
    assert dot.count("[label=") == 5 and dot.count("->") == 6
    ab = write(tmp_path, cons.elementary_abelian(2, 3))
    main(["cd", "--in", ab, "--format", "dot"])
    dot = capsys.readouterr().out
    assert dot.count("[label=") == 1 and "->" not in dot
    l2 = write(tmp_path, cons.build_l2n(2))
    main(["cd", "--in", l2, "--format", "dot", "--enumerator", "closure", "--max-order", "4096"])
    dot = capsys.readouterr().out
    assert dot.count("[label=") == 3
    assert "n0 -> n1;" in dot and "n1 -> n2;" in dot


def test_cd_json(tmp_path, capsys):
    path = write(tmp_path, cons.build_l1n(2))
    assert main(["cd", "--in", path]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["m"] == 512 and data["chain_length"] == 1


def test_cd_infeasible(tmp_path, capsys):
    path = write(tmp_path, cons.build_l2n(3))
    assert main(["cd", "--in", path, "--max-order", "1000"]) == 2
    assert "1000" in capsys.readouterr().err


def test_env_bound(tmp_path, monkeypatch, capsys):
    path = write(tmp_path, cons.build_l2n(2))
    monkeypatch.setenv("CDLAT_MAX_ORDER", "100")
    assert main(["cd", "--in", path]) == 2
    assert "100" in capsys.readouterr().err


def test_inconsistent_input(tmp_path, capsys):
    from cdlat.pcgroup import PcPresentation
    bad = PcPresentation([2, 2, 2], {0: [(1, 1)], 1: [(2, 1)]}, {(0, 1): [(1, 1), (2, 1)]}, name="bad")
    assert main(["cd", "--in", write(tmp_path, bad)]) == 2
    assert "inconsistent" in capsys.readouterr().err
    garbage = tmp_path / "garbage.json"
    garbage.write_text("{not json")
    assert main(["cd", "--in", str(garbage)]) == 2
    assert main(["cd", "--in", str(tmp_path / "missing.json")]) == 2


def test_verify_l1_refutation(tmp_path, capsys):
    path = write(tmp_path, cons.extraspecial(3, True))
    assert main(["verify", "--suite", "l1", "--in", path, "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    check = data["checks"][0]
    assert check["status"] == "pass" and check["details"]["criteria"] is False


def test_verify_l1_positive(tmp_path, capsys):
    path = write(tmp_path, cons.build_l1odd(3))
    assert main(["verify", "--suite", "l1", "--in", path]) == 0
    assert "criteria_imply_chain" in capsys.readouterr().out


def test_verify_extension_full_tier(tmp_path, capsys):
    path = write(tmp_path, cons.cyclic(2))
    report = tmp_path / "rep.json"
    assert main(["verify", "--suite", "extension", "--in", path, "--format", "json",
                 "--report", str(report)]) == 0
    data = json.loads(report.read_text())
    assert data["tier"] == "full"
    assert data["stats"]["seed"] == 0
    assert any(c["id"].endswith("cd_exact") and c["status"] == "pass" for c in data["checks"])


def test_verify_extension_hypothesis_failure(tmp_path, capsys):
    path = write(tmp_path, cons.symmetric3())
    assert main(["verify", "--suite", "extension", "--in", path]) == 0
    assert "skipped" in capsys.readouterr().out


def test_verify_direct_product_and_lemma(tmp_path, capsys):
    assert main(["verify", "--suite", "direct-product"]) == 0
    path = write(tmp_path, cons.dihedral(4))
    assert main(["verify", "--suite", "lemma-centr", "--in", path]) == 0


def test_verify_all_corpus(capsys):
    assert main(["verify", "--suite", "all", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    statuses = {c["status"] for c in data["checks"]}
    assert "fail" not in statuses and "pass" in statuses


def test_chain_outputs(tmp_path, capsys):
    out = tmp_path / "c22.json"
    assert main(["chain", "--p", "2", "--length", "2", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["verification"] == {"tier": "full", "status": "verified"}
    assert from_json(out.read_text()).order == 128
    assert to_json(from_json(out.read_text())) == out.read_text()

    out5 = tmp_path / "c25.json"
    rep5 = tmp_path / "c25.report.json"
    assert main(["chain", "--p", "2", "--length", "5", "--out", str(out5),
                 "--report", str(rep5), "--format", "json"]) == 0
    data = json.loads(out5.read_text())
    assert data["verification"] == {"tier": "none", "status": "unverified"}
    assert len(data["relative_orders"]) == 30
    assert "CD" in data["certificates"]
    assert "unverified" in capsys.readouterr().err
    assert json.loads(rep5.read_text())["tier"] == "none"


def test_chain_structural(tmp_path, capsys):
    out = tmp_path / "c23.json"
    assert main(["chain", "--p", "2", "--length", "3", "--out", str(out),
                 "--samples", "20", "--trials", "50", "--seed", "7", "--format", "json"]) == 0
    data = json.loads(out.read_text())
    assert data["verification"]["tier"] == "structural"
    rep = json.loads(capsys.readouterr().out)
    assert rep["stats"]["seed"] == 7


def test_verify_seed_deterministic(tmp_path, capsys):
    path = write(tmp_path, cons.build_l1n(2))
    args = ["verify", "--suite", "extension", "--in", path, "--samples", "10", "--trials", "40",
            "--format", "json", "--seed", "3"]
    main(args)
    first = json.loads(capsys.readouterr().out)
    main(args + ["--threads", "2"])
    second = json.loads(capsys.readouterr().out)
    assert first["checks"] == second["checks"]


def test_module_entry_point():
    import subprocess
    import sys
    out = subprocess.run([sys.executable, "-m", "cdlat", "--help"], capture_output=True, text=True)
    assert out.returncode == 0 and "verify" in out.stdout
