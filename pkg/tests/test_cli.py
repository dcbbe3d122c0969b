import json

import pytest

from gensumset.cli import main


def _run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_rcount_csv(capsys, tmp_path):
    out_path = tmp_path / "counts.csv"
    code, out, _ = _run(
        capsys, "rcount", "--N", "5", "--s", "2", "--d", "0", "--out", str(out_path)
    )
    assert code == 0
    lines = out_path.read_text().splitlines()
    assert lines[0] == "n,count"
    rows = [line.split(",") for line in lines[1:]]
    assert len(rows) == 11  # h*N + 1 values
    assert sum(int(c) for _, c in rows) == 6**2  # (N+1)**h
    # provenance went to stdout as a JSON line
    prov = json.loads(out)
    assert prov["version"] and prov["config"]["N"] == 5


def test_rcount_stdout_provenance_comment(capsys):
    code, out, _ = _run(capsys, "rcount", "--N", "2", "--s", "1", "--d", "1")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("# {")
    assert lines[1] == "n,count"
    assert lines[2] == "-2,1"


def test_constants_json(capsys, tmp_path):
    out_path = tmp_path / "constants.json"
    code, out, _ = _run(
        capsys,
        "constants", "--h", "3", "--kmax", "8",
        "--g-c", "2.0", "--g-combo", "2,1",
        "--out", str(out_path),
    )
    assert code == 0
    doc = json.loads(out_path.read_text())
    assert doc["h"] == 3 and doc["K_max"] == 8
    assert abs(doc["b"][0] - 1.0) < 1e-10
    assert len(doc["b"]) == 8
    entry = doc["g"][0]
    assert (entry["s"], entry["d"], entry["c"]) == (2, 1, 2.0)
    assert entry["terms_used"] > 1
    assert doc["provenance"]["version"]


def test_constants_csv(capsys):
    code, out, _ = _run(capsys, "constants", "--h", "2", "--kmax", "3",
                        "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("# {")
    assert lines[1] == "k,b_hk"
    assert [line.split(",")[0] for line in lines[2:]] == ["1", "2", "3"]


def test_sample_sumset_xk_pipeline(capsys, tmp_path):
    set_path = tmp_path / "set.txt"
    code, _, _ = _run(
        capsys,
        "sample", "--N", "500", "--c", "1.0", "--delta", "1/2",
        "--seed", "9", "--trial", "2", "--out", str(set_path),
    )
    assert code == 0
    first, second = set_path.read_text().splitlines()
    assert first == "N=500"
    elements = [int(tok) for tok in second.split()]
    assert elements == sorted(set(elements))

    summary_path = tmp_path / "summary.json"
    member_path = tmp_path / "membership.csv"
    code, _, _ = _run(
        capsys,
        "sumset", "--infile", str(set_path), "--s", "1", "--d", "1",
        "--membership-csv", str(member_path), "--out", str(summary_path),
    )
    assert code == 0
    summary = json.loads(summary_path.read_text())
    assert summary["s"] == 1 and summary["d"] == 1 and summary["N"] == 500
    assert summary["cardinality"] + summary["complement_count"] == 1001
    member_lines = member_path.read_text().splitlines()
    assert member_lines[0] == "n,member"
    assert len(member_lines) == 1002
    members = sum(int(line.split(",")[1]) for line in member_lines[1:])
    assert members == summary["cardinality"]

    code, out, _ = _run(
        capsys, "xk", "--infile", str(set_path), "--s", "1", "--d", "1"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["alternating_sum"] == doc["cardinality"] == summary["cardinality"]


def test_sample_reproducibility(capsys, tmp_path):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    for path in (a, b):
        code, _, _ = _run(
            capsys,
            "sample", "--N", "300", "--p", "0.1", "--seed", "4", "--out", str(path),
        )
        assert code == 0
    assert a.read_bytes() == b.read_bytes()


def test_experiment_cli(capsys, tmp_path):
    config_path = tmp_path / "fast.json"
    config_path.write_text(
        json.dumps(
            {
                "kind": "fast-ratio",
                "combos": [[1, 1], [2, 0]],
                "N": [2000],
                "c": 1.0,
                "delta": "3/4",
                "trials": 12,
                "seed": 6,
            }
        )
    )
    json1, csv1 = tmp_path / "r1.json", tmp_path / "r1.csv"
    code, out, _ = _run(
        capsys,
        "experiment", "--config", str(config_path),
        "--json-out", str(json1), "--csv-out", str(csv1),
    )
    assert code == 0
    prov = json.loads(out.splitlines()[0])
    assert prov["seed"] == 6
    report = json.loads(json1.read_text())
    assert report["rows"][0]["predicted"] == 2.0
    header = csv1.read_text().splitlines()[0]
    assert header == "kind,s,d,N,trials,mean,stddev,stderr,predicted,rel_err,pass"

    json2 = tmp_path / "r2.json"
    code, _, _ = _run(
        capsys,
        "experiment", "--config", str(config_path),
        "--workers", "2", "--json-out", str(json2),
    )
    assert code == 0
    assert json1.read_bytes() == json2.read_bytes()

    json3 = tmp_path / "r3.json"
    code, _, _ = _run(
        capsys,
        "experiment", "--config", str(config_path), "--seed", "7",
        "--json-out", str(json3),
    )
    assert code == 0
    assert json.loads(json3.read_text())["seed"] == 7
    assert json1.read_bytes() != json3.read_bytes()


def test_exit_code_2_on_config_errors(capsys, tmp_path):
    config_path = tmp_path / "bad.json"
    config_path.write_text(
        json.dumps({"kind": "mstd", "N": [50], "trials": 5, "seed": 1})
    )
    code, _, err = _run(capsys, "experiment", "--config", str(config_path))
    assert code == 2
    assert "p" in err

    code, _, err = _run(capsys, "sample", "--N", "4", "--c", "10", "--delta", "1/2",
                        "--seed", "0")
    assert code == 2
    assert "probability" in err


def test_exit_code_2_on_unknown_flags():
    with pytest.raises(SystemExit) as exc:
        main(["rcount", "--N", "5", "--s", "2", "--d", "0", "--frobnicate"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["not-a-subcommand"])
    assert exc.value.code == 2


def test_exit_code_3_on_budget_refusal(capsys):
    code, _, err = _run(capsys, "rcount", "--N", "1000000000", "--s", "2", "--d", "0")
    assert code == 3
    assert "budget" in err.lower() or "refused" in err.lower()
