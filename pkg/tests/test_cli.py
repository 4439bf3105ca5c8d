"""Command line driver: report shape, exit codes, determinism."""

import json

import pytest

from invsemi.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    # a human summary line precedes the JSON document
    lines = out.splitlines()
    starts = [i for i, l in enumerate(lines) if l.startswith("{")]
    if not starts:
        return code, out
    return code, json.loads("\n".join(lines[starts[0]:]))


def report_of(doc):
    assert doc["schema"] == 1
    assert "meta" in doc and "timestamp" in doc["meta"]
    return doc["report"]


def test_family_check(capsys):
    code, doc = run(capsys, "family-check", "--family", "five-ring")
    assert code == 0
    rep = report_of(doc)
    assert rep["almost_disjoint"] is True
    assert rep["max_overlap"] == 3
    assert len(rep["blocks"]) == 5
    assert rep["pairwise_overlaps"][0][1] == 3


def test_family_check_reads_json_configs(tmp_path, capsys):
    from invsemi.catalog import named_family

    code, doc = run(capsys, "family-check", "--family", "common-point:3")
    path = tmp_path / "fam.json"
    path.write_text(json.dumps(named_family("common-point:3").to_config()))
    code2, doc2 = run(capsys, "family-check", "--family", str(path))
    assert code2 == 0
    assert report_of(doc2) == report_of(doc)


def test_closure_run_matches_structure(capsys):
    code, doc = run(
        capsys,
        "closure",
        "run",
        "--family",
        "common-point:3",
        "--window",
        "8",
        "--compare",
    )
    assert code == 0
    rep = report_of(doc)
    assert rep["elements"] == 193
    assert rep["closed"] is True
    assert rep["diff"]["matches"] is True
    counts = rep["stratum_counts"]
    assert counts["group[0]"] == 120
    assert counts["empty"] == 1
    assert counts["rank1[0,1]"] == 10
    assert sum(counts.values()) == 193


def test_closure_run_budget_flag(capsys):
    code, doc = run(
        capsys, "closure", "run", "--family", "disjoint:2", "--window", "8",
        "--max", "10",
    )
    assert code == 0
    assert report_of(doc)["closed"] is False


def test_chains_with_oracle_check(capsys):
    code, doc = run(capsys, "chains", "--family", "five-ring", "--check")
    assert code == 0
    rep = report_of(doc)
    assert rep["capacity"] == [
        [3, 3, 2, 2, 2],
        [3, 3, 2, 2, 2],
        [2, 2, 3, 3, 2],
        [2, 2, 3, 3, 2],
        [2, 2, 2, 2, 2],
    ]
    assert rep["oracle_agrees"] is True
    assert all(c["verified"] for c in rep["certificates"])


def test_chains_csv_export(tmp_path, capsys):
    out = tmp_path / "p.csv"
    code, _ = run(
        capsys, "chains", "--family", "unequal", "--csv", str(out)
    )
    assert code == 0
    lines = out.read_text().strip().splitlines()
    assert len(lines) == 4  # header plus one row per block
    assert lines[1].split(",")[1:] == ["2", "2", "1"]


def test_stratify(capsys):
    code, doc = run(
        capsys, "stratify", "--family", "common-point:3", "--element", "fin(5->6)"
    )
    assert code == 0
    rep = report_of(doc)
    assert rep["kind"] == "finite"
    assert rep["stratum"] == {"i": 0, "j": 1, "rank": 1}
    assert rep["generated"] is True


def test_factorize_recomposes(capsys):
    code, doc = run(
        capsys,
        "factorize",
        "--family",
        "common-point:3",
        "--element",
        "fin(5->6)",
    )
    assert code == 0
    rep = report_of(doc)
    assert rep["recomposes"] is True
    assert len(rep["factors"]) >= 1


def test_factorize_refuses_ungenerated(capsys):
    code, doc = run(
        capsys, "factorize", "--family", "disjoint:3", "--element", "fin(1->2)"
    )
    assert code == 2
    assert report_of(doc)["generated"] is False


def test_verify_closure_bound_within(capsys):
    code, doc = run(
        capsys, "verify", "closure-bound", "--family", "bound2", "--bound", "2"
    )
    assert code == 0
    rep = report_of(doc)
    assert rep["within_bound"] is True and rep["union_closed"] is True
    assert rep["verdict_ok"] is True


def test_verify_closure_bound_violated(capsys):
    code, doc = run(
        capsys, "verify", "closure-bound", "--family", "bound2", "--bound", "1"
    )
    assert code == 0  # the violation verdict is itself verified
    rep = report_of(doc)
    assert rep["within_bound"] is False
    assert rep["witness"]["rank"] == 2
    assert rep["witness"]["left"] == "id(B1)"
    assert rep["bad_pair"] == [0, 1]
    assert rep["verdict_ok"] is True


def test_verify_ideal_witness(capsys):
    code, doc = run(
        capsys, "verify", "ideal-witness", "--trials", "5", "--seed", "3"
    )
    assert code == 0
    rep = report_of(doc)
    assert rep["all_hold"] is True
    assert len(rep["trials"]) == 5
    for t in rep["trials"]:
        assert t["holds"] and all(t["clauses"].values())
        assert "domain-complement-outside-original" in t["clauses"]


def test_verify_ideal_witness_empty_ideal(capsys):
    code, doc = run(
        capsys,
        "verify",
        "ideal-witness",
        "--ideal",
        "empty",
        "--trials",
        "4",
        "--seed",
        "3",
    )
    assert code == 0
    assert report_of(doc)["all_hold"] is True


def test_verify_pettis_witness(capsys):
    code, doc = run(
        capsys,
        "verify",
        "pettis-witness",
        "--trials",
        "10",
        "--seed",
        "7",
        "--windows",
        "12",
    )
    assert code == 0
    rep = report_of(doc)
    assert rep["product_is_shared_identity"] is True
    assert rep["interior_probe"]["all_escaped"] is True
    assert rep["all_ok"] is True
    for cert in rep["isolation_certificates"]:
        assert cert["ok"] is True


def test_reports_are_deterministic(capsys):
    argv = ["verify", "ideal-witness", "--trials", "6", "--seed", "11"]
    _, doc1 = run(capsys, *argv)
    _, doc2 = run(capsys, *argv)
    doc1.pop("meta")
    doc2.pop("meta")
    assert json.dumps(doc1, sort_keys=True) == json.dumps(doc2, sort_keys=True)


def test_out_flag_writes_the_report(tmp_path, capsys):
    path = tmp_path / "report.json"
    code = main(
        ["family-check", "--family", "bound2", "--out", str(path), "--quiet"]
    )
    assert code == 0
    doc = json.loads(path.read_text())
    assert doc["schema"] == 1
    assert doc["report"]["max_overlap"] == 2


def test_usage_errors_exit_one(capsys):
    assert main(["verify", "ideal-witness", "--trials", "2"]) != 0  # no seed
    capsys.readouterr()
    assert main(["family-check", "--family", "no-such"]) == 1
    err = capsys.readouterr().err
    assert "error:" in err
    assert main(["factorize", "--family", "bound2", "--element", "fin(1->"]) == 1
    capsys.readouterr()
    assert main(["no-such-command"]) == 1
    capsys.readouterr()


def test_bad_family_config_exits_one(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"blocks": [
        {"modulus": 2, "residues": [0]},
        {"modulus": 4, "residues": [0]},
    ]}))
    assert main(["family-check", "--family", str(path)]) == 1
    capsys.readouterr()


def test_quiet_suppresses_the_summary_line(capsys):
    code = main(["family-check", "--family", "bound2", "--quiet"])
    assert code == 0
    out = capsys.readouterr().out
    assert out.lstrip().startswith("{")  # no chatter, report only
    code2 = main(["family-check", "--family", "bound2"])
    assert code2 == 0
    noisy = capsys.readouterr().out
    assert not noisy.lstrip().startswith("{")
