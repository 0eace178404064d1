from __future__ import annotations

import json

import pytest

from core.generator import Trial, random_frameworks
from evaluator.axioms import HOLDS, VIOLATED
from evaluator.survey import EXPECTED, axiom_survey, format_summary, main, write_report


def _trials(*frameworks, repeat=1):
    out = []
    for af in frameworks:
        for _ in range(repeat):
            out.append(Trial(len(out), af.n, 0.0, 0, af))
    return out


def test_survey_has_no_unexpected_violations():
    report = axiom_survey()
    assert (report["trials"], report["seed"]) == (1000, 7)
    assert report["ok"] is True
    assert report["unexpected_violations"] == []
    for name in report["expected_to_hold"]:
        row = report["axioms"][name]
        assert row["instances"] == 1000
        assert row["violated_instances"] == 0
        assert row["counterexamples"] == []
    # random search turns up counterexamples for the cardinality and quality axioms
    for name in ("CP", "QP"):
        assert report["axioms"][name]["counterexamples"]


def test_survey_report_shape():
    report = axiom_survey(trials=3, seed=1)
    assert list(report) == [
        "seed", "trials", "alpha", "tie_tol", "valuation", "generator",
        "axioms", "fixtures", "expected_to_hold", "unexpected_violations", "ok",
    ]
    assert list(report["axioms"]) == ["Ab", "In", "VP", "DP", "CT", "SCT", "CP", "QP", "DDP"]
    assert report["generator"] == {"n_min": 2, "n_max": 8, "probabilities": [0.1, 0.25, 0.5]}
    assert report["expected_to_hold"] == [a.value for a in EXPECTED["counting"]]


def test_counterexamples_are_stored(cardinality_case, quality_case):
    report = axiom_survey(frameworks=_trials(cardinality_case, quality_case))
    cp = report["axioms"]["CP"]
    qp = report["axioms"]["QP"]
    assert cp["violated_instances"] >= 1
    assert qp["violated_instances"] >= 1
    stored = cp["counterexamples"][0]
    assert stored["trial"] == 0
    assert stored["apx"].startswith("arg(x).")
    assert stored["witness"]["x"] == "x"
    assert qp["counterexamples"][0]["witness"]["x"] == "x"
    assert qp["pair_violations"] >= 2
    assert report["ok"] is True


def test_store_limit(cardinality_case):
    report = axiom_survey(frameworks=_trials(cardinality_case, repeat=4), store_limit=2)
    row = report["axioms"]["CP"]
    assert row["violated_instances"] == 4
    assert len(row["counterexamples"]) == 2


def test_fixture_reports():
    fixtures = axiom_survey(trials=1)["fixtures"]
    tie = fixtures["twin_trees_ddp"]
    assert tie["verdict"] == VIOLATED
    assert tie["values"]["x1"] == pytest.approx(tie["values"]["y1"], abs=1e-12)
    deeper = fixtures["twin_trees_variant_ddp"]
    assert deeper["verdict"] == VIOLATED
    assert deeper["values"]["y1"] > deeper["values"]["x1"]
    assert fixtures["star_chain_in"]["verdict"] == VIOLATED


def test_categoriser_survey():
    report = axiom_survey(trials=50, seed=5, tie_tol=1e-8, valuation="categoriser")
    assert report["alpha"] is None
    assert "In" in report["expected_to_hold"]
    assert report["ok"] is True
    fixtures = report["fixtures"]
    assert fixtures["twin_trees_ddp"]["verdict"] == HOLDS
    assert fixtures["star_chain_in"]["verdict"] == HOLDS


def test_unknown_valuation():
    with pytest.raises(ValueError):
        axiom_survey(trials=1, valuation="max-based")


def test_env_settings(monkeypatch):
    monkeypatch.setenv("SURVEY_TRIALS", "4")
    monkeypatch.setenv("SURVEY_SEED", "11")
    monkeypatch.setenv("SURVEY_N_MAX", "3")
    report = axiom_survey()
    assert (report["trials"], report["seed"]) == (4, 11)
    assert report["generator"]["n_max"] == 3


def test_survey_replays_with_same_seed():
    first = axiom_survey(trials=10, seed=3)
    second = axiom_survey(trials=10, seed=3)
    assert first["axioms"] == second["axioms"]
    shapes = [(t.n, t.p, t.seed) for t in random_frameworks(10, 3)]
    assert len(set(shapes)) > 1


def test_write_report_and_summary(tmp_path):
    report = axiom_survey(trials=2, seed=9)
    path = write_report(report, tmp_path / "out")
    assert path.name == "survey_9.json"
    assert json.loads(path.read_text(encoding="utf-8"))["trials"] == 2
    summary = format_summary(report)
    lines = summary.splitlines()
    assert lines[0].split()[:3] == ["axiom", "instances", "violated"]
    assert any(line.startswith("CP ") and line.endswith("may fail") for line in lines)
    assert any(line.startswith("VP ") and line.endswith("holds") for line in lines)
    assert "fixture star_chain_in: violated" in lines


def test_reports_dir_from_env(tmp_path, monkeypatch):
    monkeypatch.setenv("SURVEY_REPORTS_DIR", str(tmp_path))
    path = write_report(axiom_survey(trials=1, seed=2))
    assert path == tmp_path / "survey_2.json"


def test_module_main(tmp_path, capsys):
    assert main(["--trials", "3", "--seed", "4", "--out-dir", str(tmp_path)]) == 0
    assert (tmp_path / "survey_4.json").exists()
    assert capsys.readouterr().out.startswith("axiom")
