import json

import pytest

from qspherical.cli import (EXIT_CHECK_FAILED, EXIT_INPUT_ERROR, EXIT_PASS,
                            EXIT_RESOURCE_CAP, JobSpec, main, run)

SL3_CONFIG = {"cartan": [[2, -1], [-1, 2]], "symmetrizer": [1, 1],
              "black": [], "tau": [2, 1]}
AI1_CONFIG = {"cartan": [[2]], "symmetrizer": [1], "black": [], "tau": [1]}


@pytest.fixture()
def sl3_config(tmp_path):
    path = tmp_path / "aiii_sl3.json"
    path.write_text(json.dumps(SL3_CONFIG))
    return str(path)


@pytest.fixture()
def ai1_config(tmp_path):
    path = tmp_path / "ai1.json"
    path.write_text(json.dumps(AI1_CONFIG))
    return str(path)


def test_empty_check_list():
    status, report = run(JobSpec(checks=()))
    assert status == EXIT_PASS
    assert report["checks"] == []


def test_validate(sl3_config):
    status, report = run(JobSpec(config=sl3_config, checks=("validate",)))
    assert status == EXIT_PASS
    assert report["checks"][0]["admissible"]


def test_validate_reports_violations(tmp_path):
    bad = {"cartan": [[2, -1, 0], [-1, 2, -1], [0, -1, 2]],
           "symmetrizer": [1, 1, 1], "black": [1, 2], "tau": [1, 2, 3]}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    status, report = run(JobSpec(config=str(path), checks=("validate",)))
    assert status == EXIT_CHECK_FAILED
    conditions = {v["condition"] for v in report["checks"][0]["violations"]}
    assert "(ii)" in conditions


def test_config_error_exit_code(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    status, report = run(JobSpec(config=str(path), checks=("validate",)))
    assert status == EXIT_INPUT_ERROR
    assert report["error"]["code"] == "input"


def test_unrepresentable_parameter(ai1_config):
    job = JobSpec(config=ai1_config, checks=("characters",),
                  parameters={"1": "q^(1/4)"}, weights=[[2]])
    status, report = run(job)
    assert status == EXIT_INPUT_ERROR


def test_dimension_cap_exit_code(sl3_config):
    job = JobSpec(config=sl3_config, checks=("module",),
                  weights=[[2, 2]], dim_cap=5)
    status, report = run(job)
    assert status == EXIT_RESOURCE_CAP
    assert report["error"]["code"] == "dimension-cap"


def test_table1_passes():
    status, report = run(JobSpec(checks=("table1",)))
    assert status == EXIT_PASS
    rows = report["checks"][0]["rows"]
    assert len(rows) == 12 and all(r["passed"] for r in rows)


def test_examples_sl3():
    status, report = run(JobSpec(checks=("examples",), example="aiii-sl3"))
    assert status == EXIT_PASS
    table = report["checks"][0]["table"]
    assert [row["n"] for row in table] == list(range(-4, 5))
    assert all(row["matches"] for row in table)


def test_characters_scan(ai1_config):
    job = JobSpec(config=ai1_config, checks=("characters",),
                  parameters={"1": "-q^-2"}, weights=[[n] for n in range(4)])
    status, report = run(job)
    assert status == EXIT_PASS
    body = report["checks"][0]
    assert body["distinct_nontrivial"] >= 3


def test_invariance_checks(ai1_config):
    job = JobSpec(config=ai1_config, checks=("quasik", "spherical"),
                  parameters={"1": "-q^-2"}, weights=[[2]])
    status, report = run(job)
    assert status == EXIT_PASS
    quasik = report["checks"][0]
    assert quasik["results"][0]["mode"] == "transported"
    spherical = report["checks"][1]
    assert all(entry["braid_invariant"] and entry["invariant"]
               for entry in spherical["results"])


def test_determinism(ai1_config, tmp_path, capsys):
    job = JobSpec(config=ai1_config, checks=("characters", "quasik"),
                  parameters={"1": "-q^-2"}, weights=[[2]])
    outputs = []
    for _ in range(2):
        status, report = run(job)
        outputs.append(json.dumps(report, sort_keys=True))
    assert outputs[0] == outputs[1]


def test_main_entry(sl3_config, tmp_path, capsys):
    out = tmp_path / "report.json"
    code = main(["validate", "--config", sl3_config, "--out", str(out)])
    assert code == EXIT_PASS
    body = json.loads(out.read_text())
    assert body["passed"]
    code = main(["table1"])
    assert code == EXIT_PASS
    capsys.readouterr()


def test_unknown_example():
    with pytest.raises(SystemExit):
        main(["examples", "nonsense"])
