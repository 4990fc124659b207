import csv
import io
import json

import pytest

from removal_bounds import config
from removal_bounds.cli.main import EXIT_BUDGET, EXIT_OK, EXIT_USAGE, EXIT_VERIFICATION, main
from removal_bounds.graphgen.export import export_graph, read_report
from removal_bounds.utils.serialization import calculate_file_hash


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def error_payload(err: str) -> dict:
    lines = [line for line in err.splitlines() if line.startswith("{")]
    assert lines, err
    return json.loads(lines[-1])


@pytest.fixture
def graph_file(tmp_path, small_graph):
    graph, system = small_graph
    path = tmp_path / "graph.txt"
    export_graph(graph, system, path)
    return path


def test_build_box_writes_graph_and_report(tmp_path, capsys):
    out = tmp_path / "box" / "graph.txt"
    code, stdout, _ = run(capsys, "build", "box", "--dim", "1", "--m", "2", "--out", str(out))
    assert code == EXIT_OK
    report = json.loads(stdout)
    assert report["graph"]["edges"] == 12
    assert report["eta_lower"]["exact"] == "4/27"
    assert report["graph"]["digest"] == calculate_file_hash(out)
    saved = read_report(out.with_name("graph.txt.report.json"))
    assert saved.graph.digest == report["graph"]["digest"]


def test_build_then_verify(tmp_path, capsys):
    out = tmp_path / "abstract.json"
    code, _, _ = run(capsys, "build", "abstract", "--n", "10", "--format", "json", "--out", str(out))
    assert code == EXIT_OK
    code, stdout, _ = run(capsys, "verify", str(out))
    assert code == EXIT_OK
    summary = json.loads(stdout)
    assert summary["verified"] is True
    assert summary["edges"] == 3 * summary["triangles"]



def test_verify_checks_recorded_digest(tmp_path, capsys):
    out = tmp_path / "graph.txt"
    code, stdout, _ = run(capsys, "build", "box", "--dim", "1", "--m", "2", "--out", str(out))
    assert code == EXIT_OK
    digest = json.loads(stdout)["graph"]["digest"]
    code, stdout, _ = run(capsys, "verify", str(out), "--digest", digest)
    assert code == EXIT_OK
    assert json.loads(stdout)["digest"] == digest

    code, stdout, err = run(capsys, "verify", str(out), "--digest", "sha256:" + "0" * 64)
    assert code == EXIT_VERIFICATION
    assert stdout == ""
    assert "digest" in error_payload(err)["error"]


def test_verify_accepts_clean_file(graph_file, capsys):
    code, stdout, _ = run(capsys, "verify", str(graph_file))
    assert code == EXIT_OK
    assert json.loads(stdout)["triangles"] == 3


def test_verify_reports_injected_diamond(graph_file, capsys):
    lines = graph_file.read_text().splitlines()
    lines[0] = lines[0].replace(" 9 9 3", " 9 11 3")
    graph_file.write_text("\n".join(lines + ["e 1 2", "e 2 6"]) + "\n")
    code, stdout, err = run(capsys, "verify", str(graph_file))
    assert code == EXIT_VERIFICATION
    assert stdout == ""
    witness = error_payload(err)["witness"]
    assert witness["kind"] == "diamond"
    assert witness["elements"][0] == [1, 6]


def test_verify_reports_appended_diamond_without_header_change(graph_file, capsys):
    with open(graph_file, "a") as f:
        f.write("e 1 2\ne 2 6\n")
    code, stdout, err = run(capsys, "verify", str(graph_file))
    assert code == EXIT_VERIFICATION
    assert stdout == ""
    assert error_payload(err)["witness"]["elements"][0] == [1, 6]


def test_verify_reports_truncation_line(graph_file, capsys):
    lines = graph_file.read_text().splitlines()
    graph_file.write_text("\n".join(lines[:5]) + "\n")
    code, _, err = run(capsys, "verify", str(graph_file))
    assert code == EXIT_USAGE
    assert f"{graph_file}:6:" in err


def test_verify_missing_file(tmp_path, capsys):
    code, _, _ = run(capsys, "verify", str(tmp_path / "absent.txt"))
    assert code == EXIT_USAGE


@pytest.mark.parametrize("argv", [
    ["build", "box", "--dim", "2", "--m", "3"],
    ["build", "box", "--dim", "2"],
    ["build", "ball", "--n", "10"],
    ["build", "box", "--dim", "1", "--m", "2", "--format", "csv"],
    ["frobnicate"],
    ["prob", "--ball", "--sphere", "--dim", "3"],
    ["curves"],
    ["sweep", "--kind", "box", "--dims", "1"],
    ["curves", "--n", "1000", "--log-level", "LOUD"],
])
def test_usage_errors(capsys, argv):
    code, stdout, _ = run(capsys, *argv)
    assert code == EXIT_USAGE
    assert stdout == ""


def test_budget_exit_code(capsys):
    code, _, err = run(capsys, "build", "box", "--dim", "3", "--m", "8", "--budget-pairs", "1000")
    assert code == EXIT_BUDGET
    assert "budget" in err


def test_curves_optimum(capsys):
    code, stdout, _ = run(capsys, "curves", "--n", "1e6")
    assert code == EXIT_OK
    rows = {row["curve"]: row for row in csv.DictReader(io.StringIO(stdout))}
    assert int(rows["new"]["D_best"]) == 14
    assert int(rows["new"]["D_max"]) == 36


def test_curves_per_dimension_and_delta(capsys):
    code, stdout, _ = run(capsys, "curves", "--n", "1000", "--per-d", "--format", "json")
    assert code == EXIT_OK
    rows = json.loads(stdout)["rows"]
    assert [row["D"] for row in rows] == list(range(1, len(rows) + 1))
    assert all(row["new"] >= row["green"] >= row["behrend"] for row in rows)

    code, stdout, _ = run(capsys, "curves", "--epsilon", "0.01,0.001")
    assert code == EXIT_OK
    assert len(list(csv.DictReader(io.StringIO(stdout)))) == 6


def test_prob_box_is_exact(capsys):
    code, stdout, _ = run(capsys, "prob", "--box", "--m", "1")
    assert code == EXIT_OK
    row = next(csv.DictReader(io.StringIO(stdout)))
    assert row["exact"] == "7/9"
    assert row["method"] == "exact"


def test_prob_exact_sphere(capsys):
    code, stdout, _ = run(capsys, "prob", "--exact", "--dims", "2,3", "--format", "json")
    assert code == EXIT_OK
    rows = json.loads(stdout)["rows"]
    assert rows[0]["value"] == pytest.approx(1 / 3)
    assert rows[1]["value"] == pytest.approx(0.25)


def test_prob_monte_carlo_to_file(tmp_path, capsys):
    out = tmp_path / "ball.csv"
    code, stdout, _ = run(capsys, "prob", "--ball", "--dim", "2", "--samples", "5000", "--out", str(out))
    assert code == EXIT_OK
    assert stdout == ""
    row = next(csv.DictReader(io.StringIO(out.read_text())))
    assert row["samples"] == "5000"
    assert 0.0 < float(row["value"]) < 1.0


def test_prob_chain(capsys):
    code, stdout, _ = run(capsys, "prob", "--chain", "--dims", "2,6", "--format", "json")
    assert code == EXIT_OK
    rows = json.loads(stdout)["rows"]
    assert rows[0]["printed_middle_holds"] is False
    assert rows[1]["integral_above_final"] is True


def test_sweep_csv(capsys):
    code, stdout, _ = run(capsys, "sweep", "--kind", "abstract", "--ns", "5,6")
    assert code == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(stdout)))
    assert [row["n"] for row in rows] == ["5", "6"]
    assert all(row["verified"] == "True" for row in rows)


def test_bad_log_level_from_environment(monkeypatch, capsys):
    monkeypatch.setattr(config, "LOG_LEVEL", "LOUD")
    code, stdout, _ = run(capsys, "curves", "--n", "1000")
    assert code == EXIT_USAGE
    assert stdout == ""


@pytest.mark.parametrize("argv", [
    ["prob", "--ball", "--dims", "2,3", "--samples", "300000", "--seed", "7"],
    ["prob", "--sphere", "--dim", "4", "--samples", "300000", "--seed", "7", "--format", "json"],
    ["sweep", "--kind", "box", "--dims", "1,2", "--ms", "2,4"],
    ["sweep", "--kind", "abstract", "--ns", "5,10,25", "--format", "json"],
])
def test_output_ignores_worker_count(capsys, argv):
    code, single, _ = run(capsys, *argv, "--threads", "1")
    assert code == EXIT_OK
    code, pooled, _ = run(capsys, *argv, "--threads", "4")
    assert code == EXIT_OK
    assert pooled == single
