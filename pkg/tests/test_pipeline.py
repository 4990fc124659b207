import csv
import io
import json
from fractions import Fraction

import pytest

from removal_bounds.additive.corners import CornerSet, is_corner_free
from removal_bounds.additive.progressions import is_3ap_free
from removal_bounds.errors import BudgetExceededError
from removal_bounds.graphgen.report import ConstructionKind, VerifyLevel
from removal_bounds.graphgen.tripartite import count_triangles, verify_edge_disjoint
from removal_bounds.lattice.counting import lattice_count
from removal_bounds.lattice.geometry import BallSpec, PointSet, enumerate_box, radius_for_volume
from removal_bounds.pipeline.abstract import abstract_base_set, run_abstract_pipeline, scan_translates
from removal_bounds.pipeline.ball import run_ball_pipeline, trim_to_size
from removal_bounds.pipeline.box import run_box_pipeline
from removal_bounds.pipeline.common import flattened_corner_free, stream_color_extraction
from removal_bounds.pipeline.settings import PipelineConfig
from removal_bounds.pipeline.sweep import SWEEP_COLUMNS, run_pipeline, sweep, sweep_cells


def test_box_pipeline_smallest_case():
    result = run_box_pipeline(1, 2)
    report = result.report
    assert report.params.n == 3
    assert report.counts.A0 == 7
    assert report.counts.A == 4
    assert report.counts.color == 1
    assert report.graph.edges == 12
    assert report.graph.triangles == 4
    assert report.graph.verified
    assert report.eta_lower.as_fraction() == Fraction(4, 27)
    assert all(report.checks.values())
    assert result.graph.padded_order == 9


def test_box_pipeline_in_the_plane():
    result = run_box_pipeline(2, 4)
    report = result.report
    assert report.counts.A0 == 361
    assert report.params.n == 25
    assert report.checks["A0_matches_box_probability"]
    assert report.checks["A0_density_at_least_three_quarters_power"]
    assert report.checks["pigeonhole"]
    assert report.checks["colors_within_range"]
    assert report.checks["flattened_corner_free"]
    assert max(report.graph.part_sizes) <= 25
    assert report.graph.edges == 3 * report.counts.A
    assert is_corner_free(result.A) is True


def test_box_pipeline_rejects_odd_M():
    with pytest.raises(ValueError):
        run_box_pipeline(2, 3)


def test_box_pipeline_budget():
    with pytest.raises(BudgetExceededError):
        run_box_pipeline(3, 8, pair_budget=1000)


def test_box_pipeline_without_verification():
    report = run_box_pipeline(1, 4, verify_level=VerifyLevel.OFF).report
    assert not report.graph.verified
    assert report.graph.verify_level == VerifyLevel.OFF


def test_stream_extraction_matches_largest_class():
    X = enumerate_box([1, 1], [5, 5])
    Z = enumerate_box([4, 4], [8, 8])
    streamed = stream_color_extraction(X, X, Z)
    full = run_box_pipeline(2, 4)
    assert streamed.A0 == full.report.counts.A0
    assert streamed.color == full.report.counts.color
    assert streamed.A == full.A
    assert sum(streamed.histogram.values()) == streamed.A0


def test_stream_extraction_of_nothing():
    X = PointSet(1, [[1]])
    streamed = stream_color_extraction(X, X, PointSet(1, [[5]]))
    assert streamed.A0 == 0
    assert len(streamed.A) == 0
    assert streamed.color is None


def test_flattened_corner_check():
    corner = CornerSet(2, [((0, 0), (0, 0)), ((1, 0), (0, 0)), ((0, 0), (1, 0))])
    assert flattened_corner_free(corner) is False
    assert flattened_corner_free(CornerSet(2, [((0, 0), (0, 0)), ((1, 0), (0, 0))])) is True
    wide = CornerSet(40, [((0,) * 40, (0,) * 40), ((1,) * 40, (0,) * 40)])
    assert flattened_corner_free(wide) is None


def test_trim_keeps_an_eighth():
    X = enumerate_box([-4], [4])
    outcome = trim_to_size((X, X, X), 61, n=3)
    assert all(len(s) <= 3 for s in outcome.sets)
    assert outcome.rounds == 2
    assert outcome.certified


def test_ball_pipeline():
    result = run_ball_pipeline(2, 20, seed=0, shift_trials=4, target_samples=20_000)
    report = result.report
    assert report.params.kind == ConstructionKind.BALL
    assert max(report.graph.part_sizes) <= 20
    assert report.graph.verified
    assert report.graph.edges == 3 * report.graph.triangles
    assert report.checks["shift_count_recounted"]
    assert report.counts.pair_count >= report.counts.trimmed_pair_count
    assert len(report.params.shift) == 4
    assert verify_edge_disjoint(result.graph) is True


def check_ball_run(D, n):
    result = run_ball_pipeline(D, n, seed=D, shift_trials=16, target_samples=50_000)
    report = result.report
    assert report.checks["sizes_within_2n"]
    assert report.checks["shift_count_recounted"]
    if report.counts.trim_rounds:
        assert report.checks["trim_retains_eighth"]
    assert report.graph.verified
    assert max(report.graph.part_sizes) <= n
    assert count_triangles(result.graph)[0] == report.counts.A == len(result.A)
    closure = report.measurements["closure_mc"]
    measured = report.measurements["closure_measured"]
    assert closure / 1.5 <= measured <= 1.5 * closure
    assert report.measurements["ball_points"] == lattice_count(BallSpec.from_radius(D, radius_for_volume(D, n)))
    assert report.measurements["ball_points_sparsest_shift"] <= 2 * n
    assert report.checks["flattened_corner_free"]


@pytest.mark.parametrize("n", [200, 2000])
@pytest.mark.parametrize("D", [2, 3, 4])
def test_ball_pipeline_end_to_end(D, n):
    check_ball_run(D, n)


@pytest.mark.slow
@pytest.mark.parametrize("D", [2, 3, 4])
def test_ball_pipeline_end_to_end_large(D):
    check_ball_run(D, 10_000)


def test_ball_pipeline_is_reproducible():
    first = run_ball_pipeline(3, 30, seed=5, shift_trials=3, target_samples=10_000)
    second = run_ball_pipeline(3, 30, seed=5, shift_trials=3, target_samples=10_000)
    assert first.report == second.report
    assert first.A == second.A


@pytest.mark.slow
def test_ball_pipeline_ignores_worker_count():
    single = run_ball_pipeline(3, 60, seed=1, shift_trials=6, target_samples=50_000, threads=1)
    pooled = run_ball_pipeline(3, 60, seed=1, shift_trials=6, target_samples=50_000, threads=3)
    assert single.report == pooled.report


def test_abstract_base_set():
    assert len(abstract_base_set(10)) == 5
    assert is_3ap_free(abstract_base_set(100)) is True


def test_scan_translates_counts():
    scan = scan_translates(6, [1, 3])
    assert len(scan.counts) == 3 * 6 + 1
    assert scan.count == max(scan.counts)
    assert scan.counts.sum() == 2 * (6 * 5 // 2)


@pytest.mark.parametrize("n", [2, 5, 10, 25, 60])
def test_abstract_pipeline(n):
    result = run_abstract_pipeline(n)
    report = result.report
    assert report.checks["p_hat_at_least_bound"]
    assert report.graph.verified
    assert max(report.graph.part_sizes) <= n
    assert report.counts.A == len(result.A)
    assert report.theory is None
    assert is_corner_free(result.A) is True


def test_abstract_pipeline_rejects_bad_input():
    with pytest.raises(ValueError):
        run_abstract_pipeline(1)
    with pytest.raises(ValueError):
        run_abstract_pipeline(5, W=PointSet(1, [[0], [2]]))
    with pytest.raises(BudgetExceededError):
        run_abstract_pipeline(100, pair_budget=50)


def test_pipeline_config_validation():
    assert PipelineConfig(kind="box", D=1, M=2).n is None
    with pytest.raises(ValueError):
        PipelineConfig(kind="box", D=1, M=2, n=3)
    with pytest.raises(ValueError):
        PipelineConfig(kind="ball", D=2)
    with pytest.raises(ValueError):
        PipelineConfig(kind="abstract", n=5, D=2)
    with pytest.raises(ValueError):
        PipelineConfig(kind="box", D=1, M=1)


def test_run_pipeline_dispatch():
    result = run_pipeline(PipelineConfig(kind="box", D=1, M=2))
    assert result.report.counts.A == 4
    result = run_pipeline(PipelineConfig(kind="abstract", n=8))
    assert result.report.params.kind == ConstructionKind.ABSTRACT


def test_sweep_cells():
    cells = sweep_cells("box", [1, 2], [2, 4])
    assert [(c.D, c.M) for c in cells] == [(1, 2), (1, 4), (2, 2), (2, 4)]
    assert [c.n for c in sweep_cells("abstract", [], [5, 9])] == [5, 9]
    with pytest.raises(ValueError):
        sweep_cells("ball", [], [10])


def test_sweep_rows_and_errors():
    table = sweep("box", [1], [2, 3, 4])
    assert [row.M for row in table.rows] == [2, 3, 4]
    assert table.rows[0].A == 4
    assert table.rows[1].error.startswith("ValueError")
    assert table.reports[1] is None
    assert table.rows[2].verified

    rows = list(csv.DictReader(io.StringIO(table.to_csv())))
    assert list(rows[0].keys()) == SWEEP_COLUMNS
    assert rows[1]["A"] == ""
    assert json.loads(table.to_json())["rows"][0]["edges"] == 12


def test_sweep_writes_files(tmp_path):
    table = sweep("abstract", [], [6])
    table.write(tmp_path / "out" / "sweep.csv")
    assert (tmp_path / "out" / "sweep.csv").read_text().startswith("kind,D,n,M")


@pytest.mark.parametrize("kind, D_range, size_range, overrides", [
    ("box", [1, 2], [2, 4], {}),
    ("abstract", [], [5, 12], {}),
    ("ball", [2], [40, 60], {"shift_trials": 4, "target_samples": 20_000}),
])
def test_sweep_ignores_worker_count(kind, D_range, size_range, overrides):
    serial = sweep(kind, D_range, size_range, seed=3, threads=1, **overrides)
    pooled = sweep(kind, D_range, size_range, seed=3, threads=4, **overrides)
    assert pooled.to_json() == serial.to_json()
    assert pooled.to_csv() == serial.to_csv()
