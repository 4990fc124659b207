# removal-bounds: graphs where every edge lies in exactly one triangle
#
# This project is open-sourced under the MIT License. For details, please see the LICENSE file.

# Dispatch of single runs and the parameter sweep with its CSV / JSON tables.

import csv
import io
import logging
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, ConfigDict

from removal_bounds.errors import RemovalBoundsError
from removal_bounds.graphgen.report import ConstructionKind, DensityReport, VerifyLevel
from removal_bounds.pipeline.abstract import run_abstract_pipeline
from removal_bounds.pipeline.ball import run_ball_pipeline
from removal_bounds.pipeline.box import run_box_pipeline
from removal_bounds.pipeline.settings import PipelineConfig, PipelineResult
from removal_bounds.utils.serialization import canonical_bytes
from removal_bounds.utils.workers import ordered_map

SWEEP_COLUMNS = ["kind", "D", "n", "M", "seed", "A0", "classes", "A", "edges", "triangles", "eta_lower",
                 "theory_behrend", "theory_green", "theory_new", "verified", "error"]


def run_pipeline(settings: PipelineConfig) -> PipelineResult:
    """Run the construction a PipelineConfig describes"""
    if settings.kind == ConstructionKind.BOX:
        return run_box_pipeline(settings.D, settings.M, verify_level=settings.verify_level,
                                enumeration_budget=settings.enumeration_budget, pair_budget=settings.pair_budget)
    if settings.kind == ConstructionKind.BALL:
        return run_ball_pipeline(settings.D, settings.n, seed=settings.seed, shift_trials=settings.shift_trials,
                                 verify_level=settings.verify_level, threads=settings.threads,
                                 enumeration_budget=settings.enumeration_budget, pair_budget=settings.pair_budget,
                                 target_samples=settings.target_samples)
    return run_abstract_pipeline(settings.n, verify_level=settings.verify_level, pair_budget=settings.pair_budget)


class SweepRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: ConstructionKind
    D: Optional[int] = None
    n: Optional[int] = None
    M: Optional[int] = None
    seed: int = 0
    A0: Optional[int] = None
    classes: Optional[int] = None
    A: Optional[int] = None
    edges: Optional[int] = None
    triangles: Optional[int] = None
    eta_lower: Optional[float] = None
    theory_behrend: Optional[float] = None
    theory_green: Optional[float] = None
    theory_new: Optional[float] = None
    verified: bool = False
    error: Optional[str] = None

    @classmethod
    def from_report(cls, settings: PipelineConfig, report: DensityReport) -> "SweepRow":
        theory = report.theory
        return cls(kind=settings.kind, D=settings.D, n=report.params.n, M=report.params.M, seed=settings.seed,
                   A0=report.counts.A0, classes=report.counts.classes_present, A=report.counts.A,
                   edges=report.graph.edges, triangles=report.graph.triangles, eta_lower=report.eta_lower.value,
                   theory_behrend=theory.behrend if theory else None,
                   theory_green=theory.green if theory else None,
                   theory_new=theory.new if theory else None,
                   verified=report.graph.verified)


class SweepTable(BaseModel):
    rows: List[SweepRow]
    reports: List[Optional[DensityReport]]

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=SWEEP_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for row in self.rows:
            record = row.model_dump(mode="json")
            writer.writerow({key: "" if record[key] is None else record[key] for key in SWEEP_COLUMNS})
        return buffer.getvalue()

    def to_json(self) -> bytes:
        return canonical_bytes(self)

    def write(self, path: Union[str, Path], format: str = "csv") -> None:
        path = Path(path)
        data = self.to_csv().encode("utf-8") if format == "csv" else self.to_json()
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_bytes(data)
        except OSError as e:
            raise OSError(f"cannot write {path}: {e.strerror or e}") from e


def _run_cell(settings: PipelineConfig) -> Tuple[SweepRow, Optional[DensityReport]]:
    try:
        result = run_pipeline(settings)
    except (RemovalBoundsError, ValueError) as e:
        logging.warning(f"Sweep cell {settings.kind.value} D={settings.D} n={settings.n} M={settings.M} failed: {e}")
        row = SweepRow(kind=settings.kind, D=settings.D, n=settings.n, M=settings.M, seed=settings.seed,
                       error=f"{type(e).__name__}: {e}")
        return row, None
    return SweepRow.from_report(settings, result.report), result.report


def sweep_cells(kind: ConstructionKind, D_range: Sequence[int], size_range: Sequence[int], seed: int = 0,
                **overrides) -> List[PipelineConfig]:
    """One PipelineConfig per (D, size) cell; size is M for box runs and n otherwise"""
    kind = ConstructionKind(kind)
    if not size_range:
        raise ValueError("size_range must be non-empty")
    cells = []
    if kind == ConstructionKind.ABSTRACT:
        for n in size_range:
            cells.append(PipelineConfig(kind=kind, n=n, seed=seed, **overrides))
        return cells
    if not D_range:
        raise ValueError("D_range must be non-empty")
    for D in D_range:
        for size in size_range:
            sizes = {"M": size} if kind == ConstructionKind.BOX else {"n": size}
            cells.append(PipelineConfig(kind=kind, D=D, seed=seed, **sizes, **overrides))
    return cells


def sweep(kind: ConstructionKind, D_range: Iterable[int], size_range: Iterable[int], seed: int = 0,
          verify_level: VerifyLevel = VerifyLevel.FULL, threads: int = 1, **overrides) -> SweepTable:
    """Run every cell; a failing cell becomes a row with its error, not an exception.

    Cells run on up to `threads` worker processes, each cell single-threaded, and rows come
    back in cell order.
    """
    cells = sweep_cells(kind, list(D_range), list(size_range), seed, verify_level=verify_level,
                        threads=1, **overrides)
    logging.info(f"Sweep: {len(cells)} cells of kind {ConstructionKind(kind).value}")
    outcomes = ordered_map(_run_cell, cells, threads)
    return SweepTable(rows=[row for row, _ in outcomes], reports=[report for _, report in outcomes])
