# removal-bounds: graphs where every edge lies in exactly one triangle
#
# This project is open-sourced under the MIT License. For details, please see the LICENSE file.

# Steps shared by the constructions: certify the corner-free set, build, pad and report.

import logging
from typing import Dict, NamedTuple, Optional

import numpy as np

from removal_bounds.additive.corners import (
    CornerSet,
    check_triple_condition,
    flatten_corner_set,
    is_corner_free,
    norm_colors,
)
from removal_bounds.errors import BudgetExceededError, VerificationError
from removal_bounds.graphgen.report import ReportCounts, ReportParams, VerifyLevel, density_report
from removal_bounds.graphgen.tripartite import build_tripartite
from removal_bounds.lattice.counting import iter_additive_pairs
from removal_bounds.lattice.geometry import PointSet
from removal_bounds.pipeline.settings import PipelineResult


def certify_corner_set(A: CornerSet, verify_level: VerifyLevel) -> None:
    """Run both corner verifiers unless verification is off; raise on the first witness"""
    if VerifyLevel(verify_level) == VerifyLevel.OFF:
        return
    for check in (is_corner_free, check_triple_condition):
        result = check(A)
        if result is not True:
            raise VerificationError(f"{check.__name__} failed: {result.detail}", witness=result)


def flattened_corner_free(A: CornerSet) -> Optional[bool]:
    """Whether the one-dimensional image of A is still corner-free; None when the image overflows int64"""
    try:
        flat = flatten_corner_set(A)
    except BudgetExceededError as e:
        logging.info(f"Skipping the flattened corner check: {e}")
        return None
    return is_corner_free(flat) is True


def assemble(A: CornerSet, n: int, params: ReportParams, counts: ReportCounts, verify_level: VerifyLevel,
             checks: Optional[Dict[str, bool]] = None, measurements: Optional[Dict[str, float]] = None,
             seed: int = 0) -> PipelineResult:
    """Build the tripartite graph of a certified A, pad it to 3n and write the report"""
    if VerifyLevel(verify_level) == VerifyLevel.FULL and A.dim > 1:
        flattened = flattened_corner_free(A)
        if flattened is not None:
            checks = {**(checks or {}), "flattened_corner_free": flattened}
    system, graph = build_tripartite(A)
    report = density_report(graph, n, params, counts, verify_level=verify_level, triples=len(system),
                            checks=checks, measurements=measurements, seed=seed)
    return PipelineResult(graph=graph.padded(3 * n), triples=system, report=report, A=A)


class StreamedClass(NamedTuple):
    A0: int
    classes_present: int
    color: Optional[int]
    A: CornerSet
    histogram: Dict[int, int]


def stream_color_extraction(X: PointSet, Y: PointSet, Z: PointSet, pair_budget: Optional[int] = None) -> StreamedClass:
    """Largest norm-color class of {(x, y) : x + y in Z} without materializing all pairs.

    One pass builds the color histogram, a second pass keeps the pairs of the winning color
    (ties go to the smallest color).
    """
    dim = X.dim
    histogram = np.zeros(0, dtype=np.int64)
    for xs, ys in iter_additive_pairs(X, Y, Z, pair_budget):
        counts = np.bincount(norm_colors(np.concatenate([xs, ys], axis=1), dim))
        if len(counts) > len(histogram):
            counts[:len(histogram)] += histogram
            histogram = counts
        else:
            histogram[:len(counts)] += counts

    total = int(histogram.sum())
    present = {int(c): int(s) for c, s in enumerate(histogram) if s}
    if total == 0:
        logging.warning("No additive pairs survived; the extracted set is empty")
        return StreamedClass(A0=0, classes_present=0, color=None, A=CornerSet(dim), histogram={})

    color = int(np.argmax(histogram))
    blocks = []
    for xs, ys in iter_additive_pairs(X, Y, Z, pair_budget):
        pairs = np.concatenate([xs, ys], axis=1)
        blocks.append(pairs[norm_colors(pairs, dim) == color])
    A = CornerSet(dim, np.concatenate(blocks, axis=0))
    logging.info(f"Color extraction: {total} pairs, {len(present)} classes, color {color} keeps {len(A)}")
    return StreamedClass(A0=total, classes_present=len(present), color=color, A=A, histogram=present)
