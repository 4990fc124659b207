# removal-bounds: graphs where every edge lies in exactly one triangle
#
# This project is open-sourced under the MIT License. For details, please see the LICENSE file.

# The one-dimensional construction from a 3-AP-free set W: pairs with x + y in [n] and x - y in t + W.

import logging
from fractions import Fraction
from typing import NamedTuple, Optional

import numpy as np

from removal_bounds import config
from removal_bounds.additive.corners import CornerSet
from removal_bounds.additive.progressions import R3_EXHAUSTIVE_LIMIT, behrend_set, r3_exhaustive
from removal_bounds.errors import BudgetExceededError
from removal_bounds.graphgen.report import ConstructionKind, ReportCounts, ReportParams, VerifyLevel
from removal_bounds.lattice.geometry import PointSet
from removal_bounds.pipeline.common import assemble, certify_corner_set
from removal_bounds.pipeline.settings import PipelineResult


class TranslateScan(NamedTuple):
    t: int
    count: int
    counts: np.ndarray  # per t, from -2n to n


def abstract_base_set(n: int) -> PointSet:
    """Exact maximizer for n within the exhaustive limit, a Behrend set beyond it"""
    if n <= R3_EXHAUSTIVE_LIMIT:
        return r3_exhaustive(n).witness
    return behrend_set(n)


def scan_translates(n: int, W: np.ndarray) -> TranslateScan:
    """#{(x, y) in [n]^2 : x + y <= n, x - y in t + W} for every t in {-2n, ..., n}.

    The differences x - y of the admissible pairs are histogrammed once; the count for t is
    the histogram summed over t + W. The largest count wins, ties going to the smallest t.
    """
    x = np.arange(1, n + 1)
    # pairs with x + y <= n: for fixed x, y runs over 1 .. n - x
    diffs = np.concatenate([xv - np.arange(1, n - xv + 1) for xv in x]) if n > 1 else np.zeros(0, dtype=np.int64)
    histogram = np.bincount(diffs + n, minlength=2 * n + 1)  # index d + n

    ts = np.arange(-2 * n, n + 1)
    counts = np.zeros(len(ts), dtype=np.int64)
    for w in W:
        index = ts + int(w) + n
        valid = (index >= 0) & (index < len(histogram))
        counts[valid] += histogram[index[valid]]
    best = int(np.argmax(counts))
    return TranslateScan(t=int(ts[best]), count=int(counts[best]), counts=counts)


def _translate_pairs(n: int, W: np.ndarray, t: int) -> np.ndarray:
    """Rows (x, y) with x + y <= n and x - y = t + w for some w in W"""
    blocks = []
    for w in W:
        d = t + int(w)
        ys = np.arange(max(1, 1 - d), (n - d) // 2 + 1, dtype=np.int64)
        if len(ys):
            blocks.append(np.stack([ys + d, ys], axis=1))
    return np.concatenate(blocks, axis=0) if blocks else np.zeros((0, 2), dtype=np.int64)


def run_abstract_pipeline(n: int, verify_level: VerifyLevel = VerifyLevel.FULL,
                          W: Optional[PointSet] = None, pair_budget: Optional[int] = None) -> PipelineResult:
    """Corner-free A = {(x, y) : x + y in [n], x - y in t + W} for the best translate t.

    A corner (x, y), (x + d, y), (x, y + d) would put x - y - d, x - y, x - y + d in t + W,
    so A is corner-free whenever W is 3-AP-free; the verifiers recheck it regardless.
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    budget = config.PAIR_BUDGET if pair_budget is None else pair_budget
    if n * n > budget:
        raise BudgetExceededError("pair budget", n * n, budget)
    verify_level = VerifyLevel(verify_level)

    W = abstract_base_set(n) if W is None else W
    values = W.points[:, 0]
    if len(values) and (values.min() < 1 or values.max() > n):
        raise ValueError(f"W must lie in [1, {n}]")
    logging.info(f"Abstract pipeline: n={n}, |W0|={len(values)}")

    scan = scan_translates(n, values)
    A = CornerSet(1, _translate_pairs(n, values, scan.t))
    certify_corner_set(A, verify_level)

    p_hat = Fraction(len(A), n * n)
    bound = Fraction(len(values), 4 * (3 * n + 1))
    params = ReportParams(kind=ConstructionKind.ABSTRACT, n=n)
    counts = ReportCounts(A0=len(A), classes_present=1, A=len(A), W0=len(values))
    checks = {"p_hat_at_least_bound": p_hat >= bound}
    measurements = {"p_hat": float(p_hat), "p_bound": float(bound), "t": float(scan.t)}
    return assemble(A, n, params, counts, verify_level, checks=checks, measurements=measurements)
