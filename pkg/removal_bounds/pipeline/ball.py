# removal-bounds: graphs where every edge lies in exactly one triangle
#
# This project is open-sourced under the MIT License. For details, please see the LICENSE file.

# The ball construction: shifted lattice balls, averaging trim, orthant translation, color extraction.

import itertools
import logging
from typing import List, NamedTuple, Optional, Tuple

from removal_bounds import config
from removal_bounds.errors import VerificationError
from removal_bounds.graphgen.report import ConstructionKind, ReportCounts, ReportParams, VerifyLevel
from removal_bounds.lattice.counting import (
    ShiftDirection,
    count_additive_triples,
    find_good_shift,
    find_good_single_shift,
    lattice_count,
    recount_shift,
    shifted_sets,
)
from removal_bounds.lattice.geometry import BallSpec, PointSet, radius_for_volume, translate_to_orthant
from removal_bounds.pipeline.common import assemble, certify_corner_set, stream_color_extraction
from removal_bounds.pipeline.settings import PipelineResult
from removal_bounds.probability.estimates import mc_ball_closure
from removal_bounds.utils.serialization import fraction_str


class TrimOutcome(NamedTuple):
    sets: Tuple[PointSet, PointSet, PointSet]
    count: int
    rounds: int
    certified: bool


def trim_to_size(sets: Tuple[PointSet, PointSet, PointSet], count: int, n: int,
                 pair_budget: Optional[int] = None) -> TrimOutcome:
    """Halve every set larger than n until all fit, keeping the best half-combination.

    A pair (x, y) with x + y in Z lies in exactly one combination of halves, so the best of
    at most 8 combinations keeps at least 1/8 of the pairs. Every round is checked against that.
    """
    current: List[PointSet] = list(sets)
    rounds = 0
    certified = True
    while any(len(s) > n for s in current):
        options = [s.split_halves() if len(s) > n else (s,) for s in current]
        best_count, best_combo = -1, None
        for combo in itertools.product(*options):
            combo_count = count_additive_triples(*combo, budget=pair_budget)
            if combo_count > best_count:
                best_count, best_combo = combo_count, combo
        rounds += 1
        if 8 * best_count < count:
            certified = False
        logging.info(f"Trim round {rounds}: sizes {[len(s) for s in best_combo]}, "
                     f"pairs {count} -> {best_count}")
        current, count = list(best_combo), best_count
    return TrimOutcome(sets=tuple(current), count=count, rounds=rounds, certified=certified)


def run_ball_pipeline(D: int, n: int, seed: int = 0, shift_trials: Optional[int] = None,
                      verify_level: VerifyLevel = VerifyLevel.FULL, threads: int = 1,
                      enumeration_budget: Optional[int] = None, pair_budget: Optional[int] = None,
                      target_samples: Optional[int] = None) -> PipelineResult:
    """Ball construction for part size n.

    Steps: radius with ball volume n; best of shift_trials seeded shifts of
    {(x, y) : x, y, x + y in B}; halving trim down to size n; translation of X, Y into
    [M+1]^D with minimal M (Z follows by the sum of both offsets); norm-color extraction;
    graph, verification and report.
    """
    if D < 1:
        raise ValueError(f"D must be >= 1, got {D}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    shift_trials = config.SHIFT_TRIALS if shift_trials is None else shift_trials
    target_samples = config.TARGET_SAMPLES if target_samples is None else target_samples
    verify_level = VerifyLevel(verify_level)
    logging.info(f"Ball pipeline: D={D}, n={n}, seed={seed}, shift_trials={shift_trials}")

    radius = radius_for_volume(D, n)
    ball = BallSpec.from_radius(D, radius)
    specs = (ball, ball, ball)

    # some shift of a single ball holds at most vol = n lattice points
    sparse = find_good_single_shift(ball, n, shift_trials, seed, direction=ShiftDirection.UPPER, threads=threads,
                                    budget=enumeration_budget)
    ball_points = lattice_count(ball, enumeration_budget)
    logging.info(f"Ball of volume {n}: {ball_points} points unshifted, "
                 f"{sparse.count} at the sparsest of {shift_trials} shifts")

    closure = mc_ball_closure(D, target_samples, seed, threads)
    mu = n * n * closure.value
    shift = find_good_shift(specs, mu, shift_trials, seed, threads=threads, budget=enumeration_budget,
                            pair_budget=pair_budget)
    X0, Y0, Z0 = shifted_sets(specs, shift.shift, enumeration_budget)

    checks = {
        "shift_achieved": shift.achieved,
        "sizes_within_2n": all(len(s) <= 2 * n for s in (X0, Y0, Z0)),
    }
    if verify_level == VerifyLevel.FULL:
        recount = recount_shift(specs, shift.shift, enumeration_budget, pair_budget)
        if recount != shift.count:
            raise VerificationError(f"shift count {shift.count} does not match the recount {recount}")
        checks["shift_count_recounted"] = True

    trimmed = trim_to_size((X0, Y0, Z0), shift.count, n, pair_budget)
    if trimmed.rounds:
        checks["trim_retains_eighth"] = trimmed.certified

    X1, Y1, Z1 = trimmed.sets
    (X, Y), (offset_x, offset_y), M = translate_to_orthant(X1, Y1)
    Z = Z1.translate(offset_x + offset_y)

    extracted = stream_color_extraction(X, Y, Z, pair_budget)
    certify_corner_set(extracted.A, verify_level)

    measured = shift.count / (len(X0) * len(Y0)) if len(X0) and len(Y0) else 0.0
    params = ReportParams(kind=ConstructionKind.BALL, D=D, M=M, n=n, seed=seed, shift_trials=shift_trials,
                          radius=radius, radius_sq=fraction_str(ball.radius_sq),
                          shift=[fraction_str(t) for t in shift.shift])
    counts = ReportCounts(A0=extracted.A0, classes_present=extracted.classes_present, A=len(extracted.A),
                          color=extracted.color, X=len(X), Y=len(Y), Z=len(Z), pair_count=shift.count,
                          trimmed_pair_count=trimmed.count, trim_rounds=trimmed.rounds)
    measurements = {
        "mu": mu,
        "closure_mc": closure.value,
        "closure_mc_stderr": closure.stderr,
        "closure_measured": measured,
        "X0": float(len(X0)),
        "Y0": float(len(Y0)),
        "Z0": float(len(Z0)),
        "ball_points": float(ball_points),
        "ball_points_sparsest_shift": float(sparse.count),
    }
    return assemble(extracted.A, n, params, counts, verify_level, checks=checks, measurements=measurements,
                    seed=seed)
