# removal-bounds: graphs where every edge lies in exactly one triangle
#
# This project is open-sourced under the MIT License. For details, please see the LICENSE file.

# Additive pair counting over lattice point sets and the shift-averaging search.

import logging
import math
from enum import Enum
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator
from scipy.signal import fftconvolve

from removal_bounds import config
from removal_bounds.errors import BudgetExceededError, DimensionMismatchError
from removal_bounds.lattice.geometry import SHIFT_DENOMINATOR, BallSpec, PointSet, enumerate_ball
from removal_bounds.utils.workers import derive_seeds, ordered_map

# A target set is either a point set or a vectorized predicate over (k, D) arrays.
Membership = Union[PointSet, Callable[[np.ndarray], np.ndarray]]

_CHUNK_PAIRS = 1 << 20


class ShiftDirection(str, Enum):
    """Which side of the measure a shift should land on"""
    LOWER = "lower"  # count >= target
    UPPER = "upper"  # count <= target


class ShiftResult(BaseModel):
    """Best shift found by a seeded search over the dyadic grid"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    shift: Tuple[Fraction, ...] = Field(description="Shift vector, dyadic rationals in [0, 1)")
    count: int = Field(ge=0, description="Lattice count of the shifted set at this shift")
    target: float = Field(ge=0, description="The measure the count is compared against")
    achieved: bool = Field(description="Whether count lies on the requested side of target")
    direction: ShiftDirection = Field(default=ShiftDirection.LOWER)
    trial_counts: Tuple[int, ...] = Field(default=(), description="Count of every trial, in trial order")

    @field_validator("shift")
    @classmethod
    def _check_shift(cls, value):
        for coordinate in value:
            if not 0 <= coordinate < 1:
                raise ValueError(f"shift coordinate {coordinate} outside [0, 1)")
        return value

    def shift_halves(self) -> Tuple[Tuple[Fraction, ...], Tuple[Fraction, ...]]:
        """Split a pair-space shift into its x and y parts"""
        half = len(self.shift) // 2
        return self.shift[:half], self.shift[half:]


def _check_pair_budget(pairs: int, budget: Optional[int]) -> None:
    budget = config.PAIR_BUDGET if budget is None else budget
    if pairs > budget:
        raise BudgetExceededError("pair budget", pairs, budget)


def _convolution_count(X: PointSet, Y: PointSet, Z: PointSet, budget: Optional[int]) -> int:
    """Count pairs with x + y in Z through the convolution of the two indicator grids.

    Counts are integers bounded by min(|X|, |Y|), so rounding the FFT result is exact.
    """
    lo_x, hi_x = X.bounds
    lo_y, hi_y = Y.bounds
    shape_x = hi_x - lo_x + 1
    shape_y = hi_y - lo_y + 1
    out_shape = shape_x + shape_y - 1
    _check_pair_budget(int(np.prod(out_shape.astype(object))), budget)

    grid_x = np.zeros(tuple(int(s) for s in shape_x))
    grid_x[tuple((X.points - lo_x).T)] = 1.0
    grid_y = np.zeros(tuple(int(s) for s in shape_y))
    grid_y[tuple((Y.points - lo_y).T)] = 1.0
    sums = np.rint(fftconvolve(grid_x, grid_y)).astype(np.int64)

    origin = lo_x + lo_y
    z_points = Z.points
    inside = np.all((z_points >= origin) & (z_points < origin + out_shape), axis=1)
    return int(sums[tuple((z_points[inside] - origin).T)].sum())


def _membership_mask(Z: Membership, sums: np.ndarray) -> np.ndarray:
    if isinstance(Z, PointSet):
        return Z.contains_many(sums)
    return np.asarray(Z(sums), dtype=bool)


def iter_additive_pairs(X: PointSet, Y: PointSet, Z: Membership, budget: Optional[int] = None):
    """Yield (x_block, y_block) arrays of the pairs with x + y in Z, chunk by chunk over X"""
    if X.dim != Y.dim:
        raise DimensionMismatchError(f"X has dimension {X.dim}, Y has dimension {Y.dim}")
    if isinstance(Z, PointSet) and Z.dim != X.dim:
        raise DimensionMismatchError(f"Z has dimension {Z.dim}, expected {X.dim}")
    _check_pair_budget(len(X) * len(Y), budget)
    if len(X) == 0 or len(Y) == 0:
        return

    ys = Y.points
    rows = max(1, _CHUNK_PAIRS // len(ys))
    for start in range(0, len(X), rows):
        xs = X.points[start:start + rows]
        sums = (xs[:, None, :] + ys[None, :, :]).reshape(-1, X.dim)
        mask = _membership_mask(Z, sums)
        if mask.any():
            hit = np.nonzero(mask)[0]
            yield xs[hit // len(ys)], ys[hit % len(ys)]


def count_additive_triples(X: PointSet, Y: PointSet, Z: Membership, collect: bool = False,
                           budget: Optional[int] = None, direct: bool = False):
    """Count ordered pairs (x, y) in X x Y with x + y in Z.

    Args:
        X, Y: Point sets of the same dimension.
        Z: Target point set, or a vectorized predicate over (k, D) integer arrays.
        collect: Also return the pairs, as a (count, 2D) array of concatenated (x, y) rows.
        budget: Pair budget override.
        direct: Count by the chunked pair scan even when Z is a point set, keeping no pairs.

    Returns:
        int, or (int, np.ndarray) when collect is set.
    """
    if X.dim != Y.dim:
        raise DimensionMismatchError(f"X has dimension {X.dim}, Y has dimension {Y.dim}")
    if isinstance(Z, PointSet) and Z.dim != X.dim:
        raise DimensionMismatchError(f"Z has dimension {Z.dim}, expected {X.dim}")

    if not collect and not direct and isinstance(Z, PointSet):
        if len(X) == 0 or len(Y) == 0 or len(Z) == 0:
            return 0
        return _convolution_count(X, Y, Z, budget)

    count = 0
    blocks: List[np.ndarray] = []
    for xs, ys in iter_additive_pairs(X, Y, Z, budget):
        count += len(xs)
        if collect:
            blocks.append(np.concatenate([xs, ys], axis=1))
    if not collect:
        return count
    pairs = np.concatenate(blocks, axis=0) if blocks else np.zeros((0, 2 * X.dim), dtype=np.int64)
    return count, pairs


def _dyadic(numerators: Sequence[int]) -> Tuple[Fraction, ...]:
    return tuple(Fraction(int(k), SHIFT_DENOMINATOR) for k in numerators)


def shifted_sets(sets: Tuple[BallSpec, BallSpec, BallSpec], shift: Sequence[Fraction],
                 budget: Optional[int] = None) -> Tuple[PointSet, PointSet, PointSet]:
    """Lattice points of the x-ball shifted by t1, the y-ball by t2 and the sum ball by t1 + t2"""
    x_spec, y_spec, sum_spec = sets
    dim = x_spec.dim
    t1, t2 = tuple(shift[:dim]), tuple(shift[dim:])
    t_sum = tuple(a + b for a, b in zip(t1, t2))
    return (enumerate_ball(x_spec.shifted(t1), budget),
            enumerate_ball(y_spec.shifted(t2), budget),
            enumerate_ball(sum_spec.shifted(t_sum), budget))


def recount_shift(sets: Tuple[BallSpec, BallSpec, BallSpec], shift: Sequence[Fraction],
                  budget: Optional[int] = None, pair_budget: Optional[int] = None) -> int:
    """Independent recount of the pairs captured at one shift (direct scan, no convolution)"""
    X, Y, Z = shifted_sets(sets, shift, budget)
    return count_additive_triples(X, Y, Z, budget=pair_budget, direct=True)


def _evaluate_pair_shift(task) -> Tuple[Tuple[int, ...], int]:
    sets, seed, budget, pair_budget = task
    dim = sets[0].dim
    rng = np.random.default_rng(seed)
    numerators = tuple(int(k) for k in rng.integers(0, SHIFT_DENOMINATOR, size=2 * dim))
    X, Y, Z = shifted_sets(sets, _dyadic(numerators), budget)
    return numerators, count_additive_triples(X, Y, Z, budget=pair_budget)


def find_good_shift(sets: Tuple[BallSpec, BallSpec, BallSpec], target: float, trials: int, seed: int,
                    threads: int = 1, budget: Optional[int] = None,
                    pair_budget: Optional[int] = None) -> ShiftResult:
    """Search shifts t in [0,1)^{2D} of S = {(x, y) : x, y, x + y in the balls}.

    Each trial draws t on the dyadic grid from its own derived seed and counts the lattice
    pairs of t + S. The best count wins; ties keep the earliest trial.
    """
    if trials <= 0:
        raise ValueError(f"trials must be positive, got {trials}")
    if target < 0:
        raise ValueError(f"target must be non-negative, got {target}")
    dims = {spec.dim for spec in sets}
    if len(dims) != 1:
        raise DimensionMismatchError(f"ball specs disagree on dimension: {sorted(dims)}")

    tasks = [(tuple(sets), child, budget, pair_budget) for child in derive_seeds(seed, trials)]
    outcomes = ordered_map(_evaluate_pair_shift, tasks, threads)

    best_index = max(range(len(outcomes)), key=lambda i: (outcomes[i][1], -i))
    numerators, count = outcomes[best_index]
    counts = tuple(c for _, c in outcomes)
    logging.info(f"Shift search: best count {count} over {trials} trials (target {target:.3f}, "
                 f"mean {math.fsum(counts) / len(counts):.3f})")
    return ShiftResult(shift=_dyadic(numerators), count=count, target=target, achieved=count >= target,
                       direction=ShiftDirection.LOWER, trial_counts=counts)


def lattice_count(spec: BallSpec, budget: Optional[int] = None) -> int:
    """Number of lattice points in a ball"""
    return len(enumerate_ball(spec, budget))


def _evaluate_single_shift(task) -> Tuple[Tuple[int, ...], int]:
    spec, seed, budget = task
    rng = np.random.default_rng(seed)
    numerators = tuple(int(k) for k in rng.integers(0, SHIFT_DENOMINATOR, size=spec.dim))
    return numerators, lattice_count(spec.shifted(_dyadic(numerators)), budget)


def find_good_single_shift(spec: BallSpec, target: float, trials: int, seed: int,
                           direction: ShiftDirection = ShiftDirection.LOWER, threads: int = 1,
                           budget: Optional[int] = None) -> ShiftResult:
    """Search shifts t in [0,1)^D so that t + B captures at least (lower) or at most (upper) target points"""
    if trials <= 0:
        raise ValueError(f"trials must be positive, got {trials}")
    if target < 0:
        raise ValueError(f"target must be non-negative, got {target}")
    direction = ShiftDirection(direction)

    tasks = [(spec, child, budget) for child in derive_seeds(seed, trials)]
    outcomes = ordered_map(_evaluate_single_shift, tasks, threads)

    sign = 1 if direction == ShiftDirection.LOWER else -1
    best_index = max(range(len(outcomes)), key=lambda i: (sign * outcomes[i][1], -i))
    numerators, count = outcomes[best_index]
    achieved = count >= target if direction == ShiftDirection.LOWER else count <= target
    return ShiftResult(shift=_dyadic(numerators), count=count, target=target, achieved=achieved,
                       direction=direction, trial_counts=tuple(c for _, c in outcomes))
