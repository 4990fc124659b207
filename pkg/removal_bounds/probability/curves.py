# removal-bounds: graphs where every edge lies in exactly one triangle
#
# This project is open-sourced under the MIT License. For details, please see the LICENSE file.

# Theory curves for eta(n), optimization over D, and the eta -> delta conversion.

import logging
import math
from enum import Enum
from typing import Callable, NamedTuple

from removal_bounds.errors import OutOfRangeError

LOG2_FOUR_THIRDS = math.log2(4 / 3)

# delta(eps) <= eps^{(C - o(1)) log2(1/eps)}; C is 1/c^2 for the rate 2^{-c sqrt(log2 n)}.
C_NEW = 1 / (4 * LOG2_FOUR_THIRDS)
C_OLD = C_NEW / 2
C_NEW_PRINTED = 4 * LOG2_FOUR_THIRDS
C_OLD_PRINTED = 2 * LOG2_FOUR_THIRDS

POLY_FACTOR_NOTE = "exponential parts only, poly(D) factors dropped"


class Curve(str, Enum):
    BEHREND = "behrend"
    GREEN = "green"
    NEW = "new"


# Per-dimension base b of b^D * n^{-2/D}
CURVE_BASES = {
    Curve.BEHREND: 0.5,
    Curve.GREEN: 0.75,
    Curve.NEW: math.sqrt(0.75),
}


class TheoryCurves(NamedTuple):
    behrend: float
    green: float
    new: float


def curve_value(curve: Curve, D: int, n: float) -> float:
    base = CURVE_BASES[Curve(curve)]
    return math.exp(D * math.log(base) - (2.0 / D) * math.log(n))


def theory_curves(D: int, n: float) -> TheoryCurves:
    """(1/2)^D n^{-2/D}, (3/4)^D n^{-2/D} and (3/4)^{D/2} n^{-2/D}, without poly(D) factors"""
    if D < 1:
        raise ValueError(f"D must be >= 1, got {D}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return TheoryCurves(*(curve_value(curve, D, n) for curve in Curve))


class OptimizeResult(NamedTuple):
    D_best: int
    value: float
    D_star: float
    D_max: int


def _grid_limit(n: float) -> int:
    return max(1, math.ceil(8 * math.sqrt(math.log2(n)))) if n > 1 else 1


def _grid_optimum(n: float, curve: Curve):
    limit = _grid_limit(n)
    values = [curve_value(curve, D, n) for D in range(1, limit + 1)]
    best = max(range(limit), key=lambda i: (values[i], -i))
    return best + 1, values[best], limit


def optimize_D(n: float, curve: Curve = Curve.NEW) -> OptimizeResult:
    """Maximize a theory curve over D in {1, ..., ceil(8 sqrt(log2 n))}.

    Also returns the continuous optimum D* = sqrt(2 ln n / ln(1/b)) of D ln b - (2/D) ln n.
    Ties go to the smaller D.
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    curve = Curve(curve)
    D_best, value, limit = _grid_optimum(n, curve)
    D_star = math.sqrt(2 * math.log(n) / -math.log(CURVE_BASES[curve]))
    logging.debug(f"optimize_D({n}, {curve.value}): grid best D={D_best} value={value:.6g}, D*={D_star:.3f}")
    return OptimizeResult(D_best=D_best, value=value, D_star=D_star, D_max=limit)


def optimized_curve(curve: Curve = Curve.NEW) -> Callable[[float], float]:
    """The function n -> max_D curve(D, n), nonincreasing in n"""
    curve = Curve(curve)

    def eta(n: float) -> float:
        return _grid_optimum(n, curve)[1]

    return eta


_SEARCH_CAP = 2 ** 62


def eta_to_delta(eta_curve: Callable[[int], float], epsilon: float) -> float:
    """Upper bound 1 / max{n : eta(n) >= 3 epsilon} on delta(epsilon).

    The curve must be nonincreasing; the largest n is found by doubling and then bisection.

    Raises:
        ValueError: epsilon outside (0, 1/3).
        OutOfRangeError: no n >= 1 (or no finite n below 2^62) meets the threshold.
    """
    if not 0 < epsilon < 1 / 3:
        raise ValueError(f"epsilon must lie in (0, 1/3), got {epsilon}")
    threshold = 3 * epsilon
    if eta_curve(1) < threshold:
        raise OutOfRangeError(f"eta(1) = {eta_curve(1)} is below 3 * epsilon = {threshold}")

    good = 1
    while eta_curve(2 * good) >= threshold:
        good *= 2
        if good >= _SEARCH_CAP:
            raise OutOfRangeError(f"eta stays above {threshold} beyond n = {_SEARCH_CAP}")
    bad = 2 * good
    while bad - good > 1:
        middle = (good + bad) // 2
        if eta_curve(middle) >= threshold:
            good = middle
        else:
            bad = middle
    return 1.0 / good


class AsymptoticRates(NamedTuple):
    three_ap: float
    corners_box: float
    corners_ball: float


def asymptotic_rates(n: float) -> AsymptoticRates:
    """Optimized-D rates 2^{-c sqrt(log2 n)} for the three routes, o(1) terms dropped"""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    root = math.sqrt(math.log2(n))
    return AsymptoticRates(
        three_ap=2.0 ** (-2 * math.sqrt(2) * root),
        corners_box=2.0 ** (-2 * math.sqrt(2 * LOG2_FOUR_THIRDS) * root),
        corners_ball=2.0 ** (-2 * math.sqrt(LOG2_FOUR_THIRDS) * root),
    )
