# removal-bounds: graphs where every edge lies in exactly one triangle
#
# This project is open-sourced under the MIT License. For details, please see the LICENSE file.

# Integer-lattice geometry: exact balls, point sets, enumeration and volumes.

import logging
import math
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from scipy.special import gammaln

from removal_bounds import config
from removal_bounds.errors import BudgetExceededError, DimensionMismatchError

LatticePoint = Tuple[int, ...]

# Shifts are k / 2^20; squared radii are rounded down to denominator 2^40.
SHIFT_DENOMINATOR = 2 ** 20
_RADIUS_SQ_DENOMINATOR = 2 ** 40

_INT64_SAFE = 2 ** 62


def _to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"Expected a finite number, got {value}")
    return Fraction(value)


class BallSpec(BaseModel):
    """Closed Euclidean ball {p : ||p - center||^2 <= radius_sq} with rational data"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    dim: int = Field(gt=0, description="Ambient dimension D")
    radius_sq: Fraction = Field(description="Squared Euclidean radius, exact rational")
    center: Tuple[Fraction, ...] = Field(description="Center, exact rationals, length dim")

    @field_validator("radius_sq", mode="before")
    @classmethod
    def _coerce_radius(cls, value):
        return _to_fraction(value)

    @field_validator("center", mode="before")
    @classmethod
    def _coerce_center(cls, value):
        return tuple(_to_fraction(c) for c in value)

    @model_validator(mode="after")
    def _check(self):
        if self.radius_sq < 0:
            raise ValueError(f"radius_sq must be non-negative, got {self.radius_sq}")
        if len(self.center) != self.dim:
            raise DimensionMismatchError(f"center has length {len(self.center)}, expected {self.dim}")
        return self

    @classmethod
    def from_radius(cls, dim: int, radius: float, center: Optional[Sequence] = None) -> "BallSpec":
        """Build a ball from a real radius, rounding r^2 down to denominator 2^40"""
        if radius < 0:
            raise ValueError(f"radius must be non-negative, got {radius}")
        radius_sq = Fraction(math.floor(radius * radius * _RADIUS_SQ_DENOMINATOR), _RADIUS_SQ_DENOMINATOR)
        if center is None:
            center = (0,) * dim
        return cls(dim=dim, radius_sq=radius_sq, center=center)

    def shifted(self, offset: Sequence) -> "BallSpec":
        if len(offset) != self.dim:
            raise DimensionMismatchError(f"offset has length {len(offset)}, expected {self.dim}")
        center = tuple(c + _to_fraction(o) for c, o in zip(self.center, offset))
        return BallSpec(dim=self.dim, radius_sq=self.radius_sq, center=center)

    def contains(self, point: Sequence[int]) -> bool:
        """Exact membership test"""
        if len(point) != self.dim:
            raise DimensionMismatchError(f"point has length {len(point)}, expected {self.dim}")
        return sum((p - c) ** 2 for p, c in zip(point, self.center)) <= self.radius_sq


def _encode_points(points: np.ndarray, lo: np.ndarray, shape: np.ndarray) -> np.ndarray:
    """Mixed-radix keys for points inside the box [lo, lo + shape).

    The first coordinate is most significant, so key order is lexicographic order.
    """
    keys = np.zeros(len(points), dtype=np.int64)
    for axis in range(points.shape[1]):
        keys = keys * int(shape[axis]) + (points[:, axis] - lo[axis])
    return keys


class PointSet:
    """Immutable, deduplicated set of lattice points in lexicographic order.

    Membership is answered by binary search over mixed-radix keys, or through a hash set
    for single-point lookups.
    """

    __slots__ = ("dim", "_points", "_lo", "_shape", "_keys", "_hashed")

    def __init__(self, dim: int, points=None):
        if dim <= 0:
            raise ValueError(f"dim must be positive, got {dim}")
        self.dim = dim
        if points is None:
            array = np.zeros((0, dim), dtype=np.int64)
        else:
            array = np.asarray(points, dtype=np.int64)
            if array.size == 0:
                array = np.zeros((0, dim), dtype=np.int64)
            if array.ndim == 1:
                array = array.reshape(-1, dim)
            if array.ndim != 2 or array.shape[1] != dim:
                raise DimensionMismatchError(f"points have shape {array.shape}, expected (k, {dim})")
            array = np.unique(array, axis=0)
        array.setflags(write=False)
        self._points = array
        self._hashed = None
        if len(array):
            self._lo = array.min(axis=0)
            self._shape = array.max(axis=0) - self._lo + 1
            if float(np.prod(self._shape.astype(np.float64))) >= _INT64_SAFE:
                raise BudgetExceededError("point-set key space", int(np.prod(self._shape.astype(object))), _INT64_SAFE)
            self._keys = _encode_points(array, self._lo, self._shape)
        else:
            self._lo = np.zeros(dim, dtype=np.int64)
            self._shape = np.zeros(dim, dtype=np.int64)
            self._keys = np.zeros(0, dtype=np.int64)

    @property
    def points(self) -> np.ndarray:
        return self._points

    @property
    def bounds(self) -> Tuple[np.ndarray, np.ndarray]:
        """Coordinate-wise (min, max) of the points"""
        return self._lo, self._lo + self._shape - 1

    def __len__(self) -> int:
        return len(self._points)

    def __iter__(self) -> Iterator[LatticePoint]:
        for row in self._points:
            yield tuple(int(v) for v in row)

    def __contains__(self, point) -> bool:
        if self._hashed is None:
            self._hashed = frozenset(self)
        return tuple(int(v) for v in point) in self._hashed

    def __eq__(self, other) -> bool:
        if not isinstance(other, PointSet):
            return NotImplemented
        return self.dim == other.dim and np.array_equal(self._points, other._points)

    def __hash__(self):
        return hash((self.dim, self._points.tobytes()))

    def __repr__(self) -> str:
        return f"PointSet(dim={self.dim}, size={len(self)})"

    def to_list(self) -> List[LatticePoint]:
        return list(self)

    def contains_many(self, queries: np.ndarray) -> np.ndarray:
        """Vectorized membership for an (k, dim) array of points"""
        queries = np.asarray(queries, dtype=np.int64).reshape(-1, self.dim)
        result = np.zeros(len(queries), dtype=bool)
        if len(self) == 0 or len(queries) == 0:
            return result
        lo, hi = self.bounds
        inside = np.all((queries >= lo) & (queries <= hi), axis=1)
        if not inside.any():
            return result
        keys = _encode_points(queries[inside], self._lo, self._shape)
        positions = np.searchsorted(self._keys, keys)
        positions = np.minimum(positions, len(self._keys) - 1)
        result[inside] = self._keys[positions] == keys
        return result

    def translate(self, offset: Sequence[int]) -> "PointSet":
        offset = np.asarray(offset, dtype=np.int64)
        if offset.shape != (self.dim,):
            raise DimensionMismatchError(f"offset has shape {offset.shape}, expected ({self.dim},)")
        return PointSet(self.dim, self._points + offset)

    def split_halves(self) -> Tuple["PointSet", "PointSet"]:
        """Split into the first ceil(k/2) and last floor(k/2) points in sorted order"""
        middle = (len(self) + 1) // 2
        return PointSet(self.dim, self._points[:middle]), PointSet(self.dim, self._points[middle:])


def ball_volume(dim: int, radius: float) -> float:
    """Lebesgue measure of a dim-dimensional ball of the given radius"""
    if dim < 1:
        raise ValueError(f"dim must be >= 1, got {dim}")
    if not radius > 0:
        raise ValueError(f"radius must be positive, got {radius}")
    log_volume = 0.5 * dim * math.log(math.pi) - gammaln(0.5 * dim + 1.0) + dim * math.log(radius)
    return float(math.exp(log_volume))


def radius_for_volume(dim: int, volume: float) -> float:
    """Radius of the dim-dimensional ball with the given measure"""
    if dim < 1:
        raise ValueError(f"dim must be >= 1, got {dim}")
    if not volume > 0:
        raise ValueError(f"volume must be positive, got {volume}")
    log_radius = (math.log(volume) + gammaln(0.5 * dim + 1.0) - 0.5 * dim * math.log(math.pi)) / dim
    return float(math.exp(log_radius))


def _check_budget(shape: Sequence[int], budget: Optional[int]) -> None:
    budget = config.ENUMERATION_BUDGET if budget is None else budget
    cells = 1
    for side in shape:
        cells *= int(side)
    if cells > budget:
        raise BudgetExceededError("enumeration budget", cells, budget)


def _grid(lo: Sequence[int], shape: Sequence[int]) -> np.ndarray:
    """All points of the box [lo, lo + shape) in lexicographic order"""
    dim = len(lo)
    if any(int(s) <= 0 for s in shape):
        return np.zeros((0, dim), dtype=np.int64)
    grid = np.indices(tuple(int(s) for s in shape), dtype=np.int64).reshape(dim, -1).T
    return grid + np.asarray(lo, dtype=np.int64)


def enumerate_box(lo: Sequence[int], hi: Sequence[int], budget: Optional[int] = None) -> PointSet:
    """All integer points p with lo <= p <= hi coordinate-wise"""
    if len(lo) != len(hi):
        raise DimensionMismatchError(f"box corners have lengths {len(lo)} and {len(hi)}")
    shape = [max(int(h) - int(l) + 1, 0) for l, h in zip(lo, hi)]
    _check_budget(shape, budget)
    return PointSet(len(lo), _grid(lo, shape))


def enumerate_ball(spec: BallSpec, budget: Optional[int] = None) -> PointSet:
    """All integer points of a ball, decided in exact integer arithmetic.

    With L the common denominator of the center, p lies in the ball iff
    sum (L p_i - L c_i)^2 <= floor(L^2 radius_sq); both sides are integers.
    """
    scale = math.lcm(*(c.denominator for c in spec.center))
    scaled_center = [int(c * scale) for c in spec.center]
    bound = math.floor(spec.radius_sq * scale * scale)
    reach = math.isqrt(bound)

    # |L p - L c| <= reach, coordinate by coordinate
    lo = [-((reach - sc) // scale) for sc in scaled_center]
    hi = [(sc + reach) // scale for sc in scaled_center]
    shape = [max(h - l + 1, 0) for l, h in zip(lo, hi)]
    _check_budget(shape, budget)

    grid = _grid(lo, shape)
    if len(grid) == 0:
        return PointSet(spec.dim)

    largest = (reach + scale) ** 2 * spec.dim
    if largest < _INT64_SAFE:
        diffs = grid * scale - np.asarray(scaled_center, dtype=np.int64)
        norms = np.einsum("ij,ij->i", diffs, diffs)
    else:
        diffs = grid.astype(object) * scale - np.asarray(scaled_center, dtype=object)
        norms = (diffs * diffs).sum(axis=1)
    inside = norms <= bound
    points = grid[np.asarray(inside, dtype=bool)]
    logging.debug(f"Enumerated {len(points)} lattice points in a box of {len(grid)} cells (dim {spec.dim})")
    return PointSet(spec.dim, points)


def translate_to_orthant(*sets: PointSet) -> Tuple[List[PointSet], List[np.ndarray], int]:
    """Translate each set so its coordinate-wise minimum is 1.

    Returns the translated sets, the offsets applied and the smallest M with every
    translated set inside [M+1]^D.
    """
    translated: List[PointSet] = []
    offsets: List[np.ndarray] = []
    top = 1
    for point_set in sets:
        if len(point_set) == 0:
            offsets.append(np.zeros(point_set.dim, dtype=np.int64))
            translated.append(point_set)
            continue
        lo, hi = point_set.bounds
        offset = 1 - lo
        offsets.append(offset)
        translated.append(point_set.translate(offset))
        top = max(top, int((hi + offset).max()))
    return translated, offsets, top - 1
