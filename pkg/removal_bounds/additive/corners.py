# removal-bounds: graphs where every edge lies in exactly one triangle
#
# This project is open-sourced under the MIT License. For details, please see the LICENSE file.

# Corner sets in (Z^D)^2, the squared-norm coloring, and the corner / triple-condition verifiers.

import itertools
import logging
from collections import defaultdict
from typing import Dict, Iterable, Iterator, List, NamedTuple, Optional, Tuple, Union

import numpy as np

from removal_bounds import config
from removal_bounds.additive.witness import Witness, WitnessKind
from removal_bounds.errors import BudgetExceededError, DimensionMismatchError, VerificationError
from removal_bounds.lattice.geometry import LatticePoint, PointSet

Pair = Tuple[LatticePoint, LatticePoint]

# Candidate pairs examined per vectorized verifier block
_CHUNK_CANDIDATES = 1 << 20


def _as_point(value) -> LatticePoint:
    if isinstance(value, (int, np.integer)):
        return (int(value),)
    return tuple(int(v) for v in value)


class CornerSet:
    """Immutable, deduplicated set of pairs (x, y) of D-dimensional lattice points.

    Stored as a sorted (k, 2D) int64 array whose rows are x followed by y. The maps
    f1 = x, f2 = y and f3 = x + y are exposed as arrays, never stored.
    """

    __slots__ = ("dim", "_pairs", "_hashed")

    def __init__(self, dim: int, pairs: Union[np.ndarray, Iterable, None] = None):
        if dim <= 0:
            raise ValueError(f"dim must be positive, got {dim}")
        self.dim = dim
        self._hashed = None
        if pairs is None:
            array = np.zeros((0, 2 * dim), dtype=np.int64)
        elif isinstance(pairs, np.ndarray):
            array = pairs.astype(np.int64).reshape(-1, 2 * dim) if pairs.size else np.zeros((0, 2 * dim), dtype=np.int64)
        else:
            rows = []
            for x, y in pairs:
                x, y = _as_point(x), _as_point(y)
                if len(x) != dim or len(y) != dim:
                    raise DimensionMismatchError(f"pair ({x}, {y}) does not have dimension {dim}")
                rows.append(x + y)
            array = np.asarray(rows, dtype=np.int64).reshape(-1, 2 * dim)
        if len(array):
            array = np.unique(array, axis=0)
        array.setflags(write=False)
        self._pairs = array

    @property
    def pairs(self) -> np.ndarray:
        return self._pairs

    @property
    def xs(self) -> np.ndarray:
        return self._pairs[:, :self.dim]

    @property
    def ys(self) -> np.ndarray:
        return self._pairs[:, self.dim:]

    @property
    def sums(self) -> np.ndarray:
        return self.xs + self.ys

    def __len__(self) -> int:
        return len(self._pairs)

    def __iter__(self) -> Iterator[Pair]:
        for row in self._pairs:
            values = tuple(int(v) for v in row)
            yield values[:self.dim], values[self.dim:]

    def __contains__(self, pair) -> bool:
        if self._hashed is None:
            self._hashed = frozenset(self)
        x, y = pair
        return (_as_point(x), _as_point(y)) in self._hashed

    def __eq__(self, other) -> bool:
        if not isinstance(other, CornerSet):
            return NotImplemented
        return self.dim == other.dim and np.array_equal(self._pairs, other._pairs)

    def __hash__(self):
        return hash((self.dim, self._pairs.tobytes()))

    def __repr__(self) -> str:
        return f"CornerSet(dim={self.dim}, size={len(self)})"

    def subset(self, mask: np.ndarray) -> "CornerSet":
        return CornerSet(self.dim, self._pairs[np.asarray(mask, dtype=bool)])

    def to_list(self) -> List[Pair]:
        return list(self)


def norm_color(x: LatticePoint, y: LatticePoint) -> int:
    """Squared Euclidean norm of x - y"""
    x, y = _as_point(x), _as_point(y)
    if len(x) != len(y):
        raise DimensionMismatchError(f"x has dimension {len(x)}, y has dimension {len(y)}")
    return sum((a - b) ** 2 for a, b in zip(x, y))


def norm_colors(pairs: np.ndarray, dim: int) -> np.ndarray:
    """Vectorized norm_color over a (k, 2D) array of pairs"""
    diff = pairs[:, :dim] - pairs[:, dim:]
    return np.einsum("ij,ij->i", diff, diff)


def color_classes(A0: CornerSet) -> Dict[int, int]:
    """Histogram color -> class size, in increasing color order"""
    colors, sizes = np.unique(norm_colors(A0.pairs, A0.dim), return_counts=True)
    return {int(c): int(s) for c, s in zip(colors, sizes)}


class ColorClass(NamedTuple):
    color: int
    A: CornerSet
    classes_present: int


def largest_cornerfree_class(A0: CornerSet, verify: bool = True) -> ColorClass:
    """Largest class of the norm coloring of A0 (ties go to the smallest color).

    Every class is corner-free; with verify set, both the corner check and the
    triple-condition check are rerun on the result.
    """
    if len(A0) == 0:
        raise ValueError("A0 must be non-empty")
    colors = norm_colors(A0.pairs, A0.dim)
    values, sizes = np.unique(colors, return_counts=True)
    best = int(np.argmax(sizes))  # first maximum = smallest color
    color = int(values[best])
    A = A0.subset(colors == color)
    logging.info(f"Color extraction: {len(A0)} pairs, {len(values)} classes, color {color} keeps {len(A)}")

    if verify:
        for check in (is_corner_free, check_triple_condition):
            result = check(A)
            if result is not True:
                raise VerificationError(f"color class {color} failed {check.__name__}", witness=result)
    return ColorClass(color=color, A=A, classes_present=int(len(values)))


def _grouped_pairs(columns: np.ndarray) -> Iterator[Tuple[np.ndarray, np.ndarray]]:
    """Yield (i, j) row-index blocks covering every ordered pair i != j of rows with equal columns.

    Groups come in lexicographic order of their key. Inside a group rows keep their order
    and i is the slower index, so the blocks list pairs in the order of a nested loop.
    """
    count = len(columns)
    if count == 0:
        return
    order = np.lexsort(columns.T[::-1])
    keyed = columns[order]
    starts = np.flatnonzero(np.r_[True, np.any(keyed[1:] != keyed[:-1], axis=1)])
    sizes = np.diff(np.r_[starts, count])
    member_size = np.repeat(sizes, sizes)
    member_start = np.repeat(starts, sizes)
    ends = np.cumsum(member_size)

    position = 0
    while position < count:
        before = int(ends[position] - member_size[position])
        stop = max(position + 1, int(np.searchsorted(ends, before + _CHUNK_CANDIDATES, side="right")))
        block = np.arange(position, stop)
        widths = member_size[block]
        left = np.repeat(block, widths)
        right = np.repeat(member_start[block], widths) + (np.arange(int(widths.sum()))
                                                          - np.repeat(np.cumsum(widths) - widths, widths))
        keep = left != right
        yield order[left[keep]], order[right[keep]]
        position = stop


def _pair_index(A: CornerSet) -> Optional[PointSet]:
    """A as a 2D-dimensional point set for vectorized lookups, or None if its keys overflow"""
    try:
        return PointSet(2 * A.dim, A.pairs)
    except BudgetExceededError:
        return None


def _corner_witness(x: LatticePoint, x2: LatticePoint, y: LatticePoint) -> Witness:
    d = tuple(b - a for a, b in zip(x, x2))
    y2 = tuple(a + b for a, b in zip(y, d))
    return Witness(kind=WitnessKind.CORNER,
                   elements=[[list(x), list(y)], [list(x2), list(y)], [list(x), list(y2)]],
                   difference=list(d),
                   detail=f"corner at x={x}, y={y}, d={d}")


def _corner_scan(A: CornerSet) -> Union[bool, Witness]:
    by_y: Dict[LatticePoint, List[LatticePoint]] = defaultdict(list)
    for x, y in A:
        by_y[y].append(x)
    for y in sorted(by_y):
        xs = by_y[y]
        for x in xs:
            for x2 in xs:
                if x2 == x:
                    continue
                y2 = tuple(a + b - c for a, b, c in zip(y, x2, x))
                if (x, y2) in A:
                    return _corner_witness(x, x2, y)
    return True


def is_corner_free(A: CornerSet) -> Union[bool, Witness]:
    """True if A has no (x, y), (x + d, y), (x, y + d) with d != 0; otherwise a corner witness.

    Pairs are grouped by y; within a group every ordered pair of x values fixes d, and only
    the third point (x, y + d) needs a lookup. The first corner in (y, x, x + d) order is reported.
    """
    if len(A) < 3:
        return True
    index = _pair_index(A)
    if index is None:
        return _corner_scan(A)
    xs, ys = A.xs, A.ys
    for i, j in _grouped_pairs(ys):
        third = np.concatenate([xs[i], ys[i] + xs[j] - xs[i]], axis=1)
        hit = index.contains_many(third)
        if hit.any():
            k = int(np.argmax(hit))
            return _corner_witness(_as_point(xs[i[k]]), _as_point(xs[j[k]]), _as_point(ys[i[k]]))
    return True


def _triple_witness(a1: Pair, a2: Pair, a3: Pair) -> Witness:
    return Witness(kind=WitnessKind.TRIPLE_CONDITION,
                   elements=[[list(a[0]), list(a[1])] for a in (a1, a2, a3)],
                   detail=f"non-diagonal solution a1={a1}, a2={a2}, a3={a3}")


def check_triple_condition(A: CornerSet, mode: str = "auto", budget: Optional[int] = None) -> Union[bool, Witness]:
    """Check that f1(a2)=f1(a3), f2(a3)=f2(a1), f3(a1)=f3(a2) forces a1 = a2 = a3.

    Args:
        A: Pair set.
        mode: "brute" scans all |A|^3 tuples, "indexed" walks a3 and joins a2 on f1 and a1
              on f2, "auto" picks brute when |A|^3 fits the budget.
        budget: Tuple budget for brute mode.

    Returns:
        True, or a triple-condition witness.
    """
    budget = config.TRIPLE_BRUTE_BUDGET if budget is None else budget
    tuples = len(A) ** 3
    if mode == "auto":
        mode = "brute" if tuples <= budget else "indexed"

    def f3(a: Pair) -> LatticePoint:
        return tuple(p + q for p, q in zip(a[0], a[1]))

    if mode == "brute":
        if tuples > budget:
            raise BudgetExceededError("triple brute-force budget", tuples, budget)
        elements = A.to_list()
        for a1, a2, a3 in itertools.product(elements, repeat=3):
            if a2[0] == a3[0] and a3[1] == a1[1] and f3(a1) == f3(a2) and not (a1 == a2 == a3):
                return _triple_witness(a1, a2, a3)
        return True

    if mode != "indexed":
        raise ValueError(f"Unknown mode: {mode}")

    # a1 shares y with a3 and f3 with a2, so it is fixed: a1 = (x2 + y2 - y3, y3).
    # a2 = a3 forces a1 = a3, so only a2 != a3 inside an x-group can fail.
    index = _pair_index(A)
    if index is None:
        by_x: Dict[LatticePoint, List[Pair]] = defaultdict(list)
        for a in A:
            by_x[a[0]].append(a)
        for a3 in A:
            for a2 in by_x[a3[0]]:
                if a2 == a3:
                    continue
                a1 = (tuple(s - y for s, y in zip(f3(a2), a3[1])), a3[1])
                if a1 in A:
                    return _triple_witness(a1, a2, a3)
        return True

    xs, ys = A.xs, A.ys
    for k3, k2 in _grouped_pairs(xs):
        a1 = np.concatenate([xs[k2] + ys[k2] - ys[k3], ys[k3]], axis=1)
        hit = index.contains_many(a1)
        if hit.any():
            k = int(np.argmax(hit))
            row1 = _as_point(a1[k])
            return _triple_witness((row1[:A.dim], row1[A.dim:]),
                                   (_as_point(xs[k2[k]]), _as_point(ys[k2[k]])),
                                   (_as_point(xs[k3[k]]), _as_point(ys[k3[k]])))
    return True


def flatten_corner_set(A: CornerSet) -> CornerSet:
    """Embed A in one dimension by x -> sum (x_i - lo_i) b^i.

    The base b exceeds twice the coordinate span, so the map is injective on every
    difference that can occur and corners of the image pull back to corners of A.
    """
    if len(A) == 0:
        return CornerSet(1)
    coordinates = np.concatenate([A.xs, A.ys], axis=0)
    lo = coordinates.min(axis=0)
    span = int((coordinates.max(axis=0) - lo).max())
    base = 2 * span + 1
    if base ** A.dim >= 2 ** 62:
        raise BudgetExceededError("flattened coordinate range", base ** A.dim, 2 ** 62)
    weights = np.array([base ** i for i in range(A.dim)], dtype=np.int64)
    flat_x = (A.xs - lo) @ weights
    flat_y = (A.ys - lo) @ weights
    return CornerSet(1, np.stack([flat_x, flat_y], axis=1))
