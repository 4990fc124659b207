# removal-bounds: graphs where every edge lies in exactly one triangle
#
# This project is open-sourced under the MIT License. For details, please see the LICENSE file.

# Three-term progressions: the verifier, Behrend sphere-level sets and exhaustive r3 for small n.

import logging
import math
from typing import List, NamedTuple, Optional, Union

import numpy as np

from removal_bounds.additive.witness import Witness, WitnessKind
from removal_bounds.errors import OutOfRangeError
from removal_bounds.lattice.geometry import PointSet

R3_EXHAUSTIVE_LIMIT = 25


def is_3ap_free(W: PointSet) -> Union[bool, Witness]:
    """True if W holds no a, a + d, a + 2d with d != 0; otherwise a three-ap witness.

    Every pair a < c with an integral midpoint is tested for (a + c) / 2 in W.
    """
    points = W.points
    for i in range(len(points) - 1):
        a = points[i]
        others = points[i + 1:]
        sums = others + a
        even = np.all(sums % 2 == 0, axis=1)
        if not even.any():
            continue
        candidates = others[even]
        middles = (sums[even]) // 2
        hit = np.nonzero(W.contains_many(middles))[0]
        if len(hit):
            first = [int(v) for v in a]
            middle = [int(v) for v in middles[hit[0]]]
            last = [int(v) for v in candidates[hit[0]]]
            difference = [m - f for f, m in zip(first, middle)]
            return Witness(kind=WitnessKind.THREE_AP, elements=[first, middle, last],
                           difference=difference, detail=f"progression {first}, {middle}, {last}")
    return True


def behrend_set(N: int) -> PointSet:
    """3-AP-free subset of {1, ..., N} taken from a sphere level of a digit expansion.

    For every base 2d - 1 with d up to ceil(exp(sqrt(ln N))) + 2, the longest digit length k
    that stays inside [N] is used. Numbers whose digits all lie below d add without carries,
    so a progression among them is a progression of digit vectors, which a sphere cannot hold.
    The most populous digit-square-sum level over all scanned bases wins; the first one found
    is kept on ties.
    """
    if N < 1:
        raise ValueError(f"N must be positive, got {N}")

    best = np.array([1], dtype=np.int64)
    best_params = None
    d_max = math.ceil(math.exp(math.sqrt(math.log(N)))) + 2
    for d in range(2, d_max + 1):
        base = 2 * d - 1
        k = 0
        while (base ** (k + 1) - 1) // 2 + 1 <= N:
            k += 1
        if k == 0:
            continue

        digits = np.indices((d,) * k, dtype=np.int64).reshape(k, -1).T
        values = digits @ (base ** np.arange(k, dtype=np.int64)) + 1
        norms = np.einsum("ij,ij->i", digits, digits)
        levels, sizes = np.unique(norms, return_counts=True)
        top = int(np.argmax(sizes))
        if sizes[top] > len(best):
            best = values[norms == levels[top]]
            best_params = (d, k, int(levels[top]))

    if best_params is not None:
        d, k, level = best_params
        logging.debug(f"Behrend set for N={N}: base {2 * d - 1}, {k} digits, level {level}, size {len(best)}")
    return PointSet(1, best.reshape(-1, 1))


class R3Result(NamedTuple):
    size: int
    witness: PointSet


def _extend(m: int, target: int, table: List[int]) -> Optional[List[int]]:
    """A 3-AP-free subset of [m] of the given size that contains 1 and m, or None"""
    if m == 1:
        return [1] if target == 1 else None

    chosen = [1]
    forbidden = 0
    if (1 + m) % 2 == 0:
        forbidden |= 1 << ((1 + m) // 2)

    def search(x: int, forbidden: int) -> Optional[List[int]]:
        if len(chosen) + 1 == target:
            return chosen + [m]
        if x >= m or len(chosen) + 1 + table[m - x] < target:
            return None
        if not forbidden >> x & 1:
            blocked = forbidden
            for c in chosen:
                if 2 * x - c < m:
                    blocked |= 1 << (2 * x - c)
            if (x + m) % 2 == 0:
                blocked |= 1 << ((x + m) // 2)
            chosen.append(x)
            found = search(x + 1, blocked)
            chosen.pop()
            if found is not None:
                return found
        return search(x + 1, forbidden)

    return search(2, forbidden)


def r3_exhaustive(n: int) -> R3Result:
    """Exact r3(n), the largest 3-AP-free subset of {1, ..., n}, with one maximizer.

    r3(m) is r3(m - 1) or r3(m - 1) + 1, and a set achieving the larger value must use both
    1 and m (otherwise a translate fits in [m - 1]). Each step is a branch-and-bound search
    for such a set, pruned by the table of smaller values.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if n > R3_EXHAUSTIVE_LIMIT:
        raise OutOfRangeError(f"r3_exhaustive supports n <= {R3_EXHAUSTIVE_LIMIT}, got {n}")

    table = [0]
    witness: List[int] = []
    for m in range(1, n + 1):
        found = _extend(m, table[m - 1] + 1, table)
        if found is None:
            table.append(table[m - 1])
        else:
            table.append(len(found))
            witness = found
    return R3Result(size=table[n], witness=PointSet(1, np.array(witness, dtype=np.int64).reshape(-1, 1)))
