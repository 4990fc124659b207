# removal-bounds: graphs where every edge lies in exactly one triangle
#
# This project is open-sourced under the MIT License. For details, please see the LICENSE file.

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, List, TypeVar

import numpy as np

T = TypeVar("T")
R = TypeVar("R")


def ordered_map(func: Callable[[T], R], items: Iterable[T], threads: int = 1) -> List[R]:
    """Apply func to every item, returning results in input order.

    With threads <= 1 the work runs in-process. Otherwise it is spread over a process pool;
    func and the items must then be picklable (module-level functions, plain data).
    """
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [func(item) for item in items]

    workers = min(threads, len(items))
    logging.debug(f"Dispatching {len(items)} tasks to {workers} workers")
    with ProcessPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(func, items))


def derive_seeds(seed: int, count: int) -> List[int]:
    """Derive count independent child seeds from one root seed.

    Children depend only on (seed, index), never on scheduling.
    """
    children = np.random.SeedSequence(seed).spawn(count)
    return [int(child.generate_state(2, dtype=np.uint64)[0]) for child in children]
