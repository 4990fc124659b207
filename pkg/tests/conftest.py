import logging

import pytest

from removal_bounds.additive.corners import CornerSet
from removal_bounds.graphgen.tripartite import build_tripartite
from removal_bounds.lattice.counting import count_additive_triples
from removal_bounds.lattice.geometry import enumerate_box
from removal_bounds.utils.log_base import ColoredFormatter


@pytest.fixture
def small_corner_set():
    """A = {(1,1), (1,2), (2,2)} in Z^1 x Z^1"""
    return CornerSet(1, [((1,), (1,)), ((1,), (2,)), ((2,), (2,))])


@pytest.fixture
def small_graph(small_corner_set):
    system, graph = build_tripartite(small_corner_set)
    return graph.padded(9), system


def _box_A0(D: int, M: int) -> CornerSet:
    half = M // 2
    X = enumerate_box([1] * D, [M + 1] * D)
    Z = enumerate_box([half + 2] * D, [3 * half + 2] * D)
    _, pairs = count_additive_triples(X, X, Z, collect=True)
    return CornerSet(D, pairs)


@pytest.fixture
def box_A0():
    """Factory for the pairs of [M+1]^D whose sum stays in the translated box"""
    return _box_A0


@pytest.fixture(autouse=True)
def _drop_console_handlers():
    """The CLI installs a console handler bound to the stderr of the test that ran it"""
    yield
    root = logging.getLogger()
    for handler in list(root.handlers):
        if isinstance(handler.formatter, ColoredFormatter):
            root.removeHandler(handler)
