# removal-bounds: graphs where every edge lies in exactly one triangle
#
# This project is open-sourced under the MIT License. For details, please see the LICENSE file.

# The tripartite graph of a corner-free set, triangle enumeration and the exactly-one-triangle check.

import logging
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from removal_bounds.additive.corners import CornerSet, check_triple_condition
from removal_bounds.additive.witness import Witness, WitnessKind

Triangle = Tuple[int, int, int]


def _edge_array(edges) -> np.ndarray:
    array = np.asarray(edges if edges is not None else [], dtype=np.int64)
    if array.size == 0:
        return np.zeros((0, 2), dtype=np.int64)
    array = array.reshape(-1, 2)
    if np.any(array[:, 0] == array[:, 1]):
        raise ValueError("self-loops are not allowed")
    return np.unique(np.sort(array, axis=1), axis=0)


class SimpleGraph:
    """Undirected simple graph on vertices 0 .. order - 1.

    Edges are kept as a sorted (m, 2) int64 array with u < v in every row.
    """

    def __init__(self, order: int, edges=None):
        if order < 0:
            raise ValueError(f"order must be non-negative, got {order}")
        array = _edge_array(edges)
        if len(array) and (array.min() < 0 or array.max() >= order):
            raise ValueError(f"edge endpoints must lie in [0, {order})")
        array.setflags(write=False)
        self.order = order
        self._edges = array
        self._adjacency: Optional[List[FrozenSet[int]]] = None

    @property
    def edges(self) -> np.ndarray:
        return self._edges

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    def edge_list(self) -> List[Tuple[int, int]]:
        return [(int(u), int(v)) for u, v in self._edges]

    def neighbors(self, vertex: int) -> FrozenSet[int]:
        if self._adjacency is None:
            lists: List[List[int]] = [[] for _ in range(self.order)]
            for u, v in self.edge_list():
                lists[u].append(v)
                lists[v].append(u)
            self._adjacency = [frozenset(items) for items in lists]
        return self._adjacency[vertex]

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimpleGraph):
            return NotImplemented
        return self.order == other.order and np.array_equal(self._edges, other._edges)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(order={self.order}, edges={self.edge_count})"


class TripartiteGraph(SimpleGraph):
    """Graph on parts V1, V2, V3 with consecutive id ranges, plus isolated padding vertices.

    Part i occupies ids [offset_i, offset_i + |V_i|); ids at or above |V1| + |V2| + |V3|
    are dummies. Every edge crosses two distinct parts.
    """

    def __init__(self, part_sizes: Sequence[int], edges=None, padded_order: Optional[int] = None):
        part_sizes = tuple(int(s) for s in part_sizes)
        if len(part_sizes) != 3 or min(part_sizes) < 0:
            raise ValueError(f"part_sizes must be three non-negative integers, got {part_sizes}")
        total = sum(part_sizes)
        padded_order = total if padded_order is None else int(padded_order)
        if padded_order < total:
            raise ValueError(f"padded_order {padded_order} is below the part total {total}")
        super().__init__(padded_order, edges)
        self.part_sizes = part_sizes
        self.padded_order = padded_order

        parts = self.parts_of(self.edges.reshape(-1)).reshape(-1, 2) if self.edge_count else np.zeros((0, 2))
        if np.any(parts < 0):
            raise ValueError("an edge touches a padding vertex")
        if np.any(parts[:, 0] == parts[:, 1]):
            raise ValueError("an edge joins two vertices of the same part")

    @property
    def offsets(self) -> Tuple[int, int, int]:
        a, b, _ = self.part_sizes
        return 0, a, a + b

    def parts_of(self, vertices: np.ndarray) -> np.ndarray:
        """Part index 0, 1 or 2 per vertex; -1 for padding vertices"""
        bounds = np.cumsum(self.part_sizes)
        index = np.searchsorted(bounds, np.asarray(vertices), side="right")
        return np.where(index < 3, index, -1)

    def part_range(self, part: int) -> range:
        start = self.offsets[part]
        return range(start, start + self.part_sizes[part])

    def padded(self, order: int) -> "TripartiteGraph":
        """Same graph with isolated dummy vertices up to the given order"""
        return TripartiteGraph(self.part_sizes, self.edges, padded_order=order)


class TripleSystem:
    """Tripartite 3-uniform hypergraph: one (v1, v2, v3) triple per element of a corner set"""

    def __init__(self, part_sizes: Sequence[int], triples):
        self.part_sizes = tuple(int(s) for s in part_sizes)
        array = np.asarray(triples if triples is not None else [], dtype=np.int64)
        array = array.reshape(-1, 3) if array.size else np.zeros((0, 3), dtype=np.int64)
        if len(np.unique(array, axis=0)) != len(array):
            raise ValueError("triples must be distinct")
        starts = np.concatenate([[0], np.cumsum(self.part_sizes)])
        for part in range(3):
            column = array[:, part]
            if len(column) and (column.min() < starts[part] or column.max() >= starts[part + 1]):
                raise ValueError(f"triple coordinate {part} leaves part V{part + 1}")
        covered = np.unique(array)
        if len(covered) != int(starts[-1]):
            raise ValueError("every vertex must appear in at least one triple")
        array = array[np.lexsort(array.T[::-1])]
        array.setflags(write=False)
        self.triples = array

    def __len__(self) -> int:
        return len(self.triples)

    def triple_list(self) -> List[Triangle]:
        return [tuple(int(v) for v in row) for row in self.triples]

    def edges(self) -> np.ndarray:
        t = self.triples
        return np.concatenate([t[:, [0, 1]], t[:, [0, 2]], t[:, [1, 2]]], axis=0)


def _relabel(points: np.ndarray) -> Tuple[int, np.ndarray]:
    """Ids of rows by sorted order of the distinct rows"""
    unique, inverse = np.unique(points, axis=0, return_inverse=True)
    return len(unique), np.asarray(inverse).reshape(-1)


def build_tripartite(A: CornerSet, check: bool = False) -> Union[Tuple[TripleSystem, TripartiteGraph], Witness]:
    """Hypergraph {f1(a), f2(a), f3(a)} over a in A and the graph of its triangles.

    The parts are the images f1(A), f2(A), f3(A), each relabeled by sorted lattice order to
    a consecutive id range. With check set, the triple condition is verified first and its
    witness returned on failure.
    """
    if check:
        result = check_triple_condition(A)
        if result is not True:
            logging.warning(f"Triple condition failed: {result.detail}")
            return result

    if len(A) == 0:
        return TripleSystem((0, 0, 0), None), TripartiteGraph((0, 0, 0))

    size_1, ids_1 = _relabel(A.xs)
    size_2, ids_2 = _relabel(A.ys)
    size_3, ids_3 = _relabel(A.sums)
    triples = np.stack([ids_1, ids_2 + size_1, ids_3 + size_1 + size_2], axis=1)

    system = TripleSystem((size_1, size_2, size_3), triples)
    graph = TripartiteGraph((size_1, size_2, size_3), system.edges())
    logging.info(f"Built tripartite graph: parts {graph.part_sizes}, {graph.edge_count} edges, "
                 f"{len(system)} triples")
    return system, graph


def count_triangles(G: SimpleGraph) -> Tuple[int, List[Triangle]]:
    """All triangles of G, as sorted id triples in lexicographic order.

    Tripartite graphs walk the (V1, V2) edges and intersect with V3 neighborhoods; other
    graphs use the forward algorithm over a degree ordering.
    """
    triangles: List[Triangle] = []
    if isinstance(G, TripartiteGraph):
        v3 = G.part_range(2)
        parts = G.parts_of(G.edges) if G.edge_count else np.zeros((0, 2))
        for (u, v), (pu, pv) in zip(G.edge_list(), parts):
            if pu == 0 and pv == 1:
                for w in sorted(G.neighbors(u) & G.neighbors(v)):
                    if w in v3:
                        triangles.append((u, v, w))
    else:
        degree = [len(G.neighbors(v)) for v in range(G.order)]
        rank = sorted(range(G.order), key=lambda v: (degree[v], v))
        position = {v: i for i, v in enumerate(rank)}
        forward = [frozenset(w for w in G.neighbors(v) if position[w] > position[v]) for v in range(G.order)]
        for u in range(G.order):
            for v in forward[u]:
                for w in forward[u] & forward[v]:
                    triangles.append(tuple(sorted((u, v, w))))
    triangles.sort()
    return len(triangles), triangles


def _edge_sample(G: SimpleGraph, sample: Optional[int], seed: int) -> Iterable[Tuple[int, int]]:
    if sample is None or sample >= G.edge_count:
        return G.edge_list()
    rng = np.random.default_rng(seed)
    picked = np.sort(rng.choice(G.edge_count, size=sample, replace=False))
    return [(int(u), int(v)) for u, v in G.edges[picked]]


def verify_edge_disjoint(G: SimpleGraph, sample: Optional[int] = None, seed: int = 0) -> Union[bool, Witness]:
    """True iff every edge lies in exactly one triangle; otherwise a diamond witness.

    With sample set, only that many edges, drawn deterministically from seed, are checked.
    """
    for u, v in _edge_sample(G, sample, seed):
        common = sorted(G.neighbors(u) & G.neighbors(v))
        if len(common) == 1:
            continue
        if not common:
            return Witness(kind=WitnessKind.DIAMOND, elements=[[u, v]], detail=f"edge ({u}, {v}) lies in no triangle")
        first, second = (sorted((u, v, w)) for w in common[:2])
        return Witness(kind=WitnessKind.DIAMOND, elements=[[u, v], first, second],
                       detail=f"edge ({u}, {v}) lies in {len(common)} triangles")
    return True


def triples_match(G: SimpleGraph, T: TripleSystem) -> bool:
    """Whether the triangles of G are exactly the triples of T"""
    _, triangles = count_triangles(G)
    return triangles == sorted(tuple(sorted(t)) for t in T.triple_list())
