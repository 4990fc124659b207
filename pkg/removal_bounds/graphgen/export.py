# removal-bounds: graphs where every edge lies in exactly one triangle
#
# This project is open-sourced under the MIT License. For details, please see the LICENSE file.

# Graph files (edge-list text or canonical JSON) and structured report files.

import json
import logging
from pathlib import Path
from typing import List, Tuple, Union

import jsonschema
from pydantic import BaseModel, ValidationError

from removal_bounds.errors import GraphFormatError
from removal_bounds.graphgen.report import DensityReport
from removal_bounds.graphgen.tripartite import TripartiteGraph, TripleSystem
from removal_bounds.utils.serialization import calculate_file_hash, canonical_bytes

GRAPH_MAGIC = "rs-graph"
GRAPH_FORMATS = ("edgelist", "json")

PathLike = Union[str, Path]


class GraphDocument(BaseModel):
    """JSON rendering of a graph file"""
    format: str = GRAPH_MAGIC
    part_sizes: Tuple[int, int, int]
    padded_order: int
    edges: List[Tuple[int, int]]
    triples: List[Tuple[int, int, int]]


def _write(path: Path, data: bytes) -> str:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(data)
    except OSError as e:
        logging.error(f"Failed to write {path}: {e}")
        raise OSError(f"cannot write {path}: {e.strerror or e}") from e
    return calculate_file_hash(path)


def _edgelist_text(G: TripartiteGraph, T: TripleSystem) -> str:
    a, b, c = G.part_sizes
    lines = [f"{GRAPH_MAGIC} {a} {b} {c} {G.padded_order} {G.edge_count} {len(T)}"]
    lines.extend(f"e {u} {v}" for u, v in G.edge_list())
    lines.extend(f"t {x} {y} {z}" for x, y, z in T.triple_list())
    return "\n".join(lines) + "\n"


def export_graph(G: TripartiteGraph, T: TripleSystem, path: PathLike, format: str = "edgelist") -> str:
    """Write the graph and its triples; returns the sha256 digest of the file"""
    path = Path(path)
    if format == "edgelist":
        data = _edgelist_text(G, T).encode("utf-8")
    elif format == "json":
        document = GraphDocument(part_sizes=G.part_sizes, padded_order=G.padded_order,
                                 edges=G.edge_list(), triples=T.triple_list())
        data = canonical_bytes(document)
    else:
        raise ValueError(f"Unknown graph format: {format}, expected one of {GRAPH_FORMATS}")
    digest = _write(path, data)
    logging.info(f"Graph written to {path} ({format}, {digest})")
    return digest


def _parse_ints(path: str, line_number: int, tokens: List[str], expected: int) -> List[int]:
    if len(tokens) != expected:
        raise GraphFormatError(path, line_number, f"expected {expected} integers, got {len(tokens)}")
    try:
        values = [int(token) for token in tokens]
    except ValueError:
        raise GraphFormatError(path, line_number, f"non-integer field in {' '.join(tokens)!r}")
    if any(v < 0 for v in values):
        raise GraphFormatError(path, line_number, "negative field")
    return values


def _read_edgelist(path: str, text: str) -> Tuple[TripartiteGraph, TripleSystem]:
    lines = text.splitlines()
    if not lines or not lines[0].strip():
        raise GraphFormatError(path, 1, "missing header")
    header = lines[0].split()
    if header[0] != GRAPH_MAGIC:
        raise GraphFormatError(path, 1, f"header must start with {GRAPH_MAGIC!r}")
    a, b, c, padded_order, edge_count, triple_count = _parse_ints(path, 1, header[1:], 6)

    edges: List[Tuple[int, int]] = []
    seen = set()
    triples: List[Tuple[int, int, int]] = []
    for index, line in enumerate(lines[1:], start=2):
        tokens = line.split()
        if not tokens:
            continue
        record = tokens[0]
        if record == "e":
            u, v = _parse_ints(path, index, tokens[1:], 2)
            if not u < v:
                raise GraphFormatError(path, index, f"edge ({u}, {v}) must have u < v")
            if v >= padded_order:
                raise GraphFormatError(path, index, f"vertex {v} beyond padded order {padded_order}")
            if (u, v) in seen:
                raise GraphFormatError(path, index, f"duplicate edge ({u}, {v})")
            seen.add((u, v))
            edges.append((u, v))
        elif record == "t":
            triples.append(tuple(_parse_ints(path, index, tokens[1:], 3)))
        else:
            raise GraphFormatError(path, index, f"unknown record type {record!r}")

    # Header counts are minimums: fewer records means a truncated file. Surplus records
    # are kept and left to the verifiers.
    last = len(lines) + 1
    for name, found, declared in (("edges", len(edges), edge_count), ("triples", len(triples), triple_count)):
        if found < declared:
            raise GraphFormatError(path, last, f"header declares {declared} {name}, found {found}")
        if found > declared:
            logging.warning(f"{path}: header declares {declared} {name}, found {found}; checking all of them")
    try:
        graph = TripartiteGraph((a, b, c), edges, padded_order=padded_order)
        system = TripleSystem((a, b, c), triples)
    except ValueError as e:
        raise GraphFormatError(path, 1, str(e))
    return graph, system


def read_graph(path: PathLike) -> Tuple[TripartiteGraph, TripleSystem]:
    """Read a graph file written by export_graph (either format)"""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise OSError(f"cannot read {path}: {e.strerror or e}") from e

    if text.lstrip().startswith("{"):
        try:
            document = GraphDocument.model_validate_json(text)
        except ValidationError as e:
            raise GraphFormatError(str(path), 1, f"invalid graph document: {e.error_count()} errors")
        try:
            graph = TripartiteGraph(document.part_sizes, document.edges, padded_order=document.padded_order)
            system = TripleSystem(document.part_sizes, document.triples)
        except ValueError as e:
            raise GraphFormatError(str(path), 1, str(e))
        return graph, system
    return _read_edgelist(str(path), text)


def export_report(report: DensityReport, path: PathLike) -> str:
    """Write the report as canonical JSON; returns the sha256 digest of the file"""
    return _write(Path(path), canonical_bytes(report))


def read_report(path: PathLike) -> DensityReport:
    """Load a report, validating it against the DensityReport JSON schema first"""
    path = Path(path)
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise OSError(f"cannot read {path}: {e.strerror or e}") from e
    except json.JSONDecodeError as e:
        raise GraphFormatError(str(path), e.lineno, f"invalid JSON: {e.msg}")
    try:
        jsonschema.validate(payload, DensityReport.model_json_schema())
    except jsonschema.ValidationError as e:
        raise GraphFormatError(str(path), 1, f"report does not match schema: {e.message}")
    return DensityReport.model_validate(payload)
