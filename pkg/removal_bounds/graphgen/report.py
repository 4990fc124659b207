# removal-bounds: graphs where every edge lies in exactly one triangle
#
# This project is open-sourced under the MIT License. For details, please see the LICENSE file.

# Density accounting for a verified construction: eta lower bounds and the epsilon / delta reading.

import logging
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field

from removal_bounds import config
from removal_bounds.errors import VerificationError
from removal_bounds.graphgen.tripartite import TripartiteGraph, count_triangles, verify_edge_disjoint
from removal_bounds.probability.curves import theory_curves
from removal_bounds.utils.serialization import fraction_str


class ConstructionKind(str, Enum):
    BOX = "box"
    BALL = "ball"
    ABSTRACT = "abstract"


class VerifyLevel(str, Enum):
    FULL = "full"
    SAMPLED = "sampled"
    OFF = "off"


class RationalValue(BaseModel):
    """Exact rational as "p/q" next to its float rendering"""
    model_config = ConfigDict(frozen=True)

    exact: str = Field(description="Exact value, p/q")
    value: float = Field(description="Float rendering of the exact value")

    @classmethod
    def of(cls, fraction: Fraction) -> "RationalValue":
        fraction = Fraction(fraction)
        return cls(exact=fraction_str(fraction), value=float(fraction))

    def as_fraction(self) -> Fraction:
        return Fraction(self.exact)


class ReportParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: ConstructionKind
    D: Optional[int] = Field(default=None, description="Ambient dimension; absent for the abstract construction")
    M: Optional[int] = Field(default=None, description="Grid side parameter, sets live in [M+1]^D")
    n: int = Field(description="Part-size bound; the padded graph has order 3n")
    seed: Optional[int] = None
    shift_trials: Optional[int] = None
    radius: Optional[float] = None
    radius_sq: Optional[str] = Field(default=None, description="Exact squared radius, p/q")
    shift: Optional[List[str]] = Field(default=None, description="Chosen shift, dyadic rationals p/q")


class ReportCounts(BaseModel):
    model_config = ConfigDict(frozen=True)

    A0: int = Field(description="Pairs before color extraction")
    classes_present: int = Field(description="Color classes occurring in A0")
    A: int = Field(description="Pairs in the extracted corner-free set")
    color: Optional[int] = Field(default=None, description="Color of the extracted class")
    X: Optional[int] = None
    Y: Optional[int] = None
    Z: Optional[int] = None
    W0: Optional[int] = Field(default=None, description="Size of the 3-AP-free set used")
    pair_count: Optional[int] = Field(default=None, description="Pair count at the chosen shift, before trimming")
    trimmed_pair_count: Optional[int] = None
    trim_rounds: Optional[int] = None


class GraphStats(BaseModel):
    model_config = ConfigDict(frozen=True)

    order: int = Field(description="Padded order 3n")
    part_sizes: List[int]
    edges: int
    triangles: int
    triples: int
    verify_level: VerifyLevel
    verified: bool
    digest: Optional[str] = Field(default=None, description="sha256 of the exported graph file")


class TheoryValues(BaseModel):
    model_config = ConfigDict(frozen=True)

    behrend: float
    green: float
    new: float
    note: str = "exponential parts only, poly(D) factors dropped"


class DensityReport(BaseModel):
    """Full provenance of one construction run"""
    model_config = ConfigDict(frozen=True)

    params: ReportParams
    counts: ReportCounts
    graph: GraphStats
    eta_lower: RationalValue = Field(description="e(G) / (3n)^2")
    eta_paper_bound: RationalValue = Field(description="The conservative |A| / (9 n^2)")
    theory: Optional[TheoryValues] = None
    epsilon: RationalValue = Field(description="eta_lower / 3")
    delta_bound: RationalValue = Field(description="1 / (3n): delta(epsilon) lies below it")
    checks: Dict[str, bool] = Field(default_factory=dict, description="Which construction inequalities held")
    measurements: Dict[str, float] = Field(default_factory=dict)

    def with_digest(self, digest: str) -> "DensityReport":
        return self.model_copy(update={"graph": self.graph.model_copy(update={"digest": digest})})


def density_report(G: TripartiteGraph, n: int, params: ReportParams, counts: ReportCounts,
                   verify_level: VerifyLevel = VerifyLevel.FULL, triples: Optional[int] = None,
                   checks: Optional[Dict[str, bool]] = None,
                   measurements: Optional[Dict[str, float]] = None, seed: int = 0) -> DensityReport:
    """Report for G padded to order 3n.

    eta_lower = e(G) / (3n)^2, which is 3|A| / (9n^2) for the tripartite construction; the
    conservative |A| / (9n^2) is kept next to it.

    Raises:
        ValueError: a part is larger than n.
        VerificationError: the requested verification found a witness.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if max(G.part_sizes) > n:
        raise ValueError(f"part sizes {G.part_sizes} exceed n = {n}")
    verify_level = VerifyLevel(verify_level)

    verified = False
    if verify_level != VerifyLevel.OFF:
        sample = config.SAMPLED_EDGES if verify_level == VerifyLevel.SAMPLED else None
        result = verify_edge_disjoint(G, sample=sample, seed=seed)
        if result is not True:
            raise VerificationError(f"graph failed edge-disjointness: {result.detail}", witness=result)
        verified = True

    triangle_count, _ = count_triangles(G)
    if verify_level == VerifyLevel.FULL and G.edge_count != 3 * triangle_count:
        raise VerificationError(f"{G.edge_count} edges but {triangle_count} triangles")

    order = 3 * n
    eta = Fraction(G.edge_count, order * order)
    theory = None
    if params.D is not None:
        curves = theory_curves(params.D, n)
        theory = TheoryValues(behrend=curves.behrend, green=curves.green, new=curves.new)

    logging.info(f"Density report: {G.edge_count} edges on {order} vertices, eta >= {float(eta):.6g}")
    return DensityReport(
        params=params,
        counts=counts,
        graph=GraphStats(order=order, part_sizes=list(G.part_sizes), edges=G.edge_count, triangles=triangle_count,
                         triples=triangle_count if triples is None else triples,
                         verify_level=verify_level, verified=verified),
        eta_lower=RationalValue.of(eta),
        eta_paper_bound=RationalValue.of(Fraction(counts.A, 9 * n * n)),
        theory=theory,
        epsilon=RationalValue.of(eta / 3),
        delta_bound=RationalValue.of(Fraction(1, order)),
        checks=dict(checks or {}),
        measurements=dict(measurements or {}),
    )
