# removal-bounds: graphs where every edge lies in exactly one triangle
#
# This project is open-sourced under the MIT License. For details, please see the LICENSE file.

# The box construction: X = Y = Z = {-M/2, ..., M/2}^D translated into the positive orthant.

import logging
from fractions import Fraction
from typing import Optional

from removal_bounds.additive.corners import CornerSet, color_classes, largest_cornerfree_class
from removal_bounds.graphgen.report import ConstructionKind, ReportCounts, ReportParams, VerifyLevel
from removal_bounds.lattice.counting import count_additive_triples
from removal_bounds.lattice.geometry import enumerate_box
from removal_bounds.pipeline.common import assemble
from removal_bounds.pipeline.settings import PipelineResult
from removal_bounds.probability.estimates import box_sum_probability


def run_box_pipeline(D: int, M: int, verify_level: VerifyLevel = VerifyLevel.FULL,
                     enumeration_budget: Optional[int] = None, pair_budget: Optional[int] = None) -> PipelineResult:
    """Box construction with n = (M+1)^D.

    X and Y are shifted by M/2 + 1 into [M+1]^D and Z by M + 2, so x + y in Z holds exactly
    when the untranslated sum stays in the box. A0 has exactly
    (box_sum_probability(M/2) (M+1)^2)^D pairs.

    Raises:
        ValueError: M odd or below 2, or D below 1.
        BudgetExceededError: (M+1)^{2D} pairs exceed the pair budget.
    """
    if D < 1:
        raise ValueError(f"D must be >= 1, got {D}")
    if M < 2 or M % 2:
        raise ValueError(f"M must be even and >= 2, got {M}")
    half = M // 2
    verify_level = VerifyLevel(verify_level)
    logging.info(f"Box pipeline: D={D}, M={M}")

    X = enumerate_box([1] * D, [M + 1] * D, enumeration_budget)
    Z = enumerate_box([half + 2] * D, [3 * half + 2] * D, enumeration_budget)
    count, pairs = count_additive_triples(X, X, Z, collect=True, budget=pair_budget)
    A0 = CornerSet(D, pairs)
    n = (M + 1) ** D

    extracted = largest_cornerfree_class(A0, verify=verify_level != VerifyLevel.OFF)
    expected = (box_sum_probability(half) * (M + 1) ** 2) ** D
    density = Fraction(count, n * n)
    checks = {
        "A0_matches_box_probability": Fraction(count) == expected,
        "A0_density_at_least_three_quarters_power": density >= Fraction(3, 4) ** D,
        "pigeonhole": len(extracted.A) * extracted.classes_present >= count,
        "colors_within_range": max(color_classes(A0)) <= D * M * M,
    }

    params = ReportParams(kind=ConstructionKind.BOX, D=D, M=M, n=n)
    counts = ReportCounts(A0=count, classes_present=extracted.classes_present, A=len(extracted.A),
                          color=extracted.color, X=len(X), Y=len(X), Z=len(Z))
    return assemble(extracted.A, n, params, counts, verify_level, checks=checks,
                    measurements={"A0_density": float(density)})
