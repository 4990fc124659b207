# removal-bounds: graphs where every edge lies in exactly one triangle
#
# This project is open-sourced under the MIT License. For details, please see the LICENSE file.

from typing import NamedTuple, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from removal_bounds import config
from removal_bounds.additive.corners import CornerSet
from removal_bounds.graphgen.report import ConstructionKind, DensityReport, VerifyLevel
from removal_bounds.graphgen.tripartite import TripartiteGraph, TripleSystem


class PipelineConfig(BaseModel):
    """Parameters of one construction run"""
    model_config = ConfigDict(frozen=True)

    kind: ConstructionKind
    D: Optional[int] = Field(default=None, ge=1, description="Ambient dimension (box and ball)")
    n: Optional[int] = Field(default=None, ge=1, description="Target part size (ball and abstract)")
    M: Optional[int] = Field(default=None, ge=2, description="Box side parameter, even (box)")
    seed: int = Field(default=0, ge=0)
    shift_trials: int = Field(default_factory=lambda: config.SHIFT_TRIALS, gt=0)
    verify_level: VerifyLevel = VerifyLevel.FULL
    enumeration_budget: int = Field(default_factory=lambda: config.ENUMERATION_BUDGET, gt=0)
    pair_budget: int = Field(default_factory=lambda: config.PAIR_BUDGET, gt=0)
    target_samples: int = Field(default_factory=lambda: config.TARGET_SAMPLES, gt=0,
                                description="Monte-Carlo samples behind the shift target")
    threads: int = Field(default_factory=lambda: config.THREADS, ge=1)

    @model_validator(mode="after")
    def _check_parameters(self):
        if self.kind == ConstructionKind.BOX:
            if self.D is None or self.M is None:
                raise ValueError("box runs need D and M")
            if self.n is not None:
                raise ValueError("box runs take M, not n")
        elif self.kind == ConstructionKind.BALL:
            if self.D is None or self.n is None:
                raise ValueError("ball runs need D and n")
            if self.M is not None:
                raise ValueError("ball runs take n, not M")
        else:
            if self.n is None:
                raise ValueError("abstract runs need n")
            if self.D is not None or self.M is not None:
                raise ValueError("abstract runs take only n")
        return self


class PipelineResult(NamedTuple):
    graph: TripartiteGraph
    triples: TripleSystem
    report: DensityReport
    A: CornerSet
