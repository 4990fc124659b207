# removal-bounds: graphs where every edge lies in exactly one triangle
#
# This project is open-sourced under the MIT License. For details, please see the LICENSE file.

# Exact box-sum probabilities and Monte-Carlo closure probabilities for balls and spheres.

import logging
import math
from enum import Enum
from fractions import Fraction
from typing import Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from removal_bounds import config
from removal_bounds.errors import NumericalIdentityError
from removal_bounds.utils.workers import derive_seeds, ordered_map

# Monte-Carlo chunk size; chunking never depends on the worker count.
CHUNK_SAMPLES = 1 << 16

# Half-width of the discarded band around <u, v> = -1/2
BOUNDARY_BAND = 1e-9


class EstimateMethod(str, Enum):
    EXACT = "exact"
    MONTE_CARLO = "monte-carlo"
    QUADRATURE = "quadrature"


class ProbabilityEstimate(BaseModel):
    """A geometric probability with its uncertainty"""
    model_config = ConfigDict(frozen=True)

    value: float = Field(ge=0.0, le=1.0)
    stderr: float = Field(default=0.0, ge=0.0, description="Monte-Carlo standard error, 0 otherwise")
    samples: int = Field(default=0, ge=0, description="Samples that entered the estimate")
    method: EstimateMethod
    error_bound: float = Field(default=0.0, ge=0.0, description="Quadrature absolute error bound")
    discarded: int = Field(default=0, ge=0, description="Samples dropped inside the boundary band")

    @model_validator(mode="after")
    def _check_stderr(self):
        if self.method != EstimateMethod.MONTE_CARLO and self.stderr != 0.0:
            raise ValueError(f"{self.method.value} estimates carry no standard error")
        return self

    @classmethod
    def from_hits(cls, hits: int, samples: int, discarded: int = 0) -> "ProbabilityEstimate":
        if samples <= 0:
            raise ValueError("no samples left to form an estimate")
        p = hits / samples
        return cls(value=p, stderr=math.sqrt(p * (1.0 - p) / samples), samples=samples,
                   method=EstimateMethod.MONTE_CARLO, discarded=discarded)


def box_sum_probability(m: int) -> Fraction:
    """P(a + b in {-m..m}) for a, b independent uniform on {-m..m}, by exact convolution"""
    if m < 0:
        raise ValueError(f"m must be non-negative, got {m}")
    side = np.ones(2 * m + 1, dtype=np.int64)
    sums = np.convolve(side, side)  # index i is the sum i - 2m
    inside = int(sums[m:3 * m + 1].sum())
    return Fraction(inside, (2 * m + 1) ** 2)


def sample_unit_sphere(D: int, rng: np.random.Generator, size: Optional[int] = None) -> np.ndarray:
    """Uniform points of S^{D-1}: normalized isotropic Gaussians"""
    if D < 1:
        raise ValueError(f"D must be >= 1, got {D}")
    shape = (1 if size is None else size, D)
    g = rng.standard_normal(shape)
    norms = np.linalg.norm(g, axis=1)
    # A zero Gaussian has probability zero; redraw to keep the output on the sphere.
    while np.any(norms == 0.0):
        zero = norms == 0.0
        g[zero] = rng.standard_normal((int(zero.sum()), D))
        norms = np.linalg.norm(g, axis=1)
    points = g / norms[:, None]
    return points[0] if size is None else points


def sample_unit_ball(D: int, rng: np.random.Generator, size: Optional[int] = None) -> np.ndarray:
    """Uniform points of the unit ball: a sphere point scaled by U^{1/D}"""
    directions = sample_unit_sphere(D, rng, 1 if size is None else size)
    radii = rng.random(len(directions)) ** (1.0 / D)
    points = directions * radii[:, None]
    return points[0] if size is None else points


def _chunk_sizes(samples: int):
    full, rest = divmod(samples, CHUNK_SAMPLES)
    return [CHUNK_SAMPLES] * full + ([rest] if rest else [])


def _ball_chunk(task) -> int:
    D, size, seed = task
    rng = np.random.default_rng(seed)
    x = sample_unit_ball(D, rng, size)
    y = sample_unit_ball(D, rng, size)
    s = x + y
    return int(np.count_nonzero(np.einsum("ij,ij->i", s, s) <= 1.0))


def mc_ball_closure(D: int, samples: Optional[int] = None, seed: int = 0, threads: int = 1) -> ProbabilityEstimate:
    """Monte-Carlo estimate of P(x + y in B) for independent uniform x, y in the unit ball B"""
    if D < 1:
        raise ValueError(f"D must be >= 1, got {D}")
    samples = config.DEFAULT_SAMPLES if samples is None else samples
    if samples < 1:
        raise ValueError(f"samples must be positive, got {samples}")

    sizes = _chunk_sizes(samples)
    tasks = [(D, size, child) for size, child in zip(sizes, derive_seeds(seed, len(sizes)))]
    hits = sum(ordered_map(_ball_chunk, tasks, threads))
    estimate = ProbabilityEstimate.from_hits(hits, samples)
    logging.debug(f"Ball closure D={D}: {estimate.value:.6f} +- {estimate.stderr:.2e} over {samples} samples")
    return estimate


def _sphere_chunk(task) -> Tuple[int, int]:
    D, size, seed = task
    rng = np.random.default_rng(seed)
    u = sample_unit_sphere(D, rng, size)
    v = sample_unit_sphere(D, rng, size)
    dots = np.einsum("ij,ij->i", u, v)
    s = u + v
    by_norm = np.einsum("ij,ij->i", s, s) <= 1.0
    by_dot = dots <= -0.5

    # ||u + v||^2 = 2 + 2 <u, v> on the sphere, so the two tests must agree off the band.
    band = np.abs(dots + 0.5) < BOUNDARY_BAND
    mismatch = (by_norm != by_dot) & ~band
    if mismatch.any():
        index = int(np.nonzero(mismatch)[0][0])
        raise NumericalIdentityError(f"norm and dot-product tests disagree at <u, v> = {dots[index]!r} "
                                     f"(D={D}, chunk seed {seed})")
    kept = ~band
    return int(np.count_nonzero(by_dot & kept)), int(np.count_nonzero(band))


def mc_sphere_closure(D: int, samples: Optional[int] = None, seed: int = 0, threads: int = 1) -> ProbabilityEstimate:
    """Monte-Carlo estimate of P(<u, v> <= -1/2) for independent uniform u, v on S^{D-1}.

    Every sample also checks [||u + v|| <= 1] == [<u, v> <= -1/2]; samples within the
    boundary band are discarded and counted.
    """
    if D < 2:
        raise ValueError(f"D must be >= 2, got {D}")
    samples = config.DEFAULT_SAMPLES if samples is None else samples
    if samples < 1:
        raise ValueError(f"samples must be positive, got {samples}")

    sizes = _chunk_sizes(samples)
    tasks = [(D, size, child) for size, child in zip(sizes, derive_seeds(seed, len(sizes)))]
    outcomes = ordered_map(_sphere_chunk, tasks, threads)
    hits = sum(h for h, _ in outcomes)
    discarded = sum(d for _, d in outcomes)
    if discarded:
        logging.warning(f"Sphere closure D={D}: discarded {discarded} samples inside the boundary band")
    return ProbabilityEstimate.from_hits(hits, samples - discarded, discarded)
