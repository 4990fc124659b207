# removal-bounds: graphs where every edge lies in exactly one triangle
#
# This project is open-sourced under the MIT License. For details, please see the LICENSE file.

# The density of <u, v> for uniform unit vectors, and the integrals bounding the sphere closure.

import logging
import math
import warnings
from typing import NamedTuple, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy import integrate
from scipy.special import gammaln

from removal_bounds.errors import NumericalIdentityError, QuadratureError
from removal_bounds.probability.estimates import EstimateMethod, ProbabilityEstimate, mc_ball_closure

ABS_TOLERANCE = 1e-9
QUAD_LIMIT = 1000


def _check_dim(D: int) -> None:
    if D < 2:
        raise ValueError(f"D must be >= 2, got {D}")


def _dot_prefactor(D: int) -> float:
    """Gamma(D/2) / (sqrt(pi) Gamma((D-1)/2))"""
    _check_dim(D)
    return math.exp(gammaln(D / 2) - 0.5 * math.log(math.pi) - gammaln((D - 1) / 2))


def dot_pdf(D: int, r):
    """Density of <u, v> for independent uniform u, v on S^{D-1}; zero for |r| >= 1"""
    prefactor = _dot_prefactor(D)
    r = np.asarray(r, dtype=np.float64)
    inside = np.abs(r) < 1.0
    safe = np.where(inside, r, 0.0)
    values = np.where(inside, prefactor * np.exp((D - 3) / 2 * np.log1p(-safe * safe)), 0.0)
    return float(values) if values.ndim == 0 else values


class QuadResult(NamedTuple):
    value: float
    error: float


def _quad(func, a: float, b: float, epsabs: float = 1e-13, epsrel: float = 1e-12, **kwargs) -> QuadResult:
    """scipy quad with integration warnings turned into QuadratureError"""
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            value, error = integrate.quad(func, a, b, epsabs=epsabs, epsrel=epsrel, limit=QUAD_LIMIT, **kwargs)
        except integrate.IntegrationWarning as e:
            raise QuadratureError(f"quadrature on [{a}, {b}] did not converge: {e}")
    if not math.isfinite(value):
        raise QuadratureError(f"quadrature on [{a}, {b}] returned {value}")
    return QuadResult(value, error)


def _alg_integral(D: int, a: float, b: float, right_exponent: float) -> QuadResult:
    """Integral of the dot density over [a, b] with the (1 + r)^k factor as an algebraic weight"""
    k = (D - 3) / 2
    if a == -1.0 and b == 1.0:
        result = _quad(lambda r: 1.0, a, b, weight="alg", wvar=(k, k))
    else:
        result = _quad(lambda r: (1.0 - r) ** right_exponent, a, b, weight="alg", wvar=(k, 0.0))
    prefactor = _dot_prefactor(D)
    return QuadResult(prefactor * result.value, prefactor * result.error)


def pdf_normalization(D: int) -> float:
    """Integral of dot_pdf(D, .) over [-1, 1]"""
    _check_dim(D)
    return _alg_integral(D, -1.0, 1.0, 0.0).value


def exact_sphere_closure(D: int) -> ProbabilityEstimate:
    """P(<u, v> <= -1/2) as the integral of the dot density over [-1, -1/2]"""
    _check_dim(D)
    result = _alg_integral(D, -1.0, -0.5, (D - 3) / 2)
    if result.error > ABS_TOLERANCE:
        raise QuadratureError(f"sphere closure for D={D}: error estimate {result.error:.2e} above {ABS_TOLERANCE}")
    value = min(max(result.value, 0.0), 1.0)
    return ProbabilityEstimate(value=value, samples=0, method=EstimateMethod.QUADRATURE,
                               error_bound=max(result.error, 0.0))


class LowerBoundIntegral(NamedTuple):
    value: float
    error: float
    window_bound: float
    final_bound: float
    printed_bound: float
    printed_holds: bool


def lower_bound_integral(D: int) -> LowerBoundIntegral:
    """The integral of (1 - r^2)^{D/2} over [-1, -1/2], with its elementary lower bounds.

    window_bound is (1/D)(1 - (1/2 + 1/D)^2)^{D/2}, the integrand minimum over the last
    width-1/D window times its width; final_bound is (1/D)(3/4 - 1/D)^{D/2}. Both are
    asserted. printed_bound, (1/D)(1 - (1/D - 1/2)^2)^{D/2}, is only reported.

    Raises:
        NumericalIdentityError: the value falls below window_bound or final_bound.
    """
    _check_dim(D)
    half = D / 2
    # Relative tolerance only: the integral is of order (3/4)^{D/2} / D.
    result = _quad(lambda r: (1.0 - r * r) ** half, -1.0, -0.5, epsabs=0.0, epsrel=1e-10)

    window_bound = (1 / D) * max(1 - (0.5 + 1 / D) ** 2, 0.0) ** half
    final_bound = (1 / D) * max(0.75 - 1 / D, 0.0) ** half
    printed_bound = (1 / D) * (1 - (1 / D - 0.5) ** 2) ** half

    slack = result.error + 1e-15
    for name, bound in (("window", window_bound), ("final", final_bound)):
        if result.value + slack < bound:
            raise NumericalIdentityError(f"D={D}: integral {result.value!r} below the {name} bound {bound!r}")
    return LowerBoundIntegral(value=result.value, error=result.error, window_bound=window_bound,
                              final_bound=final_bound, printed_bound=printed_bound,
                              printed_holds=result.value + slack >= printed_bound)


class LemmaChain(BaseModel):
    """Every link of the ball-closure lower-bound chain, evaluated for one D"""
    model_config = ConfigDict(frozen=True)

    D: int
    sphere_closure: float = Field(description="P(<u, v> <= -1/2), by quadrature")
    lower_integral: float = Field(description="Integral of (1 - r^2)^{D/2} over [-1, -1/2]")
    final_bound: float = Field(description="(1/D)(3/4 - 1/D)^{D/2}")
    normalized_closure: float = Field(description="sphere_closure * sqrt(D) * (4/3)^{D/2}")
    pdf_dominates: Optional[bool] = Field(default=None, description="f_R >= (1/sqrt(pi))(1 - r^2)^{D/2} on "
                                                                    "[-1, -1/2]; set for D >= 5")
    closure_above_integral: Optional[bool] = Field(default=None, description="sphere_closure >= lower_integral "
                                                                             "/ sqrt(pi); set for D >= 5")
    integral_above_final: bool
    printed_middle_holds: bool
    ball_closure: Optional[float] = None
    ball_stderr: Optional[float] = None
    ball_above_sphere: Optional[bool] = Field(default=None, description="ball closure >= sphere closure - 4 stderr")


def lemma_chain(D: int, samples: Optional[int] = None, seed: int = 0, threads: int = 1) -> LemmaChain:
    """Evaluate the chain ball closure >= sphere closure >= c * integral >= (1/D)(3/4 - 1/D)^{D/2}.

    The Monte-Carlo ball link is only evaluated when samples is given.
    """
    _check_dim(D)
    sphere = exact_sphere_closure(D)
    lower = lower_bound_integral(D)

    pdf_dominates = closure_above_integral = None
    if D >= 5:
        # (1 - r^2)^{3/2} peaks at (3/4)^{3/2} on [-1, -1/2]
        pdf_dominates = _dot_prefactor(D) * math.sqrt(math.pi) >= 0.75 ** 1.5
        closure_above_integral = sphere.value + sphere.error_bound >= lower.value / math.sqrt(math.pi)

    ball = None
    if samples is not None:
        ball = mc_ball_closure(D, samples, seed, threads)

    chain = LemmaChain(
        D=D,
        sphere_closure=sphere.value,
        lower_integral=lower.value,
        final_bound=lower.final_bound,
        normalized_closure=sphere.value * math.sqrt(D) * (4 / 3) ** (D / 2),
        pdf_dominates=pdf_dominates,
        closure_above_integral=closure_above_integral,
        integral_above_final=lower.value + lower.error >= lower.final_bound,
        printed_middle_holds=lower.printed_holds,
        ball_closure=None if ball is None else ball.value,
        ball_stderr=None if ball is None else ball.stderr,
        ball_above_sphere=None if ball is None else ball.value >= sphere.value - 4 * ball.stderr,
    )
    logging.debug(f"Chain D={D}: {chain.model_dump()}")
    return chain
