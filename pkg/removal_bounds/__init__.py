# removal-bounds: graphs where every edge lies in exactly one triangle
#
# This project is open-sourced under the MIT License. For details, please see the LICENSE file.

__version__ = "0.1.0"

from removal_bounds.errors import (
    BudgetExceededError,
    DimensionMismatchError,
    GraphFormatError,
    NumericalIdentityError,
    OutOfRangeError,
    QuadratureError,
    RemovalBoundsError,
    VerificationError,
)
from removal_bounds.pipeline import PipelineConfig, PipelineResult, run_pipeline, sweep

__all__ = ['BudgetExceededError', 'DimensionMismatchError', 'GraphFormatError', 'NumericalIdentityError',
           'OutOfRangeError', 'QuadratureError', 'RemovalBoundsError', 'VerificationError', 'PipelineConfig',
           'PipelineResult', 'run_pipeline', 'sweep']
