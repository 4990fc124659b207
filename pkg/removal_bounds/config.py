# removal-bounds: graphs where every edge lies in exactly one triangle
#
# This project is open-sourced under the MIT License. For details, please see the LICENSE file.

# Runtime configuration. Every value can be overridden from the environment or a .env file
# placed at the project root.
import os
from pathlib import Path
from dotenv import load_dotenv

# Project root (the directory holding pyproject.toml)
ROOT_DIR = Path(__file__).parent.parent

# Load environment variables from root .env file
load_dotenv(ROOT_DIR / '.env')


def _int_env(name: str, default: int) -> int:
    value = os.getenv(name)
    if value is None or value.strip() == "":
        return default
    try:
        return int(value)
    except ValueError:
        raise ValueError(f"Environment variable {name} must be an integer, got {value!r}")


# Resource budgets
ENUMERATION_BUDGET = _int_env('RB_ENUMERATION_BUDGET', 4_000_000)
PAIR_BUDGET = _int_env('RB_PAIR_BUDGET', 400_000_000)
TRIPLE_BRUTE_BUDGET = _int_env('RB_TRIPLE_BRUTE_BUDGET', 2_000_000)

# Sampling defaults
DEFAULT_SAMPLES = _int_env('RB_DEFAULT_SAMPLES', 1_000_000)
SHIFT_TRIALS = _int_env('RB_SHIFT_TRIALS', 64)
TARGET_SAMPLES = _int_env('RB_TARGET_SAMPLES', 200_000)
SAMPLED_EDGES = _int_env('RB_SAMPLED_EDGES', 2_000)

# Execution
THREADS = _int_env('RB_THREADS', 1)
LOG_LEVEL = os.getenv('RB_LOG_LEVEL', 'INFO')


def validate_config():
    """Validate that all numeric settings are positive"""
    settings = {
        'RB_ENUMERATION_BUDGET': ENUMERATION_BUDGET,
        'RB_PAIR_BUDGET': PAIR_BUDGET,
        'RB_TRIPLE_BRUTE_BUDGET': TRIPLE_BRUTE_BUDGET,
        'RB_DEFAULT_SAMPLES': DEFAULT_SAMPLES,
        'RB_SHIFT_TRIALS': SHIFT_TRIALS,
        'RB_TARGET_SAMPLES': TARGET_SAMPLES,
        'RB_SAMPLED_EDGES': SAMPLED_EDGES,
        'RB_THREADS': THREADS,
    }

    invalid_vars = [name for name, value in settings.items() if value <= 0]

    if invalid_vars:
        raise ValueError(f"Non-positive configuration values: {', '.join(invalid_vars)}")
