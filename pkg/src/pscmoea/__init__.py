"""Probabilistic-selection surrogate-assisted constrained multi-objective optimizer."""

from .kernels import BACKEND as KERNEL_BACKEND
from .optimizer import OptimizerConfig, RunResult, run
from .problems import get_problem, load_reference_front, problem_names
from .subea import SubEAConfig

__version__ = "0.1.0"

__all__ = [
    "KERNEL_BACKEND",
    "OptimizerConfig",
    "RunResult",
    "run",
    "get_problem",
    "load_reference_front",
    "problem_names",
    "SubEAConfig",
    "__version__",
]
