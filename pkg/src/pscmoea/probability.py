"""Probabilistic comparison layer built on Gaussian surrogate predictions.

Provides the probability of feasibility, probabilistic dominance, rectified
Gaussian constraint-violation distributions and the three-term probability
of constrained domination used for ranking candidates under uncertainty.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels


@dataclass(frozen=True)
class GaussianScalar:
    """A scalar Gaussian belief (mean, variance)."""

    mean: float
    variance: float

    def __post_init__(self):
        if self.variance < 0.0:
            raise ValueError(f"negative variance: {self.variance}")


def erf(x: float) -> float:
    """Standard error function."""
    return kernels.erf(x)


def pof(constraints: list[GaussianScalar]) -> float:
    """Probability that all constraint beliefs are <= 0.

    Product of per-constraint normal CDF terms; a zero-variance constraint
    contributes an indicator of its mean being non-positive.
    """
    if not constraints:
        raise ValueError("at least one constraint distribution required")
    mu = np.array([[g.mean for g in constraints]])
    var = np.array([[g.variance for g in constraints]])
    return float(kernels.pof_batch(mu, var)[0])


def prob_dominance(x: list[GaussianScalar], y: list[GaussianScalar]) -> float:
    """Probability that x dominates y across all objective beliefs."""
    if len(x) != len(y) or not x:
        raise ValueError("objective lists must be nonempty and equal length")
    return float(
        kernels.pd_full(
            np.array([g.mean for g in x]),
            np.array([g.variance for g in x]),
            np.array([g.mean for g in y]),
            np.array([g.variance for g in y]),
        )
    )


def rectified_moments(mu: float, sigma: float) -> GaussianScalar:
    """Moments of max(0, N(mu, sigma^2)) truncated at mu + 6*sigma."""
    m, v = kernels.rectified_moments(mu, sigma)
    return GaussianScalar(m, v)


def cv_distribution(constraints: list[GaussianScalar]) -> GaussianScalar:
    """Gaussian belief over total constraint violation.

    Sum of per-constraint rectified moments, constraints assumed independent.
    """
    if not constraints:
        raise ValueError("at least one constraint distribution required")
    mu = np.array([[g.mean for g in constraints]])
    var = np.array([[g.variance for g in constraints]])
    cm, cv = kernels.cv_moments_batch(mu, var)
    return GaussianScalar(float(cm[0]), float(cv[0]))


def prob_cv_less(cv_x: GaussianScalar, cv_y: GaussianScalar) -> float:
    """Probability that the violation of x is below that of y."""
    return kernels.prob_less(cv_x.mean, cv_x.variance, cv_y.mean, cv_y.variance)


@dataclass
class SolutionSummary:
    """Per-solution probabilistic summary derived from one surrogate model set."""

    objectives: list[GaussianScalar]
    constraints: list[GaussianScalar]
    pof: float = field(init=False)
    cv: GaussianScalar = field(init=False)
    projected: GaussianScalar | None = None

    def __post_init__(self):
        self.pof = pof(self.constraints)
        self.cv = cv_distribution(self.constraints)


def pcd(x: SolutionSummary, y: SolutionSummary, view: str = "full") -> float:
    """Probability of constrained domination of x over y.

    Three terms: x feasible while y is not, both feasible and x dominating,
    both infeasible and x less violating.  The dominance term uses the
    RV-projected scalar when view == "projected" (both summaries must carry
    one), the full objective vector otherwise.
    """
    if view == "projected":
        if x.projected is None or y.projected is None:
            raise ValueError("projected view requires projected distributions")
        pd = kernels.prob_less(
            x.projected.mean, x.projected.variance, y.projected.mean, y.projected.variance
        )
    else:
        pd = prob_dominance(x.objectives, y.objectives)
    return (
        x.pof * (1.0 - y.pof)
        + x.pof * y.pof * pd
        + (1.0 - x.pof) * (1.0 - y.pof) * prob_cv_less(x.cv, y.cv)
    )
