"""Constrained multi-objective benchmark problems and sampling utilities.

All shipped problems minimize M objectives subject to p inequality
constraints g_j(x) <= 0 over a box; the aggregate violation of a solution is
the sum of positive constraint parts and feasibility means exactly zero
violation.  Reference fronts are plain-text tables bundled with the package;
`scripts/generate_fronts.py` regenerates them from the analytic front
descriptions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from . import _dascmop, _lircmop, _mw


@dataclass(frozen=True)
class ProblemDefinition:
    """A box-constrained CMOP with a deterministic batch evaluator."""

    name: str
    n: int
    m: int
    p: int
    lower: np.ndarray
    upper: np.ndarray
    evaluator: object  # callable (k, n) -> ((k, m), (k, p))
    metadata: dict = field(default_factory=dict)


@dataclass(frozen=True)
class EvaluatedSolution:
    """A truly evaluated decision vector with objectives and violations."""

    x: np.ndarray
    f: np.ndarray
    g: np.ndarray
    cv: float
    feasible: bool
    eval_index: int


@dataclass(frozen=True)
class ReferenceFront:
    """Mutually non-dominated approximation of a problem's true front."""

    points: np.ndarray

    @property
    def size(self) -> int:
        return self.points.shape[0]

    @property
    def ideal(self) -> np.ndarray:
        return self.points.min(axis=0)

    @property
    def nadir(self) -> np.ndarray:
        return self.points.max(axis=0)


_SUITES = {
    "MW": (_mw.make, range(1, 15)),
    "LIRCMOP": (_lircmop.make, range(1, 15)),
    "DASCMOP": (_dascmop.make, range(1, 10)),
}


def problem_names() -> list[str]:
    names = []
    for prefix, (_, idxs) in _SUITES.items():
        names.extend(f"{prefix}{i}" for i in idxs)
    return names


def get_problem(name: str, dim: int = 10) -> ProblemDefinition:
    """Instantiate a suite problem by name (case-insensitive)."""
    canonical = name.strip().upper()
    for prefix, (factory, idxs) in _SUITES.items():
        if canonical.startswith(prefix):
            suffix = canonical[len(prefix):]
            if suffix.isdigit() and int(suffix) in idxs:
                fields = factory(int(suffix), dim)
                return ProblemDefinition(name=f"{prefix}{int(suffix)}", **fields)
    raise LookupError(f"unknown problem: {name!r}")


def evaluate_batch(problem: ProblemDefinition, x: np.ndarray):
    """Evaluate a (k, n) batch of in-bounds points; returns (F, G)."""
    x = np.atleast_2d(np.asarray(x, dtype=np.float64))
    if x.shape[1] != problem.n:
        raise ValueError(f"expected {problem.n} variables, got {x.shape[1]}")
    if np.any(x < problem.lower) or np.any(x > problem.upper):
        raise ValueError("decision vector outside problem bounds")
    f, g = problem.evaluator(x)
    return np.asarray(f, dtype=np.float64), np.asarray(g, dtype=np.float64)


def evaluate(problem: ProblemDefinition, x: np.ndarray, eval_index: int = 0) -> EvaluatedSolution:
    """Evaluate a single decision vector."""
    f, g = evaluate_batch(problem, np.asarray(x, dtype=np.float64)[None, :])
    f, g = f[0], g[0]
    cv = float(np.maximum(g, 0.0).sum())
    return EvaluatedSolution(
        x=np.array(x, dtype=np.float64),
        f=f,
        g=g,
        cv=cv,
        feasible=(cv == 0.0),
        eval_index=eval_index,
    )


def lhs_sample(count: int, problem: ProblemDefinition, rng: np.random.Generator) -> np.ndarray:
    """Latin hypercube sample: one point per equal-width stratum per dimension."""
    if count < 1:
        raise ValueError("count must be >= 1")
    n = problem.n
    u = np.empty((count, n))
    for d in range(n):
        perm = rng.permutation(count)
        u[:, d] = (perm + rng.random(count)) / count
    return problem.lower + u * (problem.upper - problem.lower)


def load_reference_front(name: str, size: int = 1000) -> ReferenceFront:
    """Load the bundled front for a problem, subsampled to ~`size` points."""
    canonical = name.strip().upper()
    fname = f"{canonical.lower()}.txt"
    pkg_files = resources.files(__package__) / "fronts" / fname
    try:
        text = pkg_files.read_text()
    except (FileNotFoundError, OSError) as exc:
        raise LookupError(f"no reference front available for {name!r}") from exc
    pts = np.loadtxt(text.splitlines())
    pts = np.atleast_2d(pts)
    if size < pts.shape[0]:
        idx = np.unique(np.linspace(0, pts.shape[0] - 1, size).round().astype(int))
        pts = pts[idx]
    return ReferenceFront(points=pts)
