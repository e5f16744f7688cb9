"""Front-quality indicators and run accounting.

IGD, its dominance-modified variant, hypervolume (sweep for two objectives,
slicing for three), first-feasible-evaluation tracking, the penalty fill
for runs that never reached feasibility, a tie-corrected rank-sum test and
performance-profile curves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import stats

from .decomposition import nd_mask


def normalize_objectives(points: np.ndarray, ideal: np.ndarray, nadir: np.ndarray) -> np.ndarray:
    """Scale objective vectors by a true ideal/nadir pair."""
    rng = np.asarray(nadir, dtype=np.float64) - np.asarray(ideal, dtype=np.float64)
    rng = np.where(rng > 0.0, rng, 1.0)
    return (np.asarray(points, dtype=np.float64) - ideal) / rng


def igd(solutions: np.ndarray, reference: np.ndarray) -> float:
    """Mean distance from each reference point to its nearest solution."""
    solutions = np.atleast_2d(np.asarray(solutions, dtype=np.float64))
    reference = np.atleast_2d(np.asarray(reference, dtype=np.float64))
    if solutions.shape[0] == 0:
        raise ValueError("empty solution set; apply the infeasible-run penalty instead")
    diff = reference[:, None, :] - solutions[None, :, :]
    d = np.sqrt(np.sum(diff * diff, axis=2))
    return float(np.mean(d.min(axis=1)))


def igd_plus(solutions: np.ndarray, reference: np.ndarray) -> float:
    """IGD with dominance-clipped distances max(a_i - r_i, 0)."""
    solutions = np.atleast_2d(np.asarray(solutions, dtype=np.float64))
    reference = np.atleast_2d(np.asarray(reference, dtype=np.float64))
    if solutions.shape[0] == 0:
        raise ValueError("empty solution set; apply the infeasible-run penalty instead")
    diff = np.maximum(solutions[None, :, :] - reference[:, None, :], 0.0)
    d = np.sqrt(np.sum(diff * diff, axis=2))
    return float(np.mean(d.min(axis=1)))


def _hv2(points: np.ndarray, ref: np.ndarray) -> float:
    mask = np.all(points < ref, axis=1)
    pts = points[mask]
    if pts.shape[0] == 0:
        return 0.0
    pts = pts[nd_mask(pts)]
    order = np.argsort(pts[:, 0], kind="stable")
    pts = pts[order]
    hv = 0.0
    for i in range(pts.shape[0]):
        right = pts[i + 1, 0] if i + 1 < pts.shape[0] else ref[0]
        hv += (right - pts[i, 0]) * (ref[1] - pts[i, 1])
    return hv


def _hv3(points: np.ndarray, ref: np.ndarray) -> float:
    mask = np.all(points < ref, axis=1)
    pts = points[mask]
    if pts.shape[0] == 0:
        return 0.0
    zs = np.unique(pts[:, 2])
    hv = 0.0
    for i, z in enumerate(zs):
        nxt = zs[i + 1] if i + 1 < zs.size else ref[2]
        active = pts[pts[:, 2] <= z][:, :2]
        hv += _hv2(active, ref[:2]) * (nxt - z)
    return hv


def hypervolume(solutions: np.ndarray, reference_point=None) -> float:
    """Dominated volume w.r.t. the reference point (default 1.1 per axis)."""
    solutions = np.atleast_2d(np.asarray(solutions, dtype=np.float64))
    m = solutions.shape[1]
    ref = np.full(m, 1.1) if reference_point is None else np.asarray(reference_point, dtype=np.float64)
    if solutions.shape[0] == 0:
        return 0.0
    if m == 2:
        return _hv2(solutions, ref)
    if m == 3:
        return _hv3(solutions, ref)
    raise ValueError("hypervolume implemented for 2 or 3 objectives")


def ffe_st(feasible_by_index: np.ndarray, fe_max: int):
    """First-feasible evaluation index and success flag.

    `feasible_by_index` is ordered by evaluation index (1-based positions).
    Runs with no feasible evaluation report (fe_max, False).
    """
    feasible_by_index = np.asarray(feasible_by_index, dtype=bool)
    hits = np.flatnonzero(feasible_by_index)
    if hits.size == 0:
        return fe_max, False
    return min(int(hits[0]) + 1, fe_max), True


def penalize_infeasible_runs(matrix: np.ndarray, metric: str = "igd") -> np.ndarray:
    """Fill missing (NaN) entries of an algorithms-by-runs metric matrix.

    Missing IGD-family entries become the worst observed value plus 0.1;
    missing hypervolume entries the worst observed minus 0.1, floored at 0.
    """
    out = np.array(matrix, dtype=np.float64)
    if np.all(np.isnan(out)):
        raise ValueError("no observed values to derive the penalty from")
    if metric == "hv":
        worst = np.nanmin(out)
        fill = max(worst - 0.1, 0.0)
    else:
        worst = np.nanmax(out)
        fill = worst + 0.1
    out[np.isnan(out)] = fill
    return out


def wilcoxon_ranksum(sample_a, sample_b, alpha: float = 0.05):
    """Two-sided rank-sum test with tie-corrected normal approximation.

    Returns (outcome, p_value) where outcome is "win"/"tie"/"loss" for
    sample_a under a minimized metric, direction decided by medians.
    """
    a = np.asarray(sample_a, dtype=np.float64)
    b = np.asarray(sample_b, dtype=np.float64)
    if a.size < 5 or b.size < 5:
        raise ValueError("samples of size >= 5 required")
    combined = np.concatenate([a, b])
    n1, n2 = a.size, b.size
    n = n1 + n2
    ranks = stats.rankdata(combined)
    w = float(ranks[:n1].sum())
    mu = n1 * (n + 1) / 2.0
    _, counts = np.unique(combined, return_counts=True)
    tie_term = float(np.sum(counts**3 - counts)) / (n * (n - 1))
    var = n1 * n2 / 12.0 * ((n + 1) - tie_term)
    if var <= 0.0:
        return "tie", 1.0
    z = (abs(w - mu) - 0.5) / math.sqrt(var)
    z = max(z, 0.0)
    p = math.erfc(z / math.sqrt(2.0))
    if p >= alpha:
        return "tie", p
    med_a, med_b = float(np.median(a)), float(np.median(b))
    if med_a < med_b:
        return "win", p
    if med_a > med_b:
        return "loss", p
    return "tie", p


@dataclass(frozen=True)
class PerformanceProfile:
    """Per-algorithm performance-ratio curves over a set of instances."""

    ratios: np.ndarray  # (instances, algorithms)

    def curve(self, algo: int):
        rs = np.sort(self.ratios[:, algo])
        rho = np.arange(1, rs.size + 1) / rs.size
        return rs, rho


def performance_profile(values: np.ndarray) -> PerformanceProfile:
    """Ratios to the per-instance best; nonpositive inputs are shifted first."""
    vals = np.array(values, dtype=np.float64)
    if vals.ndim != 2 or vals.size == 0:
        raise ValueError("expected a nonempty (instances, algorithms) matrix")
    gmin = vals.min()
    if gmin <= 0.0:
        vals = vals + (1.0 - gmin)
    best = vals.min(axis=1)
    return PerformanceProfile(ratios=vals / best[:, None])
