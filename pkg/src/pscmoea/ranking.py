"""Ordering utilities: non-dominated sorting, rank correlation, ablation rankings.

The two ablation rankings replace the probability-of-constrained-domination
scoring inside reference-vector clusters: a lexicographic feasibility-first
scheme (v1) and a feasibility-times-dominance product score (v2).
"""

from __future__ import annotations

import numpy as np
from scipy import stats

from . import kernels
from .decomposition import nd_mask

V1_POF_THRESHOLD = 0.99


def nondominated_sort(f: np.ndarray) -> np.ndarray:
    """Front ranks (1-based): rank 1 is the ND set, rank k the ND set after
    removing ranks below k."""
    f = np.atleast_2d(np.asarray(f, dtype=np.float64))
    n = f.shape[0]
    ranks = np.zeros(n, dtype=np.int64)
    remaining = np.arange(n)
    rank = 0
    while remaining.size:
        rank += 1
        mask = nd_mask(f[remaining])
        ranks[remaining[mask]] = rank
        remaining = remaining[~mask]
    return ranks


def kendall_tau(rank_a, rank_b) -> float:
    """Tie-corrected Kendall rank correlation (tau-b); 0 for all-tied input."""
    rank_a = np.asarray(rank_a)
    rank_b = np.asarray(rank_b)
    if rank_a.shape != rank_b.shape or rank_a.size < 2:
        raise ValueError("rank vectors must have equal length >= 2")
    tau = stats.kendalltau(rank_a, rank_b, variant="b").statistic
    if np.isnan(tau):
        return 0.0
    return float(tau)


def _mean_pairwise_pd(mean, var, projected: bool) -> np.ndarray:
    """Mean pairwise probabilistic-dominance score of each member vs the rest."""
    k = np.asarray(mean).shape[0]
    if k == 1:
        return np.ones(1)
    if projected:
        offsets = np.array([0, k], dtype=np.int64)
        zeros = np.zeros(k)
        return np.asarray(
            kernels.selection_scores(offsets, zeros, zeros, zeros, mean, var, False)
        )
    return np.asarray(kernels.pairwise_scores_full(np.zeros(k), np.zeros(k), np.zeros(k), mean, var, False))


def rank_v1(pof_factors, g_mean, cv_mean, obj_mean, obj_var, projected: bool) -> np.ndarray:
    """Lexicographic feasibility-first ordering of a cluster (best first).

    Members whose every per-constraint feasibility probability reaches the
    threshold form the feasible block, sorted by mean pairwise dominance;
    the rest sort by feasibility product, satisfied-constraint count (mean
    prediction <= 0), then predicted mean violation.
    """
    pof_factors = np.atleast_2d(np.asarray(pof_factors, dtype=np.float64))
    k = pof_factors.shape[0]
    idx = np.arange(k)
    feas = np.all(pof_factors >= V1_POF_THRESHOLD, axis=1)
    obj_mean = np.asarray(obj_mean, dtype=np.float64)
    obj_var = np.asarray(obj_var, dtype=np.float64)

    feas_idx = idx[feas]
    if feas_idx.size:
        pd_scores = _mean_pairwise_pd(obj_mean[feas_idx], obj_var[feas_idx], projected)
        feas_idx = feas_idx[np.argsort(-pd_scores, kind="stable")]

    inf_idx = idx[~feas]
    if inf_idx.size:
        pof = np.prod(pof_factors[inf_idx], axis=1)
        ns = np.sum(np.atleast_2d(g_mean)[inf_idx] <= 0.0, axis=1)
        cvm = np.asarray(cv_mean, dtype=np.float64)[inf_idx]
        order = np.lexsort((inf_idx, cvm, -ns, -pof))
        inf_idx = inf_idx[order]

    return np.concatenate([feas_idx, inf_idx])


def rank_v2(pof, obj_mean, obj_var, projected: bool) -> np.ndarray:
    """Ordering by feasibility-probability times mean pairwise dominance."""
    pof = np.asarray(pof, dtype=np.float64)
    scores = pof * _mean_pairwise_pd(np.asarray(obj_mean), np.asarray(obj_var), projected)
    return np.argsort(-scores, kind="stable")
