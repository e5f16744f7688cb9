"""Surrogate-space evolutionary search with probabilistic environmental selection.

Operates entirely in the normalized decision cube; only the returned
candidates are mapped back to problem bounds by the caller.  Selection
repeats assignment/projection/scoring rounds until every reference vector
has contributed a best solution or the pool is exhausted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels, ranking
from .decomposition import NormalizationBounds, ReferenceVectorSet, normalize, project_batch


@dataclass(frozen=True)
class SubEAConfig:
    n_pop: int = 100
    n_gen: int = 100
    p_c: float = 0.9
    p_m: float = 0.1
    eta_c: float = 10.0
    eta_m: float = 20.0
    alpha: float = 0.2
    dup_tol: float = 1e-4


@dataclass
class PredictedPopulation:
    """Struct-of-arrays container for model-evaluated individuals."""

    x: np.ndarray
    fmean: np.ndarray
    fvar: np.ndarray
    gmean: np.ndarray
    gvar: np.ndarray
    pof: np.ndarray = field(init=False)
    pof_factors: np.ndarray = field(init=False)
    cvm: np.ndarray = field(init=False)
    cvv: np.ndarray = field(init=False)
    is_archive: np.ndarray | None = None

    def __post_init__(self):
        self.pof_factors = np.asarray(kernels.pof_factors(self.gmean, self.gvar))
        self.pof = np.prod(self.pof_factors, axis=1)
        cvm, cvv = kernels.cv_moments_batch(self.gmean, self.gvar)
        self.cvm = np.asarray(cvm)
        self.cvv = np.asarray(cvv)
        if self.is_archive is None:
            self.is_archive = np.zeros(self.x.shape[0], dtype=bool)

    def __len__(self):
        return self.x.shape[0]

    def take(self, idx) -> "PredictedPopulation":
        idx = np.asarray(idx)
        return PredictedPopulation(
            x=self.x[idx],
            fmean=self.fmean[idx],
            fvar=self.fvar[idx],
            gmean=self.gmean[idx],
            gvar=self.gvar[idx],
            is_archive=self.is_archive[idx],
        )

    @staticmethod
    def concat(a: "PredictedPopulation", b: "PredictedPopulation") -> "PredictedPopulation":
        return PredictedPopulation(
            x=np.vstack([a.x, b.x]),
            fmean=np.vstack([a.fmean, b.fmean]),
            fvar=np.vstack([a.fvar, b.fvar]),
            gmean=np.vstack([a.gmean, b.gmean]),
            gvar=np.vstack([a.gvar, b.gvar]),
            is_archive=np.concatenate([a.is_archive, b.is_archive]),
        )


@dataclass(frozen=True)
class Candidates:
    """SubEA output: per-reference-vector winners with their predictions."""

    x: np.ndarray
    fmean: np.ndarray
    fvar: np.ndarray
    gmean: np.ndarray
    gvar: np.ndarray
    pof: np.ndarray
    pof_factors: np.ndarray
    cvm: np.ndarray
    cvv: np.ndarray
    rv_index: np.ndarray

    def __len__(self):
        return self.x.shape[0]


def unit_lhs(count: int, dim: int, rng: np.random.Generator) -> np.ndarray:
    u = np.empty((count, dim))
    for d in range(dim):
        perm = rng.permutation(count)
        u[:, d] = (perm + rng.random(count)) / count
    return u


def idr_order(f: np.ndarray, cv: np.ndarray, feasible: np.ndarray, alpha: float, n_pop: int) -> np.ndarray:
    """Infeasibility-driven seeding order.

    The first feasible front leads, then the best ceil(alpha * n_pop)
    least-violating infeasible solutions, then the dominated feasible
    fronts, then the remaining infeasible solutions by violation.
    """
    f = np.atleast_2d(f)
    idx = np.arange(f.shape[0])
    feas_idx = idx[feasible]
    inf_idx = idx[~feasible]
    inf_sorted = inf_idx[np.argsort(cv[inf_idx], kind="stable")]
    k = math.ceil(alpha * n_pop)
    head_inf, tail_inf = inf_sorted[:k], inf_sorted[k:]
    if feas_idx.size:
        ranks = ranking.nondominated_sort(f[feas_idx])
        order = np.argsort(ranks, kind="stable")
        feas_sorted = feas_idx[order]
        sorted_ranks = ranks[order]
        first = feas_sorted[sorted_ranks == 1]
        rest = feas_sorted[sorted_ranks != 1]
    else:
        first = rest = feas_idx
    return np.concatenate([first, head_inf, rest, tail_inf])


def sbx_crossover(p1: np.ndarray, p2: np.ndarray, config: SubEAConfig, rng: np.random.Generator):
    """Simulated binary crossover on paired parents (normalized cube)."""
    p1 = np.atleast_2d(p1)
    p2 = np.atleast_2d(p2)
    npair, n = p1.shape
    mu = rng.random((npair, n))
    beta = np.where(
        mu <= 0.5,
        (2.0 * mu) ** (1.0 / (config.eta_c + 1.0)),
        (2.0 - 2.0 * mu) ** (-1.0 / (config.eta_c + 1.0)),
    )
    beta *= (-1.0) ** rng.integers(0, 2, size=(npair, n))
    beta[rng.random((npair, n)) < 0.5] = 1.0
    beta[rng.random(npair) > config.p_c, :] = 1.0
    mid = (p1 + p2) / 2.0
    halfdiff = (p1 - p2) / 2.0
    c1 = mid + beta * halfdiff
    c2 = mid - beta * halfdiff
    return np.clip(c1, 0.0, 1.0), np.clip(c2, 0.0, 1.0)


def polynomial_mutation(x: np.ndarray, config: SubEAConfig, rng: np.random.Generator) -> np.ndarray:
    """Polynomial mutation with per-variable probability, clipped to the cube."""
    x = np.atleast_2d(x).copy()
    k, n = x.shape
    site = rng.random((k, n)) < config.p_m
    mu = rng.random((k, n))
    em = config.eta_m
    low = site & (mu <= 0.5)
    if np.any(low):
        d = x[low]
        delta = (2.0 * mu[low] + (1.0 - 2.0 * mu[low]) * (1.0 - d) ** (em + 1.0)) ** (
            1.0 / (em + 1.0)
        ) - 1.0
        x[low] = d + delta
    high = site & (mu > 0.5)
    if np.any(high):
        d = x[high]
        delta = 1.0 - (
            2.0 * (1.0 - mu[high]) + 2.0 * (mu[high] - 0.5) * d ** (em + 1.0)
        ) ** (1.0 / (em + 1.0))
        x[high] = d + delta
    return np.clip(x, 0.0, 1.0)


def make_offspring(x: np.ndarray, config: SubEAConfig, rng: np.random.Generator) -> np.ndarray:
    """Random pairing, SBX, then polynomial mutation; returns len(x) children."""
    k = x.shape[0]
    perm = rng.permutation(k)
    if k % 2:
        perm = np.concatenate([perm, perm[-1:]])
    a, b = perm[0::2], perm[1::2]
    c1, c2 = sbx_crossover(x[a], x[b], config, rng)
    children = np.vstack([c1, c2])[:k]
    return polynomial_mutation(children, config, rng)


def replace_duplicates(
    offspring: np.ndarray,
    population_x: np.ndarray,
    archive_x: np.ndarray,
    tol: float,
    rng: np.random.Generator,
    retries: int = 100,
) -> np.ndarray:
    """Resample offspring lying within `tol` of a parent or archive point."""
    ref = np.vstack([population_x, archive_x])
    out = offspring.copy()
    d2 = np.min(
        np.sum((out[:, None, :] - ref[None, :, :]) ** 2, axis=2), axis=1
    )
    tol2 = tol * tol
    for i in np.flatnonzero(d2 < tol2):
        for _ in range(retries):
            cand = rng.random(out.shape[1])
            if np.min(np.sum((ref - cand) ** 2, axis=1)) >= tol2:
                out[i] = cand
                break
        else:
            out[i] = cand
    return out


def _pick_best(cluster_idx, scores, cvm, pmean, constrained):
    """Index of the cluster's top scorer with the documented tie-breaking."""
    if constrained:
        order = np.lexsort((cluster_idx, pmean, cvm, -scores))
    else:
        order = np.lexsort((cluster_idx, pmean, -scores))
    return order[0]


def environmental_selection(
    pop: PredictedPopulation,
    rvs: ReferenceVectorSet,
    bounds: NormalizationBounds,
    constrained: bool,
    variant: str,
    n_survivors: int,
    rng: np.random.Generator,
):
    """Iterative per-reference-vector selection.

    Returns (survivor indices into pop, winners as list of (rv_index, pop
    index)).  Each round assigns the remaining pool to the remaining
    directions, projects onto the assigned direction, scores clusters by
    mean pairwise comparison, keeps one winner per active direction, then
    retires those directions.
    """
    k = len(pop)
    fmean_n, fvar_n = normalize(pop.fmean, pop.fvar, bounds)
    remaining = np.arange(k)
    rv_alive = np.ones(len(rvs), dtype=bool)
    survivors: list[int] = []
    winners: list[tuple[int, int]] = []

    while remaining.size and rv_alive.any() and len(survivors) < n_survivors:
        alive_idx = np.flatnonzero(rv_alive)
        w = rvs.directions[alive_idx]
        means = fmean_n[remaining]
        dots = np.abs(means @ w.T)
        norms = np.linalg.norm(means, axis=1)
        cos = np.where(norms[:, None] > 0.0, dots / np.maximum(norms[:, None], 1e-300), 0.0)
        rv_global = alive_idx[np.argmax(cos, axis=1)]

        order = np.argsort(rv_global, kind="stable")
        pts = remaining[order]
        grouped_rv = rv_global[order]
        uniq, starts = np.unique(grouped_rv, return_index=True)
        offsets = np.append(starts, grouped_rv.size).astype(np.int64)

        pmean, pvar = project_batch(fmean_n[pts], fvar_n[pts], grouped_rv, rvs)

        if constrained and variant in ("v1", "v2"):
            for c in range(uniq.size):
                s, e = offsets[c], offsets[c + 1]
                sel = pts[s:e]
                if variant == "v1":
                    local = ranking.rank_v1(
                        pop.pof_factors[sel], pop.gmean[sel], pop.cvm[sel],
                        pmean[s:e], pvar[s:e], projected=True,
                    )
                else:
                    local = ranking.rank_v2(pop.pof[sel], pmean[s:e], pvar[s:e], projected=True)
                best = sel[local[0]]
                winners.append((int(uniq[c]), int(best)))
                survivors.append(int(best))
        else:
            scores = np.asarray(
                kernels.selection_scores(
                    offsets, pop.pof[pts], pop.cvm[pts], pop.cvv[pts], pmean, pvar, constrained
                )
            )
            for c in range(uniq.size):
                s, e = offsets[c], offsets[c + 1]
                j = _pick_best(pts[s:e], scores[s:e], pop.cvm[pts[s:e]], pmean[s:e], constrained)
                best = pts[s:e][j]
                winners.append((int(uniq[c]), int(best)))
                survivors.append(int(best))

        chosen = set(survivors)
        remaining = np.array([i for i in remaining if i not in chosen], dtype=np.intp)
        rv_alive[uniq] = False

    survivors = survivors[:n_survivors]
    if len(survivors) < n_survivors and remaining.size:
        fill = rng.choice(remaining, size=min(n_survivors - len(survivors), remaining.size), replace=False)
        survivors.extend(int(i) for i in fill)
    return survivors, winners


def _materialize(pop: PredictedPopulation, winners, archive_x, tol: float, rng: np.random.Generator):
    """Build the candidate set from per-RV winners, dropping duplicates.

    Duplicates of archive points (inherited seeds) and near-identical
    winners are removed; if nothing survives, the closest-to-fresh winner
    is restored so exactly one candidate always exists.
    """
    winners = sorted(winners, key=lambda t: t[0])
    keep: list[tuple[int, int]] = []
    tol2 = tol * tol
    for rv, i in winners:
        if pop.is_archive[i]:
            continue
        x = pop.x[i]
        if archive_x.size and np.min(np.sum((archive_x - x) ** 2, axis=1)) < tol2:
            continue
        if any(np.sum((pop.x[j] - x) ** 2) < tol2 for _, j in keep):
            continue
        keep.append((rv, i))
    if not keep:
        # degenerate: every winner duplicates the archive; resample one point
        x = rng.random((1, pop.x.shape[1]))
        return None, x
    rv_idx = np.array([rv for rv, _ in keep], dtype=np.int64)
    sel = np.array([i for _, i in keep], dtype=np.intp)
    cands = Candidates(
        x=pop.x[sel],
        fmean=pop.fmean[sel],
        fvar=pop.fvar[sel],
        gmean=pop.gmean[sel],
        gvar=pop.gvar[sel],
        pof=pop.pof[sel],
        pof_factors=pop.pof_factors[sel],
        cvm=pop.cvm[sel],
        cvv=pop.cvv[sel],
        rv_index=rv_idx,
    )
    return cands, None


def run_subea(
    archive_xn: np.ndarray,
    archive_f: np.ndarray,
    archive_cv: np.ndarray,
    archive_feasible: np.ndarray,
    predict_fn,
    rvs: ReferenceVectorSet,
    bounds: NormalizationBounds,
    constrained: bool,
    variant: str,
    config: SubEAConfig,
    rng: np.random.Generator,
) -> Candidates:
    """Evolve the surrogate landscape and return the per-RV best candidates."""
    order = idr_order(archive_f, archive_cv, archive_feasible, config.alpha, config.n_pop)
    take = min(order.size, config.n_pop)
    seed_x = archive_xn[order[:take]]
    seeded_archive = np.ones(take, dtype=bool)
    if take < config.n_pop:
        seed_x = np.vstack([seed_x, unit_lhs(config.n_pop - take, archive_xn.shape[1], rng)])
        seeded_archive = np.concatenate([seeded_archive, np.zeros(config.n_pop - take, dtype=bool)])
    fm, fv, gm, gv = predict_fn(seed_x)
    pop = PredictedPopulation(seed_x, fm, fv, gm, gv, is_archive=seeded_archive)

    winners = None
    final_pop = pop
    for _ in range(config.n_gen):
        children = make_offspring(pop.x, config, rng)
        children = replace_duplicates(children, pop.x, archive_xn, config.dup_tol, rng)
        cfm, cfv, cgm, cgv = predict_fn(children)
        q = PredictedPopulation.concat(pop, PredictedPopulation(children, cfm, cfv, cgm, cgv))
        sel, winners = environmental_selection(q, rvs, bounds, constrained, variant, config.n_pop, rng)
        final_pop = q
        pop = q.take(sel)
    if winners is None:
        _, winners = environmental_selection(pop, rvs, bounds, constrained, variant, config.n_pop, rng)
        final_pop = pop

    cands, fresh_x = _materialize(final_pop, winners, archive_xn, config.dup_tol, rng)
    if cands is None:
        fm, fv, gm, gv = predict_fn(fresh_x)
        cands = Candidates(
            x=fresh_x,
            fmean=fm,
            fvar=fv,
            gmean=gm,
            gvar=gv,
            pof=np.asarray(kernels.pof_batch(gm, gv)),
            pof_factors=np.asarray(kernels.pof_factors(gm, gv)),
            cvm=np.asarray(kernels.cv_moments_batch(gm, gv)[0]),
            cvv=np.asarray(kernels.cv_moments_batch(gm, gv)[1]),
            rv_index=np.zeros(1, dtype=np.int64),
        )
    return cands
