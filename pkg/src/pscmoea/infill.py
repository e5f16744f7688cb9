"""Single-point infill selection balancing feasibility, convergence, diversity.

While the archive is fully infeasible, candidates are ranked by mean
pairwise probabilistic comparison and spread across reference vectors via a
tag list.  Once feasible solutions exist, a two-stage scheme keeps the
candidates non-dominated against a reference set and picks the one farthest
(in per-candidate Mahalanobis distance) from that set plus a shadow archive
of disappointing past infills.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels, ranking
from .decomposition import NormalizationBounds, nd_mask, normalize
from .subea import Candidates

_VAR_FLOOR = 1e-12


@dataclass
class RVTagState:
    """Reference vectors already sampled since the last bound change."""

    tags: list[int] = field(default_factory=list)
    flag: bool = False

    def clear(self):
        self.tags.clear()


@dataclass
class ShadowArchive:
    """Objective vectors of infills that proved dominated or infeasible."""

    points: list[np.ndarray] = field(default_factory=list)
    active: bool = False

    def as_array(self, m: int) -> np.ndarray:
        if not self.points:
            return np.empty((0, m))
        return np.vstack(self.points)


def _dominated_by_any(ref: np.ndarray, f: np.ndarray) -> np.ndarray:
    """Mask over rows of f: dominated by at least one row of ref."""
    if ref.shape[0] == 0:
        return np.zeros(f.shape[0], dtype=bool)
    le = np.all(ref[:, None, :] <= f[None, :, :], axis=2)
    lt = np.any(ref[:, None, :] < f[None, :, :], axis=2)
    return (le & lt).any(axis=0)


def preseed_shadow(shadow: ShadowArchive, archive_f: np.ndarray, feasible: np.ndarray):
    """Activate the shadow archive, seeding it with the infeasible solutions
    not dominated by any feasible one."""
    shadow.active = True
    f_feas = archive_f[feasible]
    f_inf = archive_f[~feasible]
    if f_inf.shape[0]:
        nd = ~_dominated_by_any(f_feas, f_inf)
        for row in f_inf[nd]:
            shadow.points.append(np.array(row))


def update_shadow(
    shadow: ShadowArchive,
    new_f: np.ndarray,
    new_feasible: bool,
    archive_f: np.ndarray,
    archive_feasible: np.ndarray,
    bounds: NormalizationBounds,
):
    """Append the latest evaluation when it lands badly.

    Rules: dominated by a feasible archive point; infeasible while feasible
    points exist; or nearest archive neighbour (normalized objectives) is
    itself dominated by a feasible point.  The archive is assumed to already
    contain the new point (its last row).
    """
    if not shadow.active:
        return
    f_feas = archive_f[archive_feasible]
    add = False
    if not new_feasible:
        add = True
    elif _dominated_by_any(f_feas, new_f[None, :])[0]:
        add = True
    else:
        others = archive_f[:-1]
        if others.shape[0]:
            rng_w = bounds.zn - bounds.zi
            dn = (others - bounds.zi) / rng_w
            qn = (new_f - bounds.zi) / rng_w
            nearest = int(np.argmin(np.sum((dn - qn) ** 2, axis=1)))
            if _dominated_by_any(f_feas, others[nearest][None, :])[0]:
                add = True
    if add:
        shadow.points.append(np.array(new_f))


def select_infill_all_infeasible(
    cands: Candidates,
    tag_state: RVTagState,
    constrained: bool,
    variant: str,
    bounds: NormalizationBounds,
) -> int:
    """Choose the top-ranked candidate along a not-yet-tagged reference vector.

    Scores are mean pairwise probability of constrained domination over the
    full objective vector (plain probabilistic dominance in unconstrained
    mode); the v1/v2 variants substitute their rankings.  Updates the tag
    state in place.
    """
    k = len(cands)
    fmean_n, fvar_n = normalize(cands.fmean, cands.fvar, bounds)
    if constrained and variant == "v1":
        ordering = ranking.rank_v1(
            cands.pof_factors, cands.gmean, cands.cvm, fmean_n, fvar_n, projected=False
        )
    elif constrained and variant == "v2":
        ordering = ranking.rank_v2(cands.pof, fmean_n, fvar_n, projected=False)
    else:
        scores = np.asarray(
            kernels.pairwise_scores_full(
                cands.pof, cands.cvm, cands.cvv, fmean_n, fvar_n, constrained
            )
        )
        ordering = np.argsort(-scores, kind="stable")

    chosen = int(ordering[0])
    if tag_state.flag and tag_state.tags:
        untagged = [i for i in ordering if int(cands.rv_index[i]) not in tag_state.tags]
        if untagged:
            chosen = int(untagged[0])
        else:
            tag_state.clear()
            chosen = int(ordering[0])
    tag_state.tags.append(int(cands.rv_index[chosen]))
    tag_state.flag = True
    return chosen


def build_reference_set(archive_f: np.ndarray, feasible: np.ndarray) -> np.ndarray:
    """Feasible ND set, plus infeasible solutions it does not dominate."""
    f_feas = archive_f[feasible]
    fnd = f_feas[nd_mask(f_feas)]
    if feasible.all():
        return fnd
    f_inf = archive_f[~feasible]
    keep = ~_dominated_by_any(fnd, f_inf)
    return np.vstack([fnd, f_inf[keep]])


def two_stage_infill(
    cands: Candidates,
    a_ref: np.ndarray,
    shadow: ShadowArchive,
    bounds: NormalizationBounds,
) -> int:
    """Non-dominated subset first, then max-min Mahalanobis distance pick."""
    dominated = _dominated_by_any(a_ref, cands.fmean)
    subset = np.flatnonzero(~dominated)
    if subset.size == 0:
        subset = np.flatnonzero(nd_mask(cands.fmean))

    refs = np.vstack([a_ref, shadow.as_array(a_ref.shape[1])])
    rng_w = bounds.zn - bounds.zi
    refs_n = (refs - bounds.zi) / rng_w
    mean_n, var_n = normalize(cands.fmean[subset], cands.fvar[subset], bounds)
    var_n = np.maximum(var_n, _VAR_FLOOR)

    diff = mean_n[:, None, :] - refs_n[None, :, :]
    d = np.sqrt(np.sum(diff * diff / var_n[:, None, :], axis=2))
    dmin = d.min(axis=1)
    return int(subset[int(np.argmax(dmin))])
