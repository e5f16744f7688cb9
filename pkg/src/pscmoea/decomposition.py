"""Reference-vector decomposition and adaptive normalization bounds.

Mirrored reference vectors are stored once as unit directions with
nonnegative components; assignment and projection treat each direction as a
full line through the origin of the normalized objective space, so points
behind the ideal still project with a sign.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np


@dataclass(frozen=True)
class ReferenceVectorSet:
    """Unit NBI lattice directions, interpreted as mirrored lines."""

    directions: np.ndarray  # (N_W, M), unit rows, nonnegative components
    h: int

    def __len__(self):
        return self.directions.shape[0]


@dataclass(frozen=True)
class NormalizationBounds:
    """Ideal/nadir estimates used to scale predictions each generation."""

    zi: np.ndarray
    zn: np.ndarray

    def same_as(self, other: "NormalizationBounds | None") -> bool:
        if other is None:
            return False
        return bool(np.array_equal(self.zi, other.zi) and np.array_equal(self.zn, other.zn))


def generate_mirrored_rvs(m: int, h: int) -> ReferenceVectorSet:
    """Simplex-lattice directions with spacing h, normalized to unit length."""
    if h < 1:
        raise ValueError("spacing parameter must be >= 1")
    pts = []
    for bars in combinations(range(h + m - 1), m - 1):
        prev = -1
        comp = []
        for b in bars:
            comp.append(b - prev - 1)
            prev = b
        comp.append(h + m - 2 - prev)
        pts.append(comp)
    w = np.array(pts, dtype=np.float64) / h
    norms = np.linalg.norm(w, axis=1)
    return ReferenceVectorSet(directions=w / norms[:, None], h=h)


def nd_mask(f: np.ndarray) -> np.ndarray:
    """Boolean mask of rows not dominated by any other row (minimization)."""
    f = np.asarray(f, dtype=np.float64)
    n = f.shape[0]
    if n == 0:
        return np.zeros(0, dtype=bool)
    le = np.all(f[:, None, :] <= f[None, :, :], axis=2)
    lt = np.any(f[:, None, :] < f[None, :, :], axis=2)
    dominates = le & lt
    return ~dominates.any(axis=0)


def _repair(zi: np.ndarray, zn: np.ndarray) -> NormalizationBounds:
    zn = zn.copy()
    flat = zn <= zi
    if np.any(flat):
        widen = np.maximum(1e-12, 1e-6 * np.abs(zi[flat]))
        zn[flat] = zi[flat] + widen
    return NormalizationBounds(zi=zi, zn=zn)


def compute_bounds(f: np.ndarray, feasible: np.ndarray) -> NormalizationBounds:
    """Normalization bounds from the archive's objective values.

    Three cases on the archive's feasibility status: fully infeasible uses
    the raw min/max envelope; fully feasible uses the feasible ND set with a
    10% nadir extension; a mixed archive combines the feasible ND set with
    the infeasible solutions not dominated by any of its points, then applies
    the same extension.
    """
    f = np.asarray(f, dtype=np.float64)
    feasible = np.asarray(feasible, dtype=bool)
    if f.shape[0] == 0:
        raise ValueError("empty archive")
    if not feasible.any():
        zi = f.min(axis=0)
        zn = f.max(axis=0)
        return _repair(zi, zn)
    f_feas = f[feasible]
    fnd = f_feas[nd_mask(f_feas)]
    if feasible.all():
        zi = fnd.min(axis=0)
        zn = fnd.max(axis=0)
        zn = zn + 0.1 * (zn - zi)
        return _repair(zi, zn)
    f_inf = f[~feasible]
    le = np.all(fnd[:, None, :] <= f_inf[None, :, :], axis=2)
    lt = np.any(fnd[:, None, :] < f_inf[None, :, :], axis=2)
    dominated = (le & lt).any(axis=0)
    comb = np.vstack([fnd, f_inf[~dominated]])
    zi = comb.min(axis=0)
    zn = comb.max(axis=0)
    zn = zn + 0.1 * (zn - zi)
    return _repair(zi, zn)


def normalize(mean: np.ndarray, variance: np.ndarray, bounds: NormalizationBounds):
    """Scale objective means and variances into the bounds' unit box."""
    rng = bounds.zn - bounds.zi
    return (mean - bounds.zi) / rng, variance / (rng * rng)


def denormalize_mean(mean_n: np.ndarray, bounds: NormalizationBounds) -> np.ndarray:
    return mean_n * (bounds.zn - bounds.zi) + bounds.zi


def assign_to_rv(means: np.ndarray, rvs: ReferenceVectorSet) -> np.ndarray:
    """Index of the direction line with the smallest acute angle per point.

    Ties break toward the lowest RV index; a zero-length position vector is
    assigned to RV 0.
    """
    means = np.atleast_2d(np.asarray(means, dtype=np.float64))
    w = rvs.directions
    dots = np.abs(means @ w.T)
    norms = np.linalg.norm(means, axis=1)
    cosang = np.where(norms[:, None] > 0.0, dots / np.maximum(norms[:, None], 1e-300), 0.0)
    # argmax returns the first (lowest) index on ties, incl. the zero-vector case
    return np.argmax(cosang, axis=1)


def project(mean: np.ndarray, variance: np.ndarray, rv: np.ndarray):
    """Signed projection of a diagonal Gaussian onto a unit direction."""
    rv = np.asarray(rv, dtype=np.float64)
    return float(np.dot(rv, mean)), float(np.dot(rv * rv, variance))


def project_batch(means: np.ndarray, variances: np.ndarray, rv_idx: np.ndarray, rvs: ReferenceVectorSet):
    """Row-wise projection of each point onto its assigned direction."""
    w = rvs.directions[rv_idx]
    pmean = np.einsum("ij,ij->i", w, means)
    pvar = np.einsum("ij,ij->i", w * w, variances)
    return pmean, pvar
