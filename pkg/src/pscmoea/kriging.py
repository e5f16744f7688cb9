"""Ordinary kriging with anisotropic squared-exponential correlation.

One model per response.  Inputs are expected in the unit cube (callers
normalize by problem bounds); responses are standardized internally and
predictions de-standardized on output.  Hyperparameters maximize the
concentrated log-likelihood via multi-start L-BFGS-B with analytic
gradients over log length-scales.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import linalg as sla
from scipy.linalg.lapack import dpotrf, dpotri
from scipy.optimize import minimize

LOG_THETA_LO = np.log(1e-3)
LOG_THETA_HI = np.log(1e2)
NUGGET_LADDER_MAX = 1e-4
_PENALTY = 1e60


class ModelDegeneracyError(Exception):
    """Too few distinct training points to build a model."""


class FitError(Exception):
    """Correlation matrix stayed ill-conditioned through nugget escalation."""


@dataclass(frozen=True)
class Prediction:
    mean: float
    variance: float


def prescreen(points: np.ndarray, responses: np.ndarray, tolerance: float = 1e-4):
    """Drop points closer than `tolerance` to an earlier-evaluated point.

    Returns (points, responses, kept_indices) with original ordering.
    """
    points = np.asarray(points, dtype=np.float64)
    responses = np.asarray(responses, dtype=np.float64)
    n = points.shape[0]
    kept: list[int] = []
    for i in range(n):
        if not kept:
            kept.append(i)
            continue
        d2 = np.sum((points[kept] - points[i]) ** 2, axis=1)
        if np.all(d2 > tolerance * tolerance):
            kept.append(i)
    if len(kept) < 2:
        raise ModelDegeneracyError(
            f"only {len(kept)} distinct training points after prescreening"
        )
    idx = np.array(kept, dtype=np.intp)
    resp = responses[..., idx] if responses.ndim > 1 else responses[idx]
    return points[idx], resp, idx


def _chol_inverse(r):
    """Cholesky factor and full inverse via LAPACK; None on failure."""
    c, info = dpotrf(r, lower=1, overwrite_a=0)
    if info != 0:
        return None, None
    inv, info = dpotri(c, lower=1)
    if info != 0:
        return None, None
    inv = inv + np.tril(inv, -1).T
    return c, inv


class KrigingModel:
    """Fitted ordinary-kriging regressor; immutable and safe to share."""

    def __init__(self, x, y_std, y_mean, y_scale, theta, nugget, beta, sigma2, alpha, rinv, rinv_ones, s11):
        self.x = x
        self._ys = y_std
        self._my = y_mean
        self._sy = y_scale
        self.theta = theta
        self.nugget = nugget
        self.beta = beta
        self.sigma2 = sigma2
        self._alpha = alpha
        self._rinv = rinv
        self._rinv_ones = rinv_ones
        self._s11 = s11

    @property
    def n_points(self) -> int:
        return self.x.shape[0]

    def _corr_with(self, xq: np.ndarray) -> np.ndarray:
        acc = np.zeros((xq.shape[0], self.x.shape[0]))
        for d in range(self.x.shape[1]):
            diff = xq[:, d, None] - self.x[None, :, d]
            acc += self.theta[d] * diff * diff
        return np.exp(-acc)

    def predict_batch(self, xq: np.ndarray):
        """Means and variances for a (k, d) query batch."""
        xq = np.atleast_2d(np.asarray(xq, dtype=np.float64))
        r = self._corr_with(xq)
        mean_s = self.beta + r @ self._alpha
        q = np.einsum("ij,ij->i", r @ self._rinv, r)
        u = r @ self._rinv_ones
        var_s = self.sigma2 * (1.0 - q + (1.0 - u) ** 2 / self._s11)
        np.maximum(var_s, 0.0, out=var_s)
        return self._my + self._sy * mean_s, (self._sy * self._sy) * var_s

    def predict(self, xq: np.ndarray) -> Prediction:
        mean, var = self.predict_batch(np.asarray(xq, dtype=np.float64)[None, :])
        return Prediction(float(mean[0]), float(var[0]))


def _nll_and_grad(log_theta, d2_flat, ys, nugget, n, dim):
    """Concentrated negative log-likelihood and gradient over log theta.

    Length-scale vectors whose correlation matrix is numerically singular
    (failed factorization or an extreme pivot ratio) score a flat penalty.
    """
    theta = np.exp(log_theta)
    psi = np.exp(-(theta @ d2_flat).reshape(n, n))
    r = psi + nugget * np.eye(n)
    chol, rinv = _chol_inverse(r)
    if chol is None:
        return _PENALTY, np.zeros(dim)
    piv = np.diag(chol)
    if piv.min() < 1e-8 * piv.max():
        return _PENALTY, np.zeros(dim)
    ones_rinv = rinv.sum(axis=0)
    s11 = ones_rinv.sum()
    a1 = rinv @ ys
    beta = (ys @ ones_rinv) / s11
    alpha = a1 - beta * ones_rinv
    e = ys - beta
    sigma2 = max(float(e @ alpha) / n, 1e-300)
    logdet = 2.0 * np.sum(np.log(np.diag(chol)))
    nll = n * np.log(sigma2) + logdet
    c = (np.outer(alpha, alpha) / sigma2 - rinv) * psi
    grad = theta * (d2_flat @ c.ravel())
    return nll, grad


def _build(x, ys, my, sy, theta, nugget_start):
    n = x.shape[0]
    acc = np.zeros((n, n))
    for d in range(x.shape[1]):
        diff = x[:, d, None] - x[None, :, d]
        acc += theta[d] * diff * diff
    psi = np.exp(-acc)
    nugget = nugget_start
    while nugget <= NUGGET_LADDER_MAX * (1.0 + 1e-12):
        chol, rinv = _chol_inverse(psi + nugget * np.eye(n))
        if chol is not None:
            ones_rinv = rinv.sum(axis=0)
            s11 = float(ones_rinv.sum())
            beta = float(ys @ ones_rinv) / s11
            alpha = rinv @ ys - beta * ones_rinv
            sigma2 = max(float((ys - beta) @ alpha) / n, 0.0)
            return KrigingModel(x, ys, my, sy, theta, nugget, beta, sigma2, alpha, rinv, ones_rinv, s11)
        nugget *= 10.0
    raise FitError(f"correlation matrix ill-conditioned up to nugget {NUGGET_LADDER_MAX}")


def fit(
    points: np.ndarray,
    responses: np.ndarray,
    rng: np.random.Generator,
    warm_start: np.ndarray | None = None,
    nugget_start: float = 1e-10,
    n_starts: int = 5,
    maxiter: int = 12,
) -> KrigingModel:
    """Fit a model to prescreened data by maximum concentrated likelihood."""
    x = np.asarray(points, dtype=np.float64)
    y = np.asarray(responses, dtype=np.float64)
    if x.shape[0] < 2:
        raise ModelDegeneracyError("need at least 2 training points")
    n, dim = x.shape
    my = float(y.mean())
    sy = float(y.std())
    if sy < 1e-12:
        sy = 1.0
    ys = (y - my) / sy

    d2_flat = np.empty((dim, n * n))
    for d in range(dim):
        diff = x[:, d, None] - x[None, :, d]
        d2_flat[d] = (diff * diff).ravel()

    starts = [np.clip(np.log(warm_start), LOG_THETA_LO, LOG_THETA_HI)] if warm_start is not None else [np.zeros(dim)]
    while len(starts) < n_starts:
        starts.append(rng.uniform(LOG_THETA_LO, LOG_THETA_HI, size=dim))
    bounds = [(LOG_THETA_LO, LOG_THETA_HI)] * dim

    # the search runs at a mildly lifted nugget for stability; the final
    # factorization escalates from nugget_start only as far as needed
    opt_nugget = max(nugget_start, 1e-8)
    attempt = 0
    while True:
        best_val = np.inf
        best_lt = starts[0]
        for st in starts:
            res = minimize(
                _nll_and_grad,
                st,
                args=(d2_flat, ys, opt_nugget, n, dim),
                jac=True,
                method="L-BFGS-B",
                bounds=bounds,
                options={"maxiter": maxiter},
            )
            if res.fun < best_val:
                best_val = res.fun
                best_lt = res.x
        if best_val < _PENALTY / 2:
            return _build(x, ys, my, sy, np.exp(best_lt), nugget_start)
        attempt += 1
        opt_nugget *= 100.0
        if opt_nugget > NUGGET_LADDER_MAX * (1.0 + 1e-12):
            raise FitError(
                f"likelihood evaluation failed for all starts up to nugget {NUGGET_LADDER_MAX}"
            )


def predict(model: KrigingModel, x: np.ndarray) -> Prediction:
    """Predictive mean and variance at a single query point."""
    return model.predict(x)
