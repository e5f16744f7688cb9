"""Pure NumPy implementations of the probabilistic comparison kernels.

This module is the import-time fallback used when the compiled extension
(`pscmoea.kernels._core`) is unavailable.  Both backends implement the same
contract; see `pscmoea.kernels` for the dispatch rules.
"""

import math

import numpy as np
from scipy.special import erfc as _erfc

BACKEND_NAME = "numpy"

_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)
_INV_SQRT_2 = 1.0 / math.sqrt(2.0)


def erf(x):
    """Standard error function."""
    return math.erf(x)


def norm_cdf(x):
    """Standard normal CDF, accurate in both tails."""
    return 0.5 * math.erfc(-x * _INV_SQRT_2)


def _norm_cdf_arr(z):
    return 0.5 * _erfc(-z * _INV_SQRT_2)


def rectified_moments(mu, sigma):
    """Mean and variance of max(0, X) for X ~ N(mu, sigma^2).

    Uses the doubly-truncated construction on [0, mu + 6*sigma]; sigma == 0
    collapses to the deterministic limit (max(0, mu), 0).
    """
    if sigma <= 0.0:
        return (mu if mu > 0.0 else 0.0, 0.0)
    c = -mu / sigma
    d = 6.0
    exp_c = math.exp(-0.5 * c * c) if abs(c) < 38.0 else 0.0
    exp_d = math.exp(-0.5 * d * d)
    erf_c = math.erf(c * _INV_SQRT_2)
    erfc_mc = math.erfc(-c * _INV_SQRT_2)  # 1 + erf(c/sqrt(2))
    erfc_c = math.erfc(c * _INV_SQRT_2)  # 1 - erf(c/sqrt(2))
    erf_d = math.erf(d * _INV_SQRT_2)
    erfc_d = math.erfc(d * _INV_SQRT_2)

    mu_t = (
        _INV_SQRT_2PI * (exp_c - exp_d)
        + 0.5 * c * erfc_mc
        + 0.5 * d * erfc_d
    )
    var_t = (
        0.5 * (mu_t * mu_t + 1.0) * (erf_d - erf_c)
        - _INV_SQRT_2PI * ((d - 2.0 * mu_t) * exp_d - (c - 2.0 * mu_t) * exp_c)
        + 0.5 * (c - mu_t) ** 2 * erfc_mc
        + 0.5 * (d - mu_t) ** 2 * erfc_d
    )
    mu_r = mu + sigma * mu_t
    var_r = sigma * sigma * var_t
    if mu_r < 0.0:
        mu_r = 0.0
    if var_r < 0.0:
        var_r = 0.0
    return (mu_r, var_r)


def rectified_moments_batch(mu, sigma):
    """Vectorized `rectified_moments` over 1-D arrays."""
    mu = np.asarray(mu, dtype=np.float64)
    sigma = np.asarray(sigma, dtype=np.float64)
    out_m = np.empty(mu.shape)
    out_v = np.empty(mu.shape)
    flat_m, flat_s = mu.ravel(), sigma.ravel()
    om, ov = out_m.ravel(), out_v.ravel()
    for i in range(flat_m.size):
        om[i], ov[i] = rectified_moments(flat_m[i], flat_s[i])
    return out_m, out_v


def pof_factors(mu, var):
    """Per-constraint feasibility probabilities Phi(-mu/sigma), shape (k, p)."""
    mu = np.atleast_2d(np.asarray(mu, dtype=np.float64))
    var = np.atleast_2d(np.asarray(var, dtype=np.float64))
    with np.errstate(divide="ignore", invalid="ignore"):
        z = -mu / np.sqrt(var)
        fac = _norm_cdf_arr(z)
    deg = var <= 0.0
    if np.any(deg):
        fac = np.where(deg, (mu <= 0.0).astype(np.float64), fac)
    return fac


def pof_batch(mu, var):
    """Probability of feasibility (product over constraints), shape (k,)."""
    return np.prod(pof_factors(mu, var), axis=1)


def cv_moments_batch(mu, var):
    """Rectified-sum CV distribution moments per row of (k, p) inputs."""
    mu = np.atleast_2d(np.asarray(mu, dtype=np.float64))
    var = np.atleast_2d(np.asarray(var, dtype=np.float64))
    k, p = mu.shape
    cm = np.zeros(k)
    cvv = np.zeros(k)
    for i in range(k):
        for j in range(p):
            m, v = rectified_moments(mu[i, j], math.sqrt(var[i, j]) if var[i, j] > 0.0 else 0.0)
            cm[i] += m
            cvv[i] += v
    return cm, cvv


def prob_less(mx, vx, my, vy):
    """P(X < Y) for independent Gaussians; indicator with half-ties when degenerate."""
    s = vx + vy
    if s <= 0.0:
        if mx < my:
            return 1.0
        if mx > my:
            return 0.0
        return 0.5
    return norm_cdf((my - mx) / math.sqrt(s))


def pd_full(mux, varx, muy, vary):
    """Probabilistic dominance over an objective vector: product of per-dimension terms."""
    p = 1.0
    for i in range(len(mux)):
        p *= prob_less(mux[i], varx[i], muy[i], vary[i])
    return p


def _pd_matrix(m, v):
    """Pairwise P(i beats j) for projected scalars; (k, k)."""
    m = np.asarray(m, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    s = v[:, None] + v[None, :]
    diff = m[None, :] - m[:, None]
    with np.errstate(divide="ignore", invalid="ignore"):
        out = _norm_cdf_arr(diff / np.sqrt(s))
    deg = s <= 0.0
    if np.any(deg):
        ind = np.where(diff > 0.0, 1.0, np.where(diff < 0.0, 0.0, 0.5))
        out = np.where(deg, ind, out)
    return out


def _pcd_matrix(pof, cvm, cvv, pd):
    pofx = pof[:, None]
    pofy = pof[None, :]
    pcv = _pd_matrix(cvm, cvv)
    return pofx * (1.0 - pofy) + pofx * pofy * pd + (1.0 - pofx) * (1.0 - pofy) * pcv


def _mean_offdiag(mat):
    k = mat.shape[0]
    if k == 1:
        return np.ones(1)
    return (mat.sum(axis=1) - np.diag(mat)) / (k - 1)


def selection_scores(offsets, pof, cvm, cvv, pmean, pvar, constrained):
    """Mean pairwise scores within contiguous clusters.

    `offsets` delimits clusters in the concatenated arrays; cluster c spans
    offsets[c]:offsets[c+1].  Constrained mode averages PCD, unconstrained
    averages plain probabilistic dominance on the projected scalars.
    Singleton clusters score 1.
    """
    pof = np.asarray(pof, dtype=np.float64)
    scores = np.empty(pof.shape[0])
    for c in range(len(offsets) - 1):
        s, e = offsets[c], offsets[c + 1]
        pd = _pd_matrix(pmean[s:e], pvar[s:e])
        if constrained:
            mat = _pcd_matrix(pof[s:e], np.asarray(cvm[s:e]), np.asarray(cvv[s:e]), pd)
        else:
            mat = pd
        scores[s:e] = _mean_offdiag(mat)
    return scores


def pd_matrix_full(mu, var):
    """Pairwise full-M probabilistic dominance matrix, (k, k)."""
    mu = np.asarray(mu, dtype=np.float64)
    var = np.asarray(var, dtype=np.float64)
    k, m = mu.shape
    out = np.ones((k, k))
    for d in range(m):
        out *= _pd_matrix(mu[:, d], var[:, d])
    return out


def pairwise_scores_full(pof, cvm, cvv, mu, var, constrained):
    """Mean pairwise score of each solution against the whole set (full-M dominance)."""
    pof = np.asarray(pof, dtype=np.float64)
    pd = pd_matrix_full(mu, var)
    if constrained:
        mat = _pcd_matrix(pof, np.asarray(cvm, dtype=np.float64), np.asarray(cvv, dtype=np.float64), pd)
    else:
        mat = pd
    return _mean_offdiag(mat)
