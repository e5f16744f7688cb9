# cython: language_level=3
"""Compiled probabilistic comparison kernels.

Hot inner loops of the optimizer: pairwise probabilistic-dominance and
constrained-domination scoring inside reference-vector clusters, plus the
scalar building blocks they are assembled from.  Mirrors the contract of
`pscmoea.kernels._fallback`.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport erf as c_erf, erfc as c_erfc, exp as c_exp, fabs, sqrt

cnp.import_array()

BACKEND_NAME = "compiled"

cdef double INV_SQRT_2PI = 0.3989422804014326779399460599343818684758586311649346576659258296
cdef double INV_SQRT_2 = 0.7071067811865475244008443621048490392848359376884740365883398689


cdef inline double _norm_cdf(double x) nogil:
    return 0.5 * c_erfc(-x * INV_SQRT_2)


cdef inline double _prob_less(double mx, double vx, double my, double vy) nogil:
    cdef double s = vx + vy
    if s <= 0.0:
        if mx < my:
            return 1.0
        if mx > my:
            return 0.0
        return 0.5
    return _norm_cdf((my - mx) / sqrt(s))


cdef inline double _pof_factor(double mu, double var) nogil:
    if var <= 0.0:
        return 1.0 if mu <= 0.0 else 0.0
    return _norm_cdf(-mu / sqrt(var))


cdef inline void _rect_moments(double mu, double sigma, double* out_m, double* out_v) nogil:
    cdef double c, exp_c, exp_d, erf_c, erfc_mc, erfc_c, erf_d, erfc_d
    cdef double mu_t, var_t, mu_r, var_r
    cdef double d = 6.0
    if sigma <= 0.0:
        out_m[0] = mu if mu > 0.0 else 0.0
        out_v[0] = 0.0
        return
    c = -mu / sigma
    exp_c = c_exp(-0.5 * c * c) if fabs(c) < 38.0 else 0.0
    exp_d = c_exp(-0.5 * d * d)
    erf_c = c_erf(c * INV_SQRT_2)
    erfc_mc = c_erfc(-c * INV_SQRT_2)
    erfc_c = c_erfc(c * INV_SQRT_2)
    erf_d = c_erf(d * INV_SQRT_2)
    erfc_d = c_erfc(d * INV_SQRT_2)

    mu_t = INV_SQRT_2PI * (exp_c - exp_d) + 0.5 * c * erfc_mc + 0.5 * d * erfc_d
    var_t = (
        0.5 * (mu_t * mu_t + 1.0) * (erf_d - erf_c)
        - INV_SQRT_2PI * ((d - 2.0 * mu_t) * exp_d - (c - 2.0 * mu_t) * exp_c)
        + 0.5 * (c - mu_t) * (c - mu_t) * erfc_mc
        + 0.5 * (d - mu_t) * (d - mu_t) * erfc_d
    )
    mu_r = mu + sigma * mu_t
    var_r = sigma * sigma * var_t
    if mu_r < 0.0:
        mu_r = 0.0
    if var_r < 0.0:
        var_r = 0.0
    out_m[0] = mu_r
    out_v[0] = var_r


def erf(double x):
    """Standard error function."""
    return c_erf(x)


def norm_cdf(double x):
    """Standard normal CDF, accurate in both tails."""
    return _norm_cdf(x)


def rectified_moments(double mu, double sigma):
    """Mean and variance of max(0, X) for X ~ N(mu, sigma^2)."""
    cdef double m, v
    _rect_moments(mu, sigma, &m, &v)
    return (m, v)


def rectified_moments_batch(mu, sigma):
    """Vectorized `rectified_moments` over 1-D arrays."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] mu_a = np.ascontiguousarray(mu, dtype=np.float64).ravel()
    cdef cnp.ndarray[cnp.float64_t, ndim=1] sg_a = np.ascontiguousarray(sigma, dtype=np.float64).ravel()
    cdef Py_ssize_t n = mu_a.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out_m = np.empty(n)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out_v = np.empty(n)
    cdef Py_ssize_t i
    for i in range(n):
        _rect_moments(mu_a[i], sg_a[i], &out_m[i], &out_v[i])
    return out_m, out_v


def pof_factors(mu, var):
    """Per-constraint feasibility probabilities Phi(-mu/sigma), shape (k, p)."""
    cdef cnp.ndarray[cnp.float64_t, ndim=2] mu_a = np.ascontiguousarray(np.atleast_2d(mu), dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] va_a = np.ascontiguousarray(np.atleast_2d(var), dtype=np.float64)
    cdef Py_ssize_t k = mu_a.shape[0], p = mu_a.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] out = np.empty((k, p))
    cdef Py_ssize_t i, j
    for i in range(k):
        for j in range(p):
            out[i, j] = _pof_factor(mu_a[i, j], va_a[i, j])
    return out


def pof_batch(mu, var):
    """Probability of feasibility (product over constraints), shape (k,)."""
    cdef cnp.ndarray[cnp.float64_t, ndim=2] mu_a = np.ascontiguousarray(np.atleast_2d(mu), dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] va_a = np.ascontiguousarray(np.atleast_2d(var), dtype=np.float64)
    cdef Py_ssize_t k = mu_a.shape[0], p = mu_a.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(k)
    cdef Py_ssize_t i, j
    cdef double acc
    for i in range(k):
        acc = 1.0
        for j in range(p):
            acc *= _pof_factor(mu_a[i, j], va_a[i, j])
        out[i] = acc
    return out


def cv_moments_batch(mu, var):
    """Rectified-sum CV distribution moments per row of (k, p) inputs."""
    cdef cnp.ndarray[cnp.float64_t, ndim=2] mu_a = np.ascontiguousarray(np.atleast_2d(mu), dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] va_a = np.ascontiguousarray(np.atleast_2d(var), dtype=np.float64)
    cdef Py_ssize_t k = mu_a.shape[0], p = mu_a.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] cm = np.zeros(k)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] cv = np.zeros(k)
    cdef Py_ssize_t i, j
    cdef double m, v, sg
    for i in range(k):
        for j in range(p):
            sg = sqrt(va_a[i, j]) if va_a[i, j] > 0.0 else 0.0
            _rect_moments(mu_a[i, j], sg, &m, &v)
            cm[i] += m
            cv[i] += v
    return cm, cv


def prob_less(double mx, double vx, double my, double vy):
    """P(X < Y) for independent Gaussians; indicator with half-ties when degenerate."""
    return _prob_less(mx, vx, my, vy)


def pd_full(mux, varx, muy, vary):
    """Probabilistic dominance over an objective vector: product of per-dimension terms."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] mx = np.ascontiguousarray(mux, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] vx = np.ascontiguousarray(varx, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] my = np.ascontiguousarray(muy, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] vy = np.ascontiguousarray(vary, dtype=np.float64)
    cdef double p = 1.0
    cdef Py_ssize_t i
    for i in range(mx.shape[0]):
        p *= _prob_less(mx[i], vx[i], my[i], vy[i])
    return p


cdef inline double _pcd(double pofx, double cvmx, double cvvx,
                        double pofy, double cvmy, double cvvy,
                        double pd) nogil:
    return (
        pofx * (1.0 - pofy)
        + pofx * pofy * pd
        + (1.0 - pofx) * (1.0 - pofy) * _prob_less(cvmx, cvvx, cvmy, cvvy)
    )


def selection_scores(offsets, pof, cvm, cvv, pmean, pvar, bint constrained):
    """Mean pairwise scores within contiguous clusters.

    `offsets` delimits clusters in the concatenated arrays; cluster c spans
    offsets[c]:offsets[c+1].  Constrained mode averages PCD, unconstrained
    averages plain probabilistic dominance on the projected scalars.
    Singleton clusters score 1.
    """
    cdef cnp.ndarray[cnp.int64_t, ndim=1] off = np.ascontiguousarray(offsets, dtype=np.int64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] pof_a = np.ascontiguousarray(pof, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] cvm_a = np.ascontiguousarray(cvm, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] cvv_a = np.ascontiguousarray(cvv, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] pm_a = np.ascontiguousarray(pmean, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] pv_a = np.ascontiguousarray(pvar, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(pof_a.shape[0])
    cdef Py_ssize_t c, i, j, s, e, k
    cdef double acc, pd
    with nogil:
        for c in range(off.shape[0] - 1):
            s = off[c]
            e = off[c + 1]
            k = e - s
            if k == 1:
                out[s] = 1.0
                continue
            for i in range(s, e):
                acc = 0.0
                for j in range(s, e):
                    if j == i:
                        continue
                    pd = _prob_less(pm_a[i], pv_a[i], pm_a[j], pv_a[j])
                    if constrained:
                        acc += _pcd(pof_a[i], cvm_a[i], cvv_a[i],
                                    pof_a[j], cvm_a[j], cvv_a[j], pd)
                    else:
                        acc += pd
                out[i] = acc / (k - 1)
    return out


def pd_matrix_full(mu, var):
    """Pairwise full-M probabilistic dominance matrix, (k, k)."""
    cdef cnp.ndarray[cnp.float64_t, ndim=2] mu_a = np.ascontiguousarray(mu, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] va_a = np.ascontiguousarray(var, dtype=np.float64)
    cdef Py_ssize_t k = mu_a.shape[0], m = mu_a.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] out = np.ones((k, k))
    cdef Py_ssize_t i, j, d
    cdef double p
    with nogil:
        for i in range(k):
            for j in range(k):
                p = 1.0
                for d in range(m):
                    p *= _prob_less(mu_a[i, d], va_a[i, d], mu_a[j, d], va_a[j, d])
                out[i, j] = p
    return out


def pairwise_scores_full(pof, cvm, cvv, mu, var, bint constrained):
    """Mean pairwise score of each solution against the whole set (full-M dominance)."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] pof_a = np.ascontiguousarray(pof, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] cvm_a = np.ascontiguousarray(cvm, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] cvv_a = np.ascontiguousarray(cvv, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] mu_a = np.ascontiguousarray(mu, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] va_a = np.ascontiguousarray(var, dtype=np.float64)
    cdef Py_ssize_t k = mu_a.shape[0], m = mu_a.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(k)
    cdef Py_ssize_t i, j, d
    cdef double acc, pd
    if k == 1:
        out[0] = 1.0
        return out
    with nogil:
        for i in range(k):
            acc = 0.0
            for j in range(k):
                if j == i:
                    continue
                pd = 1.0
                for d in range(m):
                    pd *= _prob_less(mu_a[i, d], va_a[i, d], mu_a[j, d], va_a[j, d])
                if constrained:
                    acc += _pcd(pof_a[i], cvm_a[i], cvv_a[i],
                                pof_a[j], cvm_a[j], cvv_a[j], pd)
                else:
                    acc += pd
            out[i] = acc / (k - 1)
    return out
