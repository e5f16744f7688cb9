"""Probabilistic kernel backend selection.

The compiled extension is preferred; the NumPy fallback is used when the
extension is missing or when the environment variable ``PSCMOEA_PURE_PYTHON``
is set to a non-empty value.  Both backends expose the same functions:

    erf, norm_cdf, rectified_moments, rectified_moments_batch,
    pof_factors, pof_batch, cv_moments_batch, prob_less, pd_full,
    selection_scores, pd_matrix_full, pairwise_scores_full
"""

import os

from . import _fallback

if os.environ.get("PSCMOEA_PURE_PYTHON"):
    _impl = _fallback
else:
    try:
        from . import _core as _impl
    except ImportError:
        _impl = _fallback

BACKEND = _impl.BACKEND_NAME

erf = _impl.erf
norm_cdf = _impl.norm_cdf
rectified_moments = _impl.rectified_moments
rectified_moments_batch = _impl.rectified_moments_batch
pof_factors = _impl.pof_factors
pof_batch = _impl.pof_batch
cv_moments_batch = _impl.cv_moments_batch
prob_less = _impl.prob_less
pd_full = _impl.pd_full
selection_scores = _impl.selection_scores
pd_matrix_full = _impl.pd_matrix_full
pairwise_scores_full = _impl.pairwise_scores_full
