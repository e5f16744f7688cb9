"""BLAS threading control.

The linear algebra in a run is dominated by many small-to-medium
factorizations; multi-threaded BLAS loses badly to thread startup and
contention at these sizes, so runs pin BLAS pools to one thread.
"""

from contextlib import contextmanager

try:
    from threadpoolctl import threadpool_limits
except ImportError:  # pragma: no cover
    threadpool_limits = None


@contextmanager
def single_threaded_blas():
    if threadpool_limits is None:
        yield
        return
    with threadpool_limits(limits=1, user_api="blas"):
        yield
