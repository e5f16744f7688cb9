"""LIRCMOP benchmark suite (14 problems with large infeasible regions).

Transcribed from the suite's defining publication.  Constraints are encoded
in the g(x) <= 0 convention: band constraints as a sign-changing product,
objective-space exclusion ellipses as r minus the ellipse quadratic.
"""

from __future__ import annotations

import numpy as np

_THETA = -0.25 * np.pi
_ALPHA = 0.25 * np.pi


def _split_sums(x, scaled: bool):
    """Distance sums over odd/even 1-based variable indices from 2..n."""
    n = x.shape[1]
    j = np.arange(2, n + 1, dtype=np.float64)
    x1 = x[:, :1]
    angle = (0.5 * j / n * np.pi) * x1 if scaled else (0.5 * np.pi) * np.broadcast_to(x1, (x.shape[0], n - 1))
    tail = x[:, 1:]
    ds = (tail - np.sin(angle)) ** 2
    dc = (tail - np.cos(angle)) ** 2
    odd = j % 2 == 1
    g1 = np.sum(ds[:, odd], axis=1)
    g2 = np.sum(dc[:, ~odd], axis=1)
    return g1, g2


def _ellipses(f, p, q, a, b, r=0.1):
    """Exclusion-ellipse constraints r - E_k(f) for each center."""
    ct, st = np.cos(_THETA), np.sin(_THETA)
    cons = []
    for pk, qk, ak, bk in zip(p, q, a, b):
        dx = f[:, 0] - pk
        dy = f[:, 1] - qk
        e1 = dx * ct - dy * st
        e2 = dx * st + dy * ct
        cons.append(r - e1 * e1 / ak**2 - e2 * e2 / bk**2)
    return np.column_stack(cons)


def _band(g, lo=0.5, hi=0.51):
    return (hi - g) * (lo - g)


def _wave_constraint(f, level):
    ca, sa = np.cos(_ALPHA), np.sin(_ALPHA)
    return level - (f[:, 0] * sa + f[:, 1] * ca) + np.sin(4.0 * np.pi * (f[:, 0] * ca - f[:, 1] * sa))


def _lircmop1(x):
    g1, g2 = _split_sums(x, scaled=False)
    f = np.column_stack([x[:, 0] + g1, 1.0 - x[:, 0] ** 2 + g2])
    return f, np.column_stack([_band(g1), _band(g2)])


def _lircmop2(x):
    g1, g2 = _split_sums(x, scaled=False)
    f = np.column_stack([x[:, 0] + g1, 1.0 - np.sqrt(x[:, 0]) + g2])
    return f, np.column_stack([_band(g1), _band(g2)])


def _lircmop3(x):
    f, g = _lircmop1(x)
    c3 = 0.5 - np.sin(20.0 * np.pi * x[:, 0])
    return f, np.column_stack([g, c3])


def _lircmop4(x):
    f, g = _lircmop2(x)
    c3 = 0.5 - np.sin(20.0 * np.pi * x[:, 0])
    return f, np.column_stack([g, c3])


def _lircmop5(x):
    g1, g2 = _split_sums(x, scaled=True)
    f = np.column_stack(
        [x[:, 0] + 10.0 * g1 + 0.7057, 1.0 - np.sqrt(x[:, 0]) + 10.0 * g2 + 0.7057]
    )
    return f, _ellipses(f, (1.6, 2.5), (1.6, 2.5), (2.0, 2.0), (4.0, 8.0))


def _lircmop6(x):
    g1, g2 = _split_sums(x, scaled=True)
    f = np.column_stack(
        [x[:, 0] + 10.0 * g1 + 0.7057, 1.0 - x[:, 0] ** 2 + 10.0 * g2 + 0.7057]
    )
    return f, _ellipses(f, (1.8, 2.8), (1.8, 2.8), (2.0, 2.0), (8.0, 8.0))


_E78 = ((1.2, 2.25, 3.5), (1.2, 2.25, 3.5), (2.0, 2.5, 2.5), (6.0, 12.0, 10.0))


def _lircmop7(x):
    g1, g2 = _split_sums(x, scaled=True)
    f = np.column_stack(
        [x[:, 0] + 10.0 * g1 + 0.7057, 1.0 - np.sqrt(x[:, 0]) + 10.0 * g2 + 0.7057]
    )
    return f, _ellipses(f, *_E78)


def _lircmop8(x):
    g1, g2 = _split_sums(x, scaled=True)
    f = np.column_stack(
        [x[:, 0] + 10.0 * g1 + 0.7057, 1.0 - x[:, 0] ** 2 + 10.0 * g2 + 0.7057]
    )
    return f, _ellipses(f, *_E78)


def _lircmop9(x):
    g1, g2 = _split_sums(x, scaled=True)
    f = np.column_stack(
        [
            1.7057 * x[:, 0] * (10.0 * g1 + 1.0),
            1.7057 * (1.0 - x[:, 0] ** 2) * (10.0 * g2 + 1.0),
        ]
    )
    c1 = _ellipses(f, (1.4,), (1.4,), (1.5,), (6.0,))
    return f, np.column_stack([c1, _wave_constraint(f, 2.0)])


def _lircmop10(x):
    g1, g2 = _split_sums(x, scaled=True)
    f = np.column_stack(
        [
            1.7057 * x[:, 0] * (10.0 * g1 + 1.0),
            1.7057 * (1.0 - np.sqrt(x[:, 0])) * (10.0 * g2 + 1.0),
        ]
    )
    c1 = _ellipses(f, (1.1,), (1.2,), (2.0,), (4.0,))
    return f, np.column_stack([c1, _wave_constraint(f, 1.0)])


def _lircmop11(x):
    g1, g2 = _split_sums(x, scaled=True)
    f = np.column_stack(
        [
            1.7057 * x[:, 0] * (10.0 * g1 + 1.0),
            1.7057 * (1.0 - np.sqrt(x[:, 0])) * (10.0 * g2 + 1.0),
        ]
    )
    c1 = _ellipses(f, (1.2,), (1.2,), (1.5,), (5.0,))
    return f, np.column_stack([c1, _wave_constraint(f, 2.1)])


def _lircmop12(x):
    g1, g2 = _split_sums(x, scaled=True)
    f = np.column_stack(
        [
            1.7057 * x[:, 0] * (10.0 * g1 + 1.0),
            1.7057 * (1.0 - np.sqrt(x[:, 0])) * (10.0 * g2 + 1.0),
        ]
    )
    c1 = _ellipses(f, (1.6,), (1.6,), (1.5,), (6.0,))
    return f, np.column_stack([c1, _wave_constraint(f, 2.5)])


def _sphere3(x):
    g = np.sum(10.0 * (x[:, 2:] - 0.5) ** 2, axis=1)
    base = 1.7057 + g
    c1 = np.cos(0.5 * np.pi * x[:, 0])
    s1 = np.sin(0.5 * np.pi * x[:, 0])
    c2 = np.cos(0.5 * np.pi * x[:, 1])
    s2 = np.sin(0.5 * np.pi * x[:, 1])
    return np.column_stack([base * c1 * c2, base * c1 * s2, base * s1])


def _lircmop13(x):
    f = _sphere3(x)
    gx = np.sum(f * f, axis=1)
    c1 = (gx - 9.0) * (4.0 - gx)
    c2 = (gx - 3.61) * (3.24 - gx)
    return f, np.column_stack([c1, c2])


def _lircmop14(x):
    f = _sphere3(x)
    gx = np.sum(f * f, axis=1)
    c1 = (gx - 9.0) * (4.0 - gx)
    c2 = (gx - 3.61) * (3.24 - gx)
    c3 = (gx - 3.0625) * (2.56 - gx)
    return f, np.column_stack([c1, c2, c3])


_SPECS = {
    1: (2, 2, _lircmop1),
    2: (2, 2, _lircmop2),
    3: (2, 3, _lircmop3),
    4: (2, 3, _lircmop4),
    5: (2, 2, _lircmop5),
    6: (2, 2, _lircmop6),
    7: (2, 3, _lircmop7),
    8: (2, 3, _lircmop8),
    9: (2, 2, _lircmop9),
    10: (2, 2, _lircmop10),
    11: (2, 2, _lircmop11),
    12: (2, 2, _lircmop12),
    13: (3, 2, _lircmop13),
    14: (3, 3, _lircmop14),
}


def make(index: int, dim: int) -> dict:
    m, p, fn = _SPECS[index]
    if dim < 3:
        raise ValueError(f"LIRCMOP{index} needs at least 3 variables")
    return {
        "n": dim,
        "m": m,
        "p": p,
        "lower": np.zeros(dim),
        "upper": np.ones(dim),
        "evaluator": fn,
        "metadata": {"suite": "LIRCMOP"},
    }
