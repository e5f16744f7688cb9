"""MW benchmark suite (14 constrained bi-/tri-objective problems).

Transcribed from the suite's defining publication.  Three shared distance
functions feed problem-specific objective shapes and constraint bands;
index arithmetic below is 0-based while the published formulas are 1-based.
"""

from __future__ import annotations

import numpy as np


def _g1(x, m):
    d = x.shape[1]
    cols = np.arange(m - 1, d)
    z = x[:, m - 1:] ** (d - m) - 0.5 - cols / (2.0 * d)
    return 1.0 + np.sum(1.0 - np.exp(-10.0 * z * z), axis=1)


def _g2(x, m):
    d = x.shape[1]
    cols = np.arange(m - 1, d)
    z = 1.0 - np.exp(-10.0 * (x[:, m - 1:] - cols / d) ** 2)
    return 1.0 + np.sum((0.1 / d) * z * z + 1.5 - 1.5 * np.cos(2.0 * np.pi * z), axis=1)


def _g3(x, m):
    d = x.shape[1]
    t = x[:, m - 1:] + (x[:, m - 2 : d - 1] - 0.5) ** 2 - 1.0
    return 1.0 + np.sum(2.0 * t * t, axis=1)


def _linear_objectives(g, x, m):
    k = x.shape[0]
    left = np.fliplr(np.cumprod(np.hstack([np.ones((k, 1)), x[:, : m - 1]]), axis=1))
    right = np.hstack([np.ones((k, 1)), 1.0 - x[:, m - 2 :: -1]])
    return g[:, None] * left * right


def _spherical_objectives(g, x, m):
    k = x.shape[0]
    c = np.cos(x[:, : m - 1] * np.pi / 2.0)
    s = np.sin(x[:, m - 2 :: -1] * np.pi / 2.0)
    left = np.fliplr(np.cumprod(np.hstack([np.ones((k, 1)), c]), axis=1))
    right = np.hstack([np.ones((k, 1)), s])
    return g[:, None] * left * right


def _mw1(x):
    g = _g1(x, 2)
    f1 = x[:, 0]
    f2 = g * (1.0 - 0.85 * f1 / g)
    l = np.sqrt(2.0) * f2 - np.sqrt(2.0) * f1
    c1 = f1 + f2 - 1.0 - 0.5 * np.sin(2.0 * np.pi * l) ** 8
    return np.column_stack([f1, f2]), c1[:, None]


def _mw2(x):
    g = _g2(x, 2)
    f1 = x[:, 0]
    f2 = g * (1.0 - f1 / g)
    l = np.sqrt(2.0) * f2 - np.sqrt(2.0) * f1
    c1 = f1 + f2 - 1.0 - 0.5 * np.sin(3.0 * np.pi * l) ** 8
    return np.column_stack([f1, f2]), c1[:, None]


def _mw3(x):
    g = _g3(x, 2)
    f1 = x[:, 0]
    f2 = g * (1.0 - f1 / g)
    l = np.sqrt(2.0) * f2 - np.sqrt(2.0) * f1
    c1 = f1 + f2 - 1.05 - 0.45 * np.sin(0.75 * np.pi * l) ** 6
    c2 = 0.85 - f1 - f2 + 0.3 * np.sin(0.75 * np.pi * l) ** 2
    return np.column_stack([f1, f2]), np.column_stack([c1, c2])


def _mw4(x, m):
    g = _g1(x, m)
    f = _linear_objectives(g, x, m)
    l = f[:, -1] - np.sum(f[:, :-1], axis=1)
    c1 = np.sum(f, axis=1) - 1.0 - 0.4 * np.sin(2.5 * np.pi * l) ** 8
    return f, c1[:, None]


def _mw5(x):
    g = _g1(x, 2)
    f1 = g * x[:, 0]
    f2 = g * np.sqrt(np.maximum(1.0 - (f1 / g) ** 2, 0.0))
    l1 = np.arctan2(f2, f1)
    l2 = 0.5 * np.pi - 2.0 * np.abs(l1 - 0.25 * np.pi)
    r2 = f1 * f1 + f2 * f2
    c1 = r2 - (1.7 - 0.2 * np.sin(2.0 * l1)) ** 2
    c2 = (1.0 + 0.5 * np.sin(6.0 * l2**3)) ** 2 - r2
    c3 = (1.0 - 0.45 * np.sin(6.0 * l2**3)) ** 2 - r2
    return np.column_stack([f1, f2]), np.column_stack([c1, c2, c3])


def _mw6(x):
    g = _g2(x, 2)
    f1 = g * x[:, 0] * 1.0999
    f2 = g * np.sqrt(np.maximum(1.21 - (f1 / g) ** 2, 0.0))
    l = np.cos(6.0 * np.arctan2(f2, f1) ** 4) ** 10
    c1 = (f1 / (1.0 + 0.15 * l)) ** 2 + (f2 / (1.0 + 0.75 * l)) ** 2 - 1.0
    return np.column_stack([f1, f2]), c1[:, None]


def _mw7(x):
    g = _g3(x, 2)
    f1 = g * x[:, 0]
    f2 = g * np.sqrt(np.maximum(1.0 - (f1 / g) ** 2, 0.0))
    l = np.arctan2(f2, f1)
    r2 = f1 * f1 + f2 * f2
    c1 = r2 - (1.2 + np.abs(0.4 * np.sin(4.0 * l) ** 16)) ** 2
    c2 = (1.15 - 0.2 * np.sin(4.0 * l) ** 8) ** 2 - r2
    return np.column_stack([f1, f2]), np.column_stack([c1, c2])


def _mw8(x, m):
    g = _g2(x, m)
    f = _spherical_objectives(g, x, m)
    norm2 = np.sum(f * f, axis=1)
    l = np.arcsin(np.clip(f[:, -1] / np.sqrt(norm2), -1.0, 1.0))
    c1 = norm2 - (1.25 - 0.5 * np.sin(6.0 * l) ** 2) ** 2
    return f, c1[:, None]


def _mw9(x):
    g = _g1(x, 2)
    f1 = g * x[:, 0]
    f2 = g * (1.0 - (f1 / g) ** 0.6)
    t1 = (1.0 - 0.64 * f1 * f1 - f2) * (1.0 - 0.36 * f1 * f1 - f2)
    t2 = 1.35**2 - (f1 + 0.35) ** 2 - f2
    t3 = 1.15**2 - (f1 + 0.15) ** 2 - f2
    c1 = np.minimum(t1, t2 * t3)
    return np.column_stack([f1, f2]), c1[:, None]


def _mw10(x):
    d = x.shape[1]
    g = _g2(x, 2)
    f1 = g * x[:, 0] ** d
    f2 = g * (1.0 - (f1 / g) ** 2)
    c1 = -(2.0 - 4.0 * f1 * f1 - f2) * (2.0 - 8.0 * f1 * f1 - f2)
    c2 = (2.0 - 2.0 * f1 * f1 - f2) * (2.0 - 16.0 * f1 * f1 - f2)
    c3 = (1.0 - f1 * f1 - f2) * (1.2 - 1.2 * f1 * f1 - f2)
    return np.column_stack([f1, f2]), np.column_stack([c1, c2, c3])


def _mw11(x):
    g = _g3(x, 2)
    f1 = g * x[:, 0] * np.sqrt(1.9999)
    f2 = g * np.sqrt(np.maximum(2.0 - (f1 / g) ** 2, 0.0))
    c1 = -(3.0 - f1 * f1 - f2) * (3.0 - 2.0 * f1 * f1 - f2)
    c2 = (3.0 - 0.625 * f1 * f1 - f2) * (3.0 - 7.0 * f1 * f1 - f2)
    c3 = -(1.62 - 0.18 * f1 * f1 - f2) * (1.125 - 0.125 * f1 * f1 - f2)
    c4 = (2.07 - 0.23 * f1 * f1 - f2) * (0.63 - 0.07 * f1 * f1 - f2)
    return np.column_stack([f1, f2]), np.column_stack([c1, c2, c3, c4])


def _mw12(x):
    g = _g1(x, 2)
    f1 = g * x[:, 0]
    ratio = f1 / g
    f2 = g * (0.85 - 0.8 * ratio - 0.08 * np.abs(np.sin(3.2 * np.pi * ratio)))
    c1 = (
        1.0 - 0.8 * f1 - f2 + 0.08 * np.sin(2.0 * np.pi * (f2 - f1 / 1.5))
    ) * (1.8 - 1.125 * f1 - f2 + 0.08 * np.sin(2.0 * np.pi * (f2 / 1.8 - f1 / 1.6)))
    c2 = -(
        1.0 - 0.625 * f1 - f2 + 0.08 * np.sin(2.0 * np.pi * (f2 - f1 / 1.6))
    ) * (1.4 - 0.875 * f1 - f2 + 0.08 * np.sin(2.0 * np.pi * (f2 / 1.4 - f1 / 1.6)))
    return np.column_stack([f1, f2]), np.column_stack([c1, c2])


def _mw13(x):
    g = _g2(x, 2)
    f1 = g * x[:, 0] * 1.5
    ratio = f1 / g
    f2 = g * (5.0 - np.exp(ratio) - np.abs(0.5 * np.sin(3.0 * np.pi * ratio)))
    s = 0.5 * np.sin(3.0 * np.pi * f1)
    c1 = (5.0 - np.exp(f1) - s - f2) * (5.0 - (1.0 + 0.4 * f1) - s - f2)
    c2 = -(5.0 - (1.0 + f1 + 0.5 * f1 * f1) - s - f2) * (5.0 - (1.0 + 0.7 * f1) - s - f2)
    return np.column_stack([f1, f2]), np.column_stack([c1, c2])


def _mw14(x, m):
    g = _g3(x, m)
    head = x[:, : m - 1]
    wave = 1.5 * np.sin(1.1 * np.pi * head * head)
    fm = g / (m - 1) * np.sum(6.0 - np.exp(head) - wave, axis=1)
    f = np.column_stack([head, fm])
    alpha = 1.0 + head + 0.5 * head * head + wave
    c1 = fm - 1.0 / (m - 1) * np.sum(6.1 - alpha, axis=1)
    return f, c1[:, None]


_SPECS = {
    1: (2, 1, 1.0, lambda x, m: _mw1(x)),
    2: (2, 1, 1.0, lambda x, m: _mw2(x)),
    3: (2, 2, 1.0, lambda x, m: _mw3(x)),
    4: (3, 1, 1.0, _mw4),
    5: (2, 3, 1.0, lambda x, m: _mw5(x)),
    6: (2, 1, 1.0, lambda x, m: _mw6(x)),
    7: (2, 2, 1.0, lambda x, m: _mw7(x)),
    8: (3, 1, 1.0, _mw8),
    9: (2, 1, 1.0, lambda x, m: _mw9(x)),
    10: (2, 3, 1.0, lambda x, m: _mw10(x)),
    11: (2, 4, 1.0, lambda x, m: _mw11(x)),
    12: (2, 2, 1.0, lambda x, m: _mw12(x)),
    13: (2, 2, 1.5, lambda x, m: _mw13(x)),
    14: (3, 1, 1.5, _mw14),
}


def make(index: int, dim: int) -> dict:
    m, p, hi, fn = _SPECS[index]
    if dim < m + 1:
        raise ValueError(f"MW{index} needs at least {m + 1} variables")
    return {
        "n": dim,
        "m": m,
        "p": p,
        "lower": np.zeros(dim),
        "upper": np.full(dim, hi),
        "evaluator": lambda x, _fn=fn, _m=m: _fn(x, _m),
        "metadata": {"suite": "MW"},
    }
