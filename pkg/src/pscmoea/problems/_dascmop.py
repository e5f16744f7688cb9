"""DASCMOP benchmark suite (9 difficulty-adjustable constrained problems).

Transcribed from the suite's defining publication with the canonical default
difficulty triplet (0.5, 0.5, 0.5).  The triplet maps to: a sine strip
threshold b = 2*eta - 1 on the position variables, a distance band
d <= g <= e with e = d - ln(zeta), and objective-space exclusion regions of
size r = gamma / 2.
"""

from __future__ import annotations

import math

import numpy as np

DEFAULT_TRIPLET = (0.5, 0.5, 0.5)

_THETA = -0.25 * np.pi

# ellipse centers for the bi-objective instances, rows along f1 + f2 = 1.5, 2.5, 3.5
_P_K = np.array([0.0, 1.0, 0.0, 1.0, 2.0, 0.0, 1.0, 2.0, 3.0])
_Q_K = np.array([1.5, 0.5, 2.5, 1.5, 0.5, 3.5, 2.5, 1.5, 0.5])
_A_K = 0.3
_B_K = 1.2

# sphere centers for the tri-objective instances
_C3 = np.array(
    [
        [1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, 0.0, 1.0],
        [1.0 / math.sqrt(3.0)] * 3,
    ]
)


def _difficulty_params(triplet):
    eta, zeta, gamma = triplet
    b = 2.0 * eta - 1.0
    d = 0.5 if zeta > 0.0 else 0.0
    e = d - math.log(zeta) if zeta > 0.0 else 1e30
    r = 0.5 * gamma
    return b, d, e, r, zeta


def _band_constraint(g, d, e, zeta):
    if zeta == 1.0:
        return np.abs(g - e) - 1e-4
    return -(e - g) * (g - d)


def _ellipse_constraints(f, r):
    ct, st = np.cos(_THETA), np.sin(_THETA)
    dx = f[:, 0:1] - _P_K[None, :]
    dy = f[:, 1:2] - _Q_K[None, :]
    e1 = dx * ct - dy * st
    e2 = dx * st + dy * ct
    return r - e1 * e1 / _A_K - e2 * e2 / _B_K


def _sphere_constraints(f, r):
    d2 = np.sum((f[:, None, :] - _C3[None, :, :]) ** 2, axis=2)
    return r * r - d2


def _g_linked(x):
    return np.sum((x[:, 1:] - np.sin(0.5 * np.pi * x[:, :1])) ** 2, axis=1)


def _g_multimodal(x, start):
    z = x[:, start:] - 0.5
    n_tail = x.shape[1] - start
    return n_tail + np.sum(z * z - np.cos(20.0 * np.pi * z), axis=1)


def _g_linked_multimodal(x):
    s = np.sin(0.25 * np.pi * (x[:, :1] + x[:, 1:2]))
    z = x[:, 2:] - s
    n_tail = x.shape[1] - 2
    return n_tail + np.sum(z * z - np.cos(20.0 * np.pi * z), axis=1)


def _bi_objectives(x, g, shape):
    x1 = x[:, 0]
    f1 = x1 + g
    if shape == "convex":
        f2 = 1.0 - x1 * x1 + g
    elif shape == "concave":
        f2 = 1.0 - np.sqrt(x1) + g
    else:  # wavy
        f2 = 1.0 - np.sqrt(x1) + 0.5 * np.abs(np.sin(5.0 * np.pi * x1)) + g
    return np.column_stack([f1, f2])


def _tri_objectives(x, g, shape):
    x1, x2 = x[:, 0], x[:, 1]
    if shape == "linear":
        f = np.column_stack([x1 * x2, x2 * (1.0 - x1), 1.0 - x2])
    else:  # spherical
        f = np.column_stack(
            [
                np.cos(0.5 * np.pi * x1) * np.cos(0.5 * np.pi * x2),
                np.cos(0.5 * np.pi * x1) * np.sin(0.5 * np.pi * x2),
                np.sin(0.5 * np.pi * x1),
            ]
        )
    return f + g[:, None]


def _make_bi(shape, gfun, triplet):
    b, d, e, r, zeta = _difficulty_params(triplet)

    def evaluator(x):
        g = gfun(x)
        f = _bi_objectives(x, g, shape)
        c1 = b - np.sin(20.0 * np.pi * x[:, 0])
        c2 = _band_constraint(g, d, e, zeta)
        return f, np.column_stack([c1, c2, _ellipse_constraints(f, r)])

    return evaluator


def _make_tri(shape, gfun, triplet):
    b, d, e, r, zeta = _difficulty_params(triplet)

    def evaluator(x):
        g = gfun(x)
        f = _tri_objectives(x, g, shape)
        c1 = b - np.sin(20.0 * np.pi * x[:, 0])
        c2 = b - np.cos(20.0 * np.pi * x[:, 1])
        c3 = _band_constraint(g, d, e, zeta)
        return f, np.column_stack([c1, c2, c3, _sphere_constraints(f, r)])

    return evaluator


_SPECS = {
    1: (2, 11, "convex", _g_linked, _make_bi),
    2: (2, 11, "concave", _g_linked, _make_bi),
    3: (2, 11, "wavy", _g_linked, _make_bi),
    4: (2, 11, "convex", lambda x: _g_multimodal(x, 1), _make_bi),
    5: (2, 11, "concave", lambda x: _g_multimodal(x, 1), _make_bi),
    6: (2, 11, "wavy", lambda x: _g_multimodal(x, 1), _make_bi),
    7: (3, 7, "linear", lambda x: _g_multimodal(x, 2), _make_tri),
    8: (3, 7, "spherical", lambda x: _g_multimodal(x, 2), _make_tri),
    9: (3, 7, "spherical", _g_linked_multimodal, _make_tri),
}


def make(index: int, dim: int, triplet=DEFAULT_TRIPLET) -> dict:
    m, p, shape, gfun, builder = _SPECS[index]
    if dim < m + 1:
        raise ValueError(f"DASCMOP{index} needs at least {m + 1} variables")
    return {
        "n": dim,
        "m": m,
        "p": p,
        "lower": np.zeros(dim),
        "upper": np.ones(dim),
        "evaluator": builder(shape, gfun, triplet),
        "metadata": {"suite": "DASCMOP", "difficulty_triplet": tuple(triplet)},
    }
