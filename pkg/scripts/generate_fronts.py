#!/usr/bin/env python3
"""Generate the bundled reference fronts from each problem's analytic CPF.

Writes plain-text tables (one objective vector per line) into
src/pscmoea/problems/fronts/.  Curves are sampled densely at the optimal
distance value, infeasible stretches are either deleted or pushed radially
onto the active constraint boundary, and the result is non-dominance
filtered and thinned to about a thousand points.
"""

import math
from itertools import combinations
from pathlib import Path

import numpy as np

OUT = Path(__file__).resolve().parent.parent / "src" / "pscmoea" / "problems" / "fronts"
TARGET = 1200
THETA = -0.25 * math.pi
ALPHA = 0.25 * math.pi


def nd_filter(f):
    f = np.asarray(f, dtype=np.float64)
    n = f.shape[0]
    keep = np.ones(n, dtype=bool)
    order = np.lexsort(f.T[::-1])
    f = f[order]
    for i in range(n):
        if not keep[i]:
            continue
        dominated = np.all(f[i] <= f, axis=1) & np.any(f[i] < f, axis=1)
        keep &= ~dominated
        keep[i] = True
    return f[keep]


def thin(f, target=TARGET):
    f = nd_filter(f)
    f = f[np.lexsort(f.T[::-1])]
    if f.shape[0] <= target:
        return f
    idx = np.unique(np.linspace(0, f.shape[0] - 1, target).round().astype(int))
    return f[idx]


def push_out(f, violation, scale=1.0002, center=0.0, max_iter=60000):
    """Scale points radially about `center` until `violation(f) <= 0` rowwise.

    Rays whose feasible band pinches to zero width never converge; those
    stragglers are dropped rather than forced.
    """
    f = np.array(f, dtype=np.float64)
    for _ in range(max_iter):
        bad = violation(f) > 0.0
        if not bad.any():
            return f
        f[bad] = (f[bad] - center) * scale + center
    return f[violation(f) <= 0.0]


def simplex_lattice(h, m):
    pts = []
    for bars in combinations(range(h + m - 1), m - 1):
        prev = -1
        comp = []
        for b in bars:
            comp.append(b - prev - 1)
            prev = b
        comp.append(h + m - 2 - prev)
        pts.append(comp)
    return np.array(pts, dtype=np.float64) / h


def sphere_lattice(h=44):
    w = simplex_lattice(h, 3)
    w = w[np.linalg.norm(w, axis=1) > 0]
    return w / np.linalg.norm(w, axis=1)[:, None]


# ---------------------------------------------------------------- MW series


def mw_l(f):
    return math.sqrt(2.0) * f[:, 1] - math.sqrt(2.0) * f[:, 0]


def mw1():
    x = np.linspace(0, 1, 20001)
    f = np.column_stack([x, 1 - 0.85 * x])
    c = f[:, 0] + f[:, 1] - 1 - 0.5 * np.sin(2 * np.pi * mw_l(f)) ** 8
    return f[c <= 0]


def mw2():
    x = np.linspace(0, 1, 20001)
    return np.column_stack([x, 1 - x])


def mw3():
    x = np.linspace(0, 1, 20001)
    f = np.column_stack([x, 1 - x])

    def viol(f):
        l = mw_l(f)
        c1 = f[:, 0] + f[:, 1] - 1.05 - 0.45 * np.sin(0.75 * np.pi * l) ** 6
        c2 = 0.85 - f[:, 0] - f[:, 1] + 0.3 * np.sin(0.75 * np.pi * l) ** 2
        return np.maximum(c1, c2)

    return push_out(f, viol)


def mw4():
    return simplex_lattice(44, 3)  # constraint satisfied on the full simplex


def mw5():
    th = np.linspace(0, np.pi / 2, 40001)
    l2 = 0.5 * np.pi - 2 * np.abs(th - 0.25 * np.pi)
    s = np.sin(6 * l2**3)
    r = np.maximum(1 + 0.5 * s, 1 - 0.45 * s)
    upper = 1.7 - 0.2 * np.sin(2 * th)
    ok = r <= upper
    return np.column_stack([r[ok] * np.cos(th[ok]), r[ok] * np.sin(th[ok])])


def mw6():
    th = np.linspace(0, np.pi / 2, 20001)
    f = 1.1 * np.column_stack([np.cos(th), np.sin(th)])
    l = np.cos(6 * np.arctan2(f[:, 1], f[:, 0]) ** 4) ** 10
    c = (f[:, 0] / (1 + 0.15 * l)) ** 2 + (f[:, 1] / (1 + 0.75 * l)) ** 2 - 1
    return f[c <= 0]


def mw7():
    th = np.linspace(0, np.pi / 2, 20001)
    r = np.maximum(1.0, 1.15 - 0.2 * np.sin(4 * th) ** 8)
    upper = 1.2 + np.abs(0.4 * np.sin(4 * th) ** 16)
    ok = r <= upper
    return np.column_stack([r[ok] * np.cos(th[ok]), r[ok] * np.sin(th[ok])])


def mw8():
    v = sphere_lattice()
    l = np.arcsin(np.clip(v[:, 2], -1, 1))
    ok = 1.25 - 0.5 * np.sin(6 * l) ** 2 >= 1.0
    return v[ok]


def mw9():
    x = np.linspace(0, 1, 20001)
    f = np.column_stack([x, 1 - x**0.6])

    def viol(f):
        t1 = (1 - 0.64 * f[:, 0] ** 2 - f[:, 1]) * (1 - 0.36 * f[:, 0] ** 2 - f[:, 1])
        t2 = 1.35**2 - (f[:, 0] + 0.35) ** 2 - f[:, 1]
        t3 = 1.15**2 - (f[:, 0] + 0.15) ** 2 - f[:, 1]
        return np.minimum(t1, t2 * t3)

    return push_out(f, viol)


def mw10():
    x = np.linspace(0, 1, 20001)
    f = np.column_stack([x, 1 - x**2])

    def viol(f):
        f1, f2 = f[:, 0], f[:, 1]
        c1 = -(2 - 4 * f1**2 - f2) * (2 - 8 * f1**2 - f2)
        c2 = (2 - 2 * f1**2 - f2) * (2 - 16 * f1**2 - f2)
        c3 = (1 - f1**2 - f2) * (1.2 - 1.2 * f1**2 - f2)
        return np.maximum(c1, np.maximum(c2, c3))

    return push_out(f, viol)


def mw11():
    th = np.linspace(0, np.pi / 2, 20001)
    f = math.sqrt(2.0) * np.column_stack([np.cos(th), np.sin(th)])

    def viol(f):
        f1, f2 = f[:, 0], f[:, 1]
        c1 = -(3 - f1**2 - f2) * (3 - 2 * f1**2 - f2)
        c2 = (3 - 0.625 * f1**2 - f2) * (3 - 7 * f1**2 - f2)
        c3 = -(1.62 - 0.18 * f1**2 - f2) * (1.125 - 0.125 * f1**2 - f2)
        c4 = (2.07 - 0.23 * f1**2 - f2) * (0.63 - 0.07 * f1**2 - f2)
        return np.maximum.reduce([c1, c2, c3, c4])

    return push_out(f, viol)


def mw12():
    x = np.linspace(0, 1, 20001)
    f = np.column_stack([x, 0.85 - 0.8 * x - 0.08 * np.abs(np.sin(3.2 * np.pi * x))])

    def viol(f):
        f1, f2 = f[:, 0], f[:, 1]
        c1 = (
            1 - 0.8 * f1 - f2 + 0.08 * np.sin(2 * np.pi * (f2 - f1 / 1.5))
        ) * (1.8 - 1.125 * f1 - f2 + 0.08 * np.sin(2 * np.pi * (f2 / 1.8 - f1 / 1.6)))
        c2 = -(
            1 - 0.625 * f1 - f2 + 0.08 * np.sin(2 * np.pi * (f2 - f1 / 1.6))
        ) * (1.4 - 0.875 * f1 - f2 + 0.08 * np.sin(2 * np.pi * (f2 / 1.4 - f1 / 1.6)))
        return np.maximum(c1, c2)

    return push_out(f, viol)


def mw13():
    t = np.linspace(0, 2.25, 20001)
    f = np.column_stack([t, 5 - np.exp(t) - np.abs(0.5 * np.sin(3 * np.pi * t))])

    def viol(f):
        f1, f2 = f[:, 0], f[:, 1]
        s = 0.5 * np.sin(3 * np.pi * f1)
        c1 = (5 - np.exp(f1) - s - f2) * (5 - (1 + 0.4 * f1) - s - f2)
        c2 = -(5 - (1 + f1 + 0.5 * f1**2) - s - f2) * (5 - (1 + 0.7 * f1) - s - f2)
        return np.maximum(c1, c2)

    return push_out(f, viol)


def mw14():
    a = np.linspace(0, 1.5, 61)
    g1, g2 = np.meshgrid(a, a)
    head = np.column_stack([g1.ravel(), g2.ravel()])
    wave = 1.5 * np.sin(1.1 * np.pi * head**2)
    fm = 0.5 * np.sum(6 - np.exp(head) - wave, axis=1)
    return np.column_stack([head, fm])


# ----------------------------------------------------------- LIRCMOP series


def _ellipse_violation(p, q, a, b, r=0.1):
    ct, st = math.cos(THETA), math.sin(THETA)

    def viol(f):
        worst = np.full(f.shape[0], -np.inf)
        for pk, qk, ak, bk in zip(p, q, a, b):
            dx, dy = f[:, 0] - pk, f[:, 1] - qk
            e1 = dx * ct - dy * st
            e2 = dx * st + dy * ct
            worst = np.maximum(worst, r - e1**2 / ak**2 - e2**2 / bk**2)
        return worst

    return viol


def _wave_violation(level):
    ca, sa = math.cos(ALPHA), math.sin(ALPHA)

    def viol(f):
        return level - (f[:, 0] * sa + f[:, 1] * ca) + np.sin(
            4 * np.pi * (f[:, 0] * ca - f[:, 1] * sa)
        )

    return viol


def lircmop1():
    x = np.linspace(0, 1, 20001)
    return np.column_stack([x, 1 - x**2]) + 0.5


def lircmop2():
    x = np.linspace(0, 1, 20001)
    return np.column_stack([x, 1 - np.sqrt(x)]) + 0.5


def lircmop3():
    x = np.linspace(0, 1, 20001)
    keep = np.sin(20 * np.pi * x) >= 0.5
    return np.column_stack([x[keep], 1 - x[keep] ** 2]) + 0.5


def lircmop4():
    x = np.linspace(0, 1, 20001)
    keep = np.sin(20 * np.pi * x) >= 0.5
    return np.column_stack([x[keep], 1 - np.sqrt(x[keep])]) + 0.5


def lircmop5():
    x = np.linspace(0, 1, 20001)
    f = np.column_stack([x, 1 - np.sqrt(x)]) + 0.7057
    v = _ellipse_violation((1.6, 2.5), (1.6, 2.5), (2, 2), (4, 8))
    return f[v(f) <= 0]


def lircmop6():
    x = np.linspace(0, 1, 20001)
    f = np.column_stack([x, 1 - x**2]) + 0.7057
    v = _ellipse_violation((1.8, 2.8), (1.8, 2.8), (2, 2), (8, 8))
    return f[v(f) <= 0]


def lircmop7():
    x = np.linspace(0, 1, 20001)
    f = np.column_stack([x, 1 - np.sqrt(x)]) + 0.7057
    v = _ellipse_violation((1.2, 2.25, 3.5), (1.2, 2.25, 3.5), (2, 2.5, 2.5), (6, 12, 10))
    return push_out(f, v, center=0.7057)


def lircmop8():
    x = np.linspace(0, 1, 20001)
    f = np.column_stack([x, 1 - x**2]) + 0.7057
    v = _ellipse_violation((1.2, 2.25, 3.5), (1.2, 2.25, 3.5), (2, 2.5, 2.5), (6, 12, 10))
    return push_out(f, v, center=0.7057)


def lircmop9():
    x = np.linspace(0, 1, 20001)
    f = 1.7057 * np.column_stack([x, 1 - x**2])
    e = _ellipse_violation((1.4,), (1.4,), (1.5,), (6.0,))
    w = _wave_violation(2.0)
    keep = (e(f) <= 0) & (w(f) <= 0)
    return np.vstack([f[keep], [[0.0, 2.182], [1.856, 0.0]]])


def lircmop10():
    x = np.linspace(0, 1, 20001)
    f = 1.7057 * np.column_stack([x, 1 - np.sqrt(x)])
    e = _ellipse_violation((1.1,), (1.2,), (2.0,), (4.0,))
    w = _wave_violation(1.0)
    keep = (e(f) <= 0) & (w(f) <= 0)
    return np.vstack([f[keep], [[1.747, 0.0]]])


def lircmop11():
    return np.array(
        [
            [1.3965, 0.1591],
            [1.0430, 0.5127],
            [0.6894, 0.8662],
            [0.3359, 1.2198],
            [0.0106, 1.6016],
            [0.0, 2.1910],
            [1.8730, 0.0],
        ]
    )


def lircmop12():
    return np.array(
        [
            [1.6794, 0.4419],
            [1.3258, 0.7955],
            [0.9723, 1.1490],
            [2.0320, 0.0990],
            [0.6187, 1.5026],
            [0.2652, 1.8562],
            [0.0, 2.2580],
            [2.5690, 0.0],
        ]
    )


def lircmop13():
    return 1.7057 * sphere_lattice()


def lircmop14():
    return math.sqrt(3.0625) * sphere_lattice()


# ----------------------------------------------------------- DASCMOP series
# canonical difficulty triplet (0.5, 0.5, 0.5): strips at sin >= 0,
# distance band starting at 0.5, exclusion size r = 0.25

DAS_D = 0.5
DAS_R = 0.25
DAS_P = np.array([0.0, 1.0, 0.0, 1.0, 2.0, 0.0, 1.0, 2.0, 3.0])
DAS_Q = np.array([1.5, 0.5, 2.5, 1.5, 0.5, 3.5, 2.5, 1.5, 0.5])
DAS_C3 = np.array(
    [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1 / math.sqrt(3)] * 3], dtype=np.float64
)


def _das_ellipse_ok(f):
    ct, st = math.cos(THETA), math.sin(THETA)
    ok = np.ones(f.shape[0], dtype=bool)
    for pk, qk in zip(DAS_P, DAS_Q):
        dx, dy = f[:, 0] - pk, f[:, 1] - qk
        e1 = dx * ct - dy * st
        e2 = dx * st + dy * ct
        ok &= e1**2 / 0.3 + e2**2 / 1.2 >= DAS_R
    return ok


def _das_bi(shape):
    x = np.linspace(0, 1, 40001)
    x = x[np.sin(20 * np.pi * x) >= 0.0]
    if shape == "convex":
        f2 = 1 - x**2
    elif shape == "concave":
        f2 = 1 - np.sqrt(x)
    else:
        f2 = 1 - np.sqrt(x) + 0.5 * np.abs(np.sin(5 * np.pi * x))
    f = np.column_stack([x, f2]) + DAS_D
    return f[_das_ellipse_ok(f)]


def _das_sphere_ok(f):
    d2 = np.sum((f[:, None, :] - DAS_C3[None, :, :]) ** 2, axis=2)
    return np.all(d2 >= DAS_R**2, axis=1)


def _das_tri(shape):
    a = np.linspace(0, 1, 301)
    ok1 = np.sin(20 * np.pi * a) >= 0.0
    ok2 = np.cos(20 * np.pi * a) >= 0.0
    x1, x2 = np.meshgrid(a[ok1], a[ok2])
    x1, x2 = x1.ravel(), x2.ravel()
    if shape == "linear":
        f = np.column_stack([x1 * x2, x2 * (1 - x1), 1 - x2])
    else:
        f = np.column_stack(
            [
                np.cos(0.5 * np.pi * x1) * np.cos(0.5 * np.pi * x2),
                np.cos(0.5 * np.pi * x1) * np.sin(0.5 * np.pi * x2),
                np.sin(0.5 * np.pi * x1),
            ]
        )
    f = f + DAS_D
    return f[_das_sphere_ok(f)]


GENERATORS = {
    "mw1": mw1, "mw2": mw2, "mw3": mw3, "mw4": mw4, "mw5": mw5, "mw6": mw6,
    "mw7": mw7, "mw8": mw8, "mw9": mw9, "mw10": mw10, "mw11": mw11,
    "mw12": mw12, "mw13": mw13, "mw14": mw14,
    "lircmop1": lircmop1, "lircmop2": lircmop2, "lircmop3": lircmop3,
    "lircmop4": lircmop4, "lircmop5": lircmop5, "lircmop6": lircmop6,
    "lircmop7": lircmop7, "lircmop8": lircmop8, "lircmop9": lircmop9,
    "lircmop10": lircmop10, "lircmop11": lircmop11, "lircmop12": lircmop12,
    "lircmop13": lircmop13, "lircmop14": lircmop14,
    "dascmop1": lambda: _das_bi("convex"),
    "dascmop2": lambda: _das_bi("concave"),
    "dascmop3": lambda: _das_bi("wavy"),
    "dascmop4": lambda: _das_bi("convex"),
    "dascmop5": lambda: _das_bi("concave"),
    "dascmop6": lambda: _das_bi("wavy"),
    "dascmop7": lambda: _das_tri("linear"),
    "dascmop8": lambda: _das_tri("spherical"),
    "dascmop9": lambda: _das_tri("spherical"),
}


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for name, gen in GENERATORS.items():
        pts = thin(gen())
        path = OUT / f"{name}.txt"
        np.savetxt(path, pts, fmt="%.10g")
        lo, hi = pts.min(axis=0), pts.max(axis=0)
        print(f"{name:10s} {pts.shape[0]:5d} pts  ideal={np.round(lo,3)} nadir={np.round(hi,3)}")


if __name__ == "__main__":
    main()
