"""Numeric ground truth: trace branches near a point and estimate limits.

Nothing here calls the symbolic solvers.  Samples are found on circles
(plane) or spheres (space) of radius ``h_j = h0 2^-j`` around the point, so
each trace approaches the point along one branch.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.optimize import brentq, root

from .errors import InsufficientSamples, NoBranch
from .ratpoly import Poly

__all__ = [
    "TraceSample",
    "trace_plane_branch",
    "estimate_curvature",
    "trace_space_branch",
    "estimate_frenet",
    "curvature_sequence",
    "normal_section_curvatures",
    "INF_THRESHOLD",
]

INF_THRESHOLD = 1e6
CONE = math.radians(30.0)
GRID = 361


@dataclass(frozen=True)
class TraceSample:
    point: tuple
    h: float
    residual: float


def _recenter(F: Poly, P: Sequence) -> tuple[Poly, int, float]:
    """Shifted polynomial with float-noise terms dropped, its order, and scale."""
    Fs = F.shift(P)
    scale = max(1.0, Fs.max_abs_coeff())
    if not Fs.is_exact:
        Fs = Fs.chop(1e-14 * scale)
    return Fs, Fs.min_degree(), scale


def _unit(v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    return v / np.linalg.norm(v)


def _residual(F: Poly, point) -> float:
    return abs(F.evaluate(point))


# ---------------------------------------------------------------------------
# plane


class _VecPoly:
    """Real polynomial evaluated on numpy arrays (coefficients' real parts)."""

    def __init__(self, F: Poly):
        self.exps = np.array(list(F.terms.keys()), dtype=int).reshape(-1, F.nvars)
        self.coeffs = np.array([complex(c).real for c in F.terms.values()])

    def __call__(self, *xs):
        out = np.zeros(np.broadcast(*xs).shape)
        for e, c in zip(self.exps, self.coeffs):
            t = c
            for x, k in zip(xs, e):
                if k:
                    t = t * x ** k
            out = out + t
        return out


# offsets from the direction: uniform plus log-spaced near zero, so roots
# that approach each other like h or sqrt(h) stay separated on the grid
_GEOM = np.geomspace(1e-14, 1.0, 20000)
_OFFSETS = np.unique(np.concatenate([
    -CONE * _GEOM[::-1], [0.0], CONE * _GEOM, np.linspace(-CONE, CONE, GRID)]))


def _circle_roots(vp: _VecPoly, r: int, h: float, theta0: float) -> list[float]:
    def f(th):
        return float(vp(np.array(h * math.cos(th)), np.array(h * math.sin(th)))) / h ** r

    grid = theta0 + _OFFSETS
    vals = vp(h * np.cos(grid), h * np.sin(grid)) / h ** r
    roots = list(grid[vals == 0.0])
    idx = np.nonzero(vals[:-1] * vals[1:] < 0)[0]
    for i in idx:
        roots.append(brentq(f, grid[i], grid[i + 1], xtol=1e-300, rtol=4 * np.finfo(float).eps, maxiter=200))
    return roots


def trace_plane_branch(F: Poly, P: Sequence, direction: Sequence, h0: float = 1e-2, steps: int = 12,
                       which: int = 0) -> list[TraceSample]:
    """Samples of the branch of ``F = 0`` leaving ``P`` along ``direction``.

    On each circle ``|x - P| = h_j`` the zeros of ``F`` within 30 degrees of the
    direction are located by sign changes and refined by Brent's method.
    ``which`` picks among several zeros, ordered by signed angle from the
    direction.

    Raises
    ------
    NoBranch
        If none of the first three circles meets the curve inside the cone.
    """
    Fs, r, scale = _recenter(F, P)
    vp = _VecPoly(Fs)
    d = _unit(direction)
    theta0 = math.atan2(d[1], d[0])
    base = np.array([float(c) for c in P])
    out = []
    misses = 0
    for j in range(steps):
        h = h0 * 2.0 ** (-j)
        roots = _circle_roots(vp, r, h, theta0)
        if len(roots) <= which:
            if j <= 2 and not out:
                misses += 1
            continue
        th = sorted(roots, key=lambda t: t - theta0)[which]
        local = (h * math.cos(th), h * math.sin(th))
        res = abs(Fs.evaluate(local))
        out.append(TraceSample(tuple(base + np.array(local)), h, res))
    if misses >= 3 or not out:
        raise NoBranch(f"no real branch along {tuple(float(c) for c in d)} near the point")
    return out


def _menger(a, b, c) -> float:
    ab, ac, bc = b - a, c - a, c - b
    cross = abs(ab[0] * ac[1] - ab[1] * ac[0])
    den = np.linalg.norm(ab) * np.linalg.norm(ac) * np.linalg.norm(bc)
    return 2.0 * cross / den


def estimate_curvature(samples: Sequence[TraceSample], P: Sequence) -> float:
    """Extrapolated curvature at ``P`` from circle fits through ``P``.

    ``k_j`` is the curvature of the circle through ``P`` and samples ``j`` and
    ``j + 1``; the last two values are combined as ``2 k_last - k_prev``.
    Returns ``inf`` above :data:`INF_THRESHOLD`.
    """
    if len(samples) < 4:
        raise InsufficientSamples(f"need at least 4 samples, got {len(samples)}")
    p = np.array([float(c) for c in P])
    pts = [np.array(s.point) for s in samples]
    ks = [_menger(p, pts[j], pts[j + 1]) for j in range(len(pts) - 1)]
    k = 2.0 * ks[-1] - ks[-2]
    k = abs(k)
    return math.inf if k > INF_THRESHOLD else k


def curvature_sequence(samples: Sequence[TraceSample], P: Sequence) -> list[float]:
    """The unextrapolated circle-fit curvatures, finest last."""
    p = np.array([float(c) for c in P])
    pts = [np.array(s.point) for s in samples]
    return [_menger(p, pts[j], pts[j + 1]) for j in range(len(pts) - 1)]


# ---------------------------------------------------------------------------
# space


def _perp_basis(d: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    k = int(np.argmin(np.abs(d)))
    e = np.zeros(3)
    e[k] = 1.0
    a = np.cross(d, e)
    a /= np.linalg.norm(a)
    b = np.cross(d, a)
    return a, b


def trace_space_branch(F: Poly, G: Poly, P: Sequence, direction: Sequence, h0: float = 1e-2,
                       steps: int = 12) -> list[TraceSample]:
    """Samples of the branch of ``F = G = 0`` leaving ``P`` along ``direction``.

    Each sample solves both equations on the sphere ``|x - P| = h_j``,
    parametrized by offsets ``(a, b)`` normal to the direction; the previous
    solution (scaled by 1/2) seeds the next radius.
    """
    Fs, rF, sF = _recenter(F, P)
    Gs, rG, sG = _recenter(G, P)
    d = _unit(direction)
    e1, e2 = _perp_basis(d)
    base = np.array([float(c) for c in P])
    out = []
    guess = np.zeros(2)
    misses = 0
    for j in range(steps):
        h = h0 * 2.0 ** (-j)

        def local(ab, h=h):
            u = d + ab[0] * e1 + ab[1] * e2
            return h * u / np.linalg.norm(u)

        def eqs(ab, h=h):
            x = local(ab)
            return [Fs.evaluate(x).real / h ** rF, Gs.evaluate(x).real / h ** rG]

        sol = root(eqs, guess, method="hybr", options={"xtol": 1e-15})
        ab = sol.x
        ok = sol.success or max(abs(v) for v in eqs(ab)) < 1e-12
        angle = math.atan(np.linalg.norm(ab))
        if not ok or angle > CONE:
            if not out and j <= 2:
                misses += 1
            continue
        x = local(ab)
        res = max(abs(Fs.evaluate(x)), abs(Gs.evaluate(x)))
        out.append(TraceSample(tuple(base + x), h, res))
        guess = ab / 2.0
    if misses >= 3 or not out:
        raise NoBranch(f"no real branch along {tuple(float(c) for c in d)} near the point")
    return out


def _jet_from_window(P: np.ndarray, window: Sequence[TraceSample]):
    hs = np.array([0.0] + [s.h for s in window])
    H = hs.max()
    xs = np.vstack([P] + [np.array(s.point) for s in window])
    deg = len(hs) - 1
    V = np.vander(hs / H, deg + 1, increasing=True)
    coef = np.linalg.solve(V, xs)
    d1 = coef[1] / H
    d2 = 2.0 * coef[2] / H ** 2
    d3 = 6.0 * coef[3] / H ** 3
    return d1, d2, d3


def _frenet(d1, d2, d3):
    c = np.cross(d1, d2)
    nc = np.linalg.norm(c)
    k = nc / np.linalg.norm(d1) ** 3
    tau = float(np.dot(c, d3) / nc ** 2) if nc > 0 else 0.0
    return k, tau


def estimate_frenet(samples: Sequence[TraceSample], P: Sequence) -> tuple[float, float]:
    """Extrapolated ``(k, tau)`` at ``P`` from the traced samples.

    ``x(h)`` is interpolated by a quintic through ``P`` and five consecutive
    samples; derivatives at ``h = 0`` give Frenet estimates for each window.
    The two finest windows are combined by Richardson steps for errors of
    order ``h^4`` (curvature) and ``h^3`` (torsion).
    """
    if len(samples) < 6:
        raise InsufficientSamples(f"need at least 6 samples, got {len(samples)}")
    p = np.array([float(c) for c in P])
    ests = [_frenet(*_jet_from_window(p, samples[i:i + 5])) for i in range(len(samples) - 4)]
    (k0, t0), (k1, t1) = ests[-2], ests[-1]
    k = (16.0 * k1 - k0) / 15.0
    tau = (8.0 * t1 - t0) / 7.0
    return abs(k), tau


# ---------------------------------------------------------------------------
# surface sections


def _section(F: Poly, P: Sequence, e: np.ndarray, n: np.ndarray) -> Poly:
    ring = ("a", "b")
    a, b = Poly.gens(ring)
    Fs = F.shift(P)
    maps = [a * float(e[i]) + b * float(n[i]) for i in range(3)]
    return Fs.compose(maps, ring)


def _signed_section_curvature(F, P, e, n, h0, steps, which) -> float:
    sec = _section(F, P, e, n)
    samples = trace_plane_branch(sec, (0, 0), (1.0, 0.0), h0, steps, which)
    k = estimate_curvature(samples, (0, 0))
    side = np.sign(np.mean([s.point[1] for s in samples]))
    return float(k * (side if side != 0 else 1.0))


def _spread_angles(e1, e2, avoid, span=(0.0, 40.0, 80.0)) -> tuple:
    """Rotate ``span`` in the ``(e1, e2)`` plane to stay far from ``avoid`` lines."""
    phis = []
    for a in avoid:
        a = np.asarray(a, dtype=float)
        x, y = float(np.dot(a, e1)), float(np.dot(a, e2))
        if math.hypot(x, y) > 1e-12:
            phis.append(math.degrees(math.atan2(y, x)))
    if not phis:
        return tuple(span)

    def gap(t):
        return min(min(abs((t + s - p) % 180.0), 180.0 - abs((t + s - p) % 180.0)) for s in span for p in phis)

    best = max(range(180), key=gap)
    return tuple(best + s for s in span)


def normal_section_curvatures(F: Poly, P: Sequence, normal: Sequence, h0: float = 1e-2, steps: int = 14,
                              frame=None, angles=None, which: int = 0, avoid=()) -> tuple[float, float]:
    """``(K_G, K_M)`` from signed curvatures of three normal sections.

    The sheet is cut by planes through ``P`` spanned by ``normal`` and the
    in-plane directions ``cos(t) e1 + sin(t) e2`` for the given angles
    (degrees).  With ``k(t) = L cos^2 t + 2 M cos t sin t + N sin^2 t`` the
    three values determine the second fundamental form in the orthonormal
    frame ``(e1, e2)``; signs refer to ``normal``.  Pass ``frame`` and
    ``angles`` to keep other sheets through ``P`` out of the 30 degree cone,
    or list the tangent directions of other sheets in ``avoid`` to have the
    angles chosen automatically.
    """
    n = _unit(normal)
    if frame is None:
        e1, e2 = _perp_basis(n)
    else:
        e1 = _unit(frame[0])
        e2 = _unit(np.cross(n, e1))
        if np.dot(e2, frame[1]) < 0:
            e2 = -e2
    if angles is None:
        angles = _spread_angles(e1, e2, avoid) if len(avoid) else (0.0, 45.0, 90.0)
    rows, ks = [], []
    for deg in angles:
        t = math.radians(deg)
        c, s = math.cos(t), math.sin(t)
        rows.append([c * c, 2 * c * s, s * s])
        ks.append(_signed_section_curvature(F, P, c * e1 + s * e2, n, h0, steps, which))
    L, M, N = np.linalg.solve(np.array(rows), np.array(ks))
    return float(L * N - M * M), float((L + N) / 2.0)
