"""Numeric kernels: univariate roots and small affine linear systems.

Exact inputs (Fractions) are handled exactly wherever possible: rational
roots come out as Fractions via the rational-root test and exact deflation,
and rational linear systems are eliminated fraction-free.  Floats enter only
for irrational or complex roots.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import NoConvergence

__all__ = [
    "roots_all",
    "aberth",
    "LinearSystem",
    "SolveResult",
    "solve_affine",
    "system_from_polys",
    "CLUSTER_TOL",
]

CLUSTER_TOL = 1e-8
RESIDUAL_TOL = 1e-12
RANK_TOL = 1e-10


# ---------------------------------------------------------------------------
# exact univariate helpers (ascending coefficient lists of Fractions)

def _trim(p: list) -> list:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _deriv(p):
    return [p[k] * k for k in range(1, len(p))]


def _divmod(a, b):
    a = _trim(a)
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    lb = b[-1]
    while len(r) >= len(b) and r:
        k = len(r) - len(b)
        c = r[-1] / lb
        q[k] = c
        for i, bi in enumerate(b):
            r[k + i] -= c * bi
        r = _trim(r)
    return q, r


def _gcd(a, b):
    a, b = _trim(a), _trim(b)
    while b:
        _, r = _divmod(a, b)
        a, b = b, r
    if not a:
        return a
    lead = a[-1]
    return [c / lead for c in a]


def _squarefree(p):
    """Yun's algorithm: list of (factor, multiplicity), factors monic."""
    p = _trim(p)
    lead = p[-1]
    p = [c / lead for c in p]
    out = []
    dp = _deriv(p)
    a = _gcd(p, dp)
    b, _ = _divmod(p, a)
    c, _ = _divmod(dp, a)
    d = [ci - bi for ci, bi in zip(_pad(c, len(_deriv(b))), _pad(_deriv(b), len(c)))]
    i = 1
    while len(_trim(b)) > 1:
        a = _gcd(b, d)
        if len(_trim(a)) > 1:
            out.append((a, i))
        b, _ = _divmod(b, a)
        c, _ = _divmod(d, a)
        db = _deriv(b)
        n = max(len(c), len(db))
        d = [x - y for x, y in zip(_pad(c, n), _pad(db, n))]
        i += 1
    return out


def _pad(p, n):
    return list(p) + [Fraction(0)] * (n - len(p))


def _divisors(n: int, cap: int = 10**7) -> list[int] | None:
    n = abs(n)
    if n == 0:
        return [0]
    if n > cap * cap:
        return None
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
        if d > cap:
            return None
    return small + large[::-1]


def _rational_roots(p: list) -> list[Fraction]:
    """Rational roots of a square-free rational polynomial with p(0) != 0."""
    den = 1
    for c in p:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in p]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    ints = [c // g for c in ints]
    a0, an = ints[0], ints[-1]
    ps = _divisors(a0)
    qs = _divisors(an)
    if ps is None or qs is None:
        return []
    found = []
    for q in qs:
        for pnum in ps:
            for s in (1, -1):
                r = Fraction(s * pnum, q)
                if r in found:
                    continue
                if _eval_exact(p, r) == 0:
                    found.append(r)
    return found


def _eval_exact(p, x):
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


# ---------------------------------------------------------------------------
# floating root finding

def _horner(coeffs: np.ndarray, z):
    """Evaluate ascending-coefficient polynomial and derivative at z."""
    p = np.zeros_like(z, dtype=complex)
    dp = np.zeros_like(z, dtype=complex)
    for c in coeffs[::-1]:
        dp = dp * z + p
        p = p * z + c
    return p, dp


def aberth(coeffs: Sequence[complex], max_iter: int = 500) -> np.ndarray:
    """All complex roots of a polynomial by Aberth simultaneous iteration.

    Converged when every residual satisfies
    ``|p(z)| <= 1e-12 * ||p||_1 * max(1, |z|)^deg``.
    """
    c = np.asarray([complex(x) for x in coeffs], dtype=complex)
    while len(c) and c[-1] == 0:
        c = c[:-1]
    n = len(c) - 1
    if n < 1:
        return np.zeros(0, dtype=complex)
    if n == 1:
        return np.array([-c[0] / c[1]])
    norm = float(np.sum(np.abs(c)))
    # Cauchy-type radius; start points spread on a circle with an offset angle
    radius = 1 + float(np.max(np.abs(c[:-1] / c[-1])))
    radius = min(radius, 1e6)
    geo = abs(c[0] / c[-1]) ** (1.0 / n) if c[0] != 0 else radius / 2
    r0 = max(min(geo, radius), 1e-6)
    angles = 2 * np.pi * np.arange(n) / n + 0.4
    z = r0 * np.exp(1j * angles)
    best = np.inf
    for it in range(max_iter):
        p, dp = _horner(c, z)
        bound = RESIDUAL_TOL * norm * np.maximum(1.0, np.abs(z)) ** n
        resid = np.abs(p)
        worst = float(np.max(resid / bound))
        best = min(best, worst)
        if worst <= 1.0:
            break
        z = z - _aberth_step(z, p, dp)
    else:
        raise NoConvergence("root iteration did not reach the residual bound", best_residual=best)
    # The bound is absolute near the origin, so tiny or clustered roots can
    # pass it early.  Keep iterating until the corrections stall; fall back
    # to the accepted iterate if that ever leaves the bound.
    accepted = z
    for _ in range(min(100, max_iter - it)):
        p, dp = _horner(c, z)
        step = _aberth_step(z, p, dp)
        z = z - step
        if np.all(np.abs(step) <= 1e-14 * np.maximum(np.abs(z), 1e-300)):
            break
    p, _ = _horner(c, z)
    if np.all(np.abs(p) <= RESIDUAL_TOL * norm * np.maximum(1.0, np.abs(z)) ** n) and np.all(np.isfinite(z)):
        return z
    return accepted


def _aberth_step(z, p, dp):
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        ratio = p / dp
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        inv = 1.0 / diff
        np.fill_diagonal(inv, 0.0)
        s = inv.sum(axis=1)
        step = ratio / (1 - ratio * s)
    bad = ~np.isfinite(step)
    step[bad] = 1e-3 * (1 + np.abs(z[bad]))
    step[p == 0] = 0
    return step


def _cluster(roots: list[complex], coeffs, tol: float = CLUSTER_TOL) -> list[tuple[complex, int]]:
    """Merge near-equal roots, summing multiplicities."""
    remaining = sorted(roots, key=lambda z: (z.real, z.imag))
    out = []
    used = [False] * len(remaining)
    for i, z in enumerate(remaining):
        if used[i]:
            continue
        group = [z]
        used[i] = True
        for j in range(i + 1, len(remaining)):
            if not used[j] and abs(remaining[j] - z) <= tol * max(1.0, abs(z)):
                group.append(remaining[j])
                used[j] = True
        out.append((complex(np.mean(group)), len(group)))
    # second pass: numerically multiple roots spread wider than tol
    c = np.asarray([complex(x) for x in coeffs])
    merged = True
    while merged and len(out) > 1:
        merged = False
        for i in range(len(out)):
            for j in range(i + 1, len(out)):
                (zi, mi), (zj, mj) = out[i], out[j]
                scale = max(1.0, abs(zi))
                if abs(zi - zj) > 1e-4 * scale:
                    continue
                m = mi + mj
                center = (zi * mi + zj * mj) / m
                if _is_multiple_root(c, center, m):
                    out[i] = (center, m)
                    out.pop(j)
                    merged = True
                    break
            if merged:
                break
    return out


def _is_multiple_root(c: np.ndarray, z: complex, m: int) -> bool:
    d = c.copy()
    n = len(c) - 1
    norm = float(np.sum(np.abs(c)))
    for k in range(m):
        val = sum(d[i] * z ** i for i in range(len(d)))
        # successive derivatives must all be small at a root of multiplicity m
        if abs(val) > 1e-6 * norm * math.factorial(k) * math.comb(n, k) * max(1.0, abs(z)) ** n:
            return False
        d = np.array([d[i] * i for i in range(1, len(d))])
    return True


def _snap_real(roots: list[tuple[complex, int]], real_coeffs: bool) -> list[tuple[complex, int]]:
    """For real polynomials: make near-real roots real and pair conjugates exactly."""
    if not real_coeffs:
        return roots
    out = []
    pending = []
    for z, m in roots:
        if abs(z.imag) <= 1e-9 * max(1.0, abs(z)):
            out.append((complex(z.real, 0.0), m))
        else:
            pending.append((z, m))
    upper = [(z, m) for z, m in pending if z.imag > 0]
    lower = [(z, m) for z, m in pending if z.imag < 0]
    for z, m in upper:
        # find its conjugate partner among the lower half-plane roots
        best = min(range(len(lower)), key=lambda k: abs(lower[k][0] - z.conjugate()), default=None)
        if best is not None and abs(lower[best][0] - z.conjugate()) <= 1e-6 * max(1.0, abs(z)):
            zl, _ = lower.pop(best)
            zc = complex((z.real + zl.real) / 2, (z.imag - zl.imag) / 2)
            out.append((zc, m))
            out.append((zc.conjugate(), m))
        else:
            out.append((z, m))
    out.extend(lower)
    return out


def _sort_key(item):
    z, _ = item
    z = complex(z)
    return (round(z.real, 12), round(z.imag, 12))


def roots_all(coeffs: Sequence, max_iter: int = 500) -> list[tuple[object, int]]:
    """All complex roots of ``sum(coeffs[k] * z**k)`` with multiplicities.

    Parameters
    ----------
    coeffs : sequence
        Ascending coefficients, Fractions/ints (exact path) or floats/complex.

    Returns
    -------
    list of (root, multiplicity)
        Rational roots of exact inputs are returned as ``Fraction``; all
        other roots are Python ``complex``.  Sorted by real then imaginary part.
    """
    exact = all(isinstance(c, (int, Fraction)) and not isinstance(c, bool) for c in coeffs)
    if exact:
        p = _trim([Fraction(c) for c in coeffs])
    else:
        p = list(coeffs)
        while p and p[-1] == 0:
            p.pop()
    if len(p) < 2:
        raise ValueError("roots_all needs a polynomial of degree >= 1")
    zero_mult = 0
    while p[0] == 0:
        p = p[1:]
        zero_mult += 1
    out: list = []
    if zero_mult:
        out.append((Fraction(0) if exact else 0j, zero_mult))
    if len(p) < 2:
        return sorted(out, key=_sort_key)
    if exact:
        for factor, mult in _squarefree(p):
            rest = factor
            for r in _rational_roots(factor):
                out.append((r, mult))
                rest, rem = _divmod(rest, [-r, Fraction(1)])
                assert not _trim(rem)
            if len(_trim(rest)) > 1:
                zs = aberth([float(c) for c in rest], max_iter=max_iter)
                roots = _cluster([complex(z) for z in zs], [float(c) for c in rest])
                roots = _snap_real(roots, True)
                out.extend((z, m * mult) for z, m in roots)
        return sorted(out, key=_sort_key)
    zs = aberth(p, max_iter=max_iter)
    roots = _cluster([complex(z) for z in zs], p)
    real_coeffs = all(abs(complex(c).imag) == 0 for c in p)
    roots = _snap_real(roots, real_coeffs)
    out.extend(roots)
    return sorted(out, key=_sort_key)


# ---------------------------------------------------------------------------
# affine linear systems

@dataclass
class LinearSystem:
    """Rows of ``matrix @ x = rhs`` with one label per unknown."""

    matrix: list
    rhs: list
    labels: tuple

    def __post_init__(self):
        self.labels = tuple(self.labels)
        width = len(self.labels)
        if any(len(row) != width for row in self.matrix):
            raise ValueError("inconsistent row widths")
        if len(self.rhs) != len(self.matrix):
            raise ValueError("rhs length does not match row count")


@dataclass
class SolveResult:
    """Outcome of :func:`solve_affine`.

    ``kind`` is ``"unique"``, ``"underdetermined"`` or ``"inconsistent"``.
    ``parametric`` maps each pivot label to ``(constant, {free_label: coef})``
    meaning ``label = constant + sum(coef * free)``; ``assignment`` is the
    particular solution with every free label set to zero.
    """

    kind: str
    assignment: dict = field(default_factory=dict)
    free: tuple = ()
    parametric: dict = field(default_factory=dict)

    @property
    def determined(self) -> dict:
        """Labels whose value does not depend on any free label."""
        return {k: c for k, (c, deps) in self.parametric.items() if not deps}


def _is_exact_entry(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def solve_affine(system: LinearSystem) -> SolveResult:
    """Solve and classify an affine system.

    Rational systems go through fraction-free (Bareiss) elimination so the
    consistency decision is exact; any float/complex entry switches to
    Gauss-Jordan with partial pivoting and a rank tolerance of 1e-10
    relative to the largest entry.
    """
    labels = system.labels
    rows = [list(r) + [b] for r, b in zip(system.matrix, system.rhs)]
    exact = all(_is_exact_entry(x) for row in rows for x in row)
    if exact:
        pivots, rref = _rref_exact(rows, len(labels))
        tol = 0
    else:
        pivots, rref, tol = _rref_float(rows, len(labels))
    n = len(labels)
    for row in rref[len(pivots):]:
        if abs(row[n]) > tol:
            return SolveResult("inconsistent")
    free = tuple(labels[j] for j in range(n) if j not in pivots)
    parametric = {}
    assignment = {}
    for i, pc in enumerate(pivots):
        row = rref[i]
        deps = {labels[j]: -row[j] for j in range(n) if j not in pivots and row[j] != 0 and abs(row[j]) > tol}
        parametric[labels[pc]] = (row[n], deps)
        assignment[labels[pc]] = row[n]
    for f in free:
        assignment[f] = Fraction(0) if exact else 0.0
    kind = "unique" if not free else "underdetermined"
    return SolveResult(kind, assignment, free, parametric)


def _rref_exact(rows, ncols):
    # scale rows to integers, then Bareiss forward elimination
    mat = []
    for row in rows:
        row = [Fraction(x) for x in row]
        den = 1
        for x in row:
            den = den * x.denominator // math.gcd(den, x.denominator)
        mat.append([int(x * den) for x in row])
    m = len(mat)
    pivots = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r >= m:
            break
        pr = next((i for i in range(r, m) if mat[i][c] != 0), None)
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        piv = mat[r][c]
        for i in range(r + 1, m):
            for j in range(c + 1, ncols + 1):
                mat[i][j] = (piv * mat[i][j] - mat[i][c] * mat[r][j]) // prev
            mat[i][c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    # the fraction-free pass leaves entries below the last pivot row possibly
    # unreduced in later columns; finish with exact back substitution
    fr = [[Fraction(x) for x in row] for row in mat]
    for i, c in enumerate(pivots):
        piv = fr[i][c]
        fr[i] = [x / piv for x in fr[i]]
    for i in range(len(pivots) - 1, -1, -1):
        c = pivots[i]
        for k in range(i):
            f = fr[k][c]
            if f:
                fr[k] = [a - f * b for a, b in zip(fr[k], fr[i])]
    return pivots, fr


def _rref_float(rows, ncols):
    a = np.array([[complex(x) for x in row] for row in rows], dtype=complex).reshape(len(rows), ncols + 1)
    m = a.shape[0]
    scale = float(np.max(np.abs(a[:, :ncols]))) if a.size and ncols else 0.0
    tol = RANK_TOL * max(scale, 1e-300)
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= m:
            break
        pr = r + int(np.argmax(np.abs(a[r:, c])))
        if abs(a[pr, c]) <= tol:
            a[r:, c] = 0
            continue
        a[[r, pr]] = a[[pr, r]]
        a[r] = a[r] / a[r, c]
        for i in range(m):
            if i != r and a[i, c] != 0:
                a[i] = a[i] - a[i, c] * a[r]
        pivots.append(c)
        r += 1
    rhs_scale = max(scale, float(np.max(np.abs(a[:, ncols]))) if m else 0.0, 1e-300)
    out = []
    real = bool(np.all(a.imag == 0))
    for row in a:
        out.append([float(x.real) if real else complex(x) for x in row])
    return pivots, out, RANK_TOL * rhs_scale


def system_from_polys(eqs, unknowns: Sequence[str]) -> LinearSystem:
    """Build ``A x = b`` from affine Polys ``e(x) = 0`` in the given unknowns."""
    matrix, rhs = [], []
    for e in eqs:
        row = []
        idx = {v: e.ring.index(v) for v in unknowns}
        lin = {}
        const = 0
        for exp, c in e.terms.items():
            d = sum(exp)
            if d == 0:
                const = c
            elif d == 1:
                j = exp.index(1)
                lin[e.ring[j]] = c
            else:
                raise ValueError("equation is not affine-linear")
        for v in unknowns:
            row.append(lin.get(v, Fraction(0)))
        extra = set(lin) - set(unknowns)
        if extra:
            raise ValueError(f"equation involves unlisted unknowns {sorted(extra)}")
        matrix.append(row)
        rhs.append(-const)
        del idx
    return LinearSystem(matrix, rhs, tuple(unknowns))
