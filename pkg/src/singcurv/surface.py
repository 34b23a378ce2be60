"""Gaussian and mean curvature per tangent plane of an algebraic surface.

For every tangent plane with normal ``n`` a quadratic patch

    r(s, t) = P + s u + t w + (alpha s^2/2 + beta s t + gamma t^2/2) n

is substituted into ``F``.  Tangential second-order terms only reparametrize
the patch, so three normal unknowns suffice.  The coefficients of total
degree ``r + 1`` in ``(s, t)`` are affine in ``(alpha, beta, gamma)`` and are
solved exactly when the data is rational.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import SingularPoint
from .numkit import solve_affine, system_from_polys
from .ratpoly import Poly, sqrt_exact
from .singular import ProjDirection, factor_linear_forms, lowest_form, shifted

__all__ = [
    "SurfaceJet",
    "FundamentalForms",
    "SurfaceBranch",
    "default_frame",
    "solve_plane_jet",
    "surface_branch_curvatures",
    "regular_surface_curvatures_implicit",
]

INF = math.inf
NAN = math.nan
UNKNOWNS = ("alpha", "beta", "gamma")
RING = ("s", "t") + UNKNOWNS


@dataclass(frozen=True)
class SurfaceJet:
    """Frame and normal accelerations of the quadratic patch.

    ``u, w, n`` need not be unit vectors; ``r_ss = alpha n`` etc.
    """

    u: tuple
    w: tuple
    n: tuple
    alpha: object
    beta: object
    gamma: object


@dataclass(frozen=True)
class FundamentalForms:
    """First and second fundamental form coefficients in the patch frame."""

    E: float
    F: float
    G: float
    L: float
    M: float
    N: float

    @property
    def gauss(self) -> float:
        return (self.L * self.N - self.M ** 2) / (self.E * self.G - self.F ** 2)

    @property
    def mean(self) -> float:
        return (self.E * self.N - 2 * self.F * self.M + self.G * self.L) / (2 * (self.E * self.G - self.F ** 2))


@dataclass(frozen=True)
class SurfaceBranch:
    """Curvatures of one sheet through the point.

    ``diagnostics`` is Regular, Sheet, CuspSheet, DegeneratePlane or
    ComplexPlane.  For the last two the curvatures are NaN; cusp sheets
    carry ``inf``.  The sign of ``K_mean_signed`` refers to ``normal``.
    """

    normal: ProjDirection
    K_gauss: float
    K_mean_signed: float
    K_mean_abs: float
    contact_order: int
    diagnostics: str
    multiplicity: int = 1
    gauss_exact: Fraction | None = None
    mean_exact: Fraction | None = None
    jet: SurfaceJet | None = None
    forms: FundamentalForms | None = None
    notes: tuple = field(default=())

    @property
    def finite(self) -> bool:
        return math.isfinite(self.K_gauss) and math.isfinite(self.K_mean_signed)


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _cross(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def default_frame(n) -> tuple[tuple, tuple]:
    """Deterministic in-plane vectors ``(u, w)`` for the normal ``n``.

    ``w = n x e_k`` with ``e_k`` the axis least aligned with ``n`` (lowest
    index on ties) and ``u = w x n``, so ``(u, w, n)`` is right-handed.
    Exact for rational ``n``; not normalized.
    """
    k = min(range(3), key=lambda i: (abs(n[i]), i))
    e = tuple(1 if i == k else 0 for i in range(3))
    w = _cross(n, e)
    u = _cross(w, n)
    return u, w


def _is_exact(v) -> bool:
    return all(isinstance(c, (int, Fraction)) and not isinstance(c, bool) for c in v)


def _jet_equations(Fs: Poly, r: int, u, w, n) -> list[Poly]:
    s, t, a, b, g = Poly.gens(RING)
    q = a * s * s * Fraction(1, 2) + b * s * t + g * t * t * Fraction(1, 2)
    maps = [s * u[i] + t * w[i] + q * n[i] for i in range(3)]
    comp = Fs.compose(maps, RING)
    groups: dict = {}
    for e, c in comp.terms.items():
        if e[0] + e[1] == r + 1:
            groups.setdefault((e[0], e[1]), {})[(0, 0) + e[2:]] = c
    return [Poly(RING, groups[k]) for k in sorted(groups, reverse=True)]


def solve_plane_jet(Fs: Poly, r: int, n, u=None, w=None, tol: float = 1e-10):
    """Solve the degree ``r + 1`` equations for one tangent plane.

    Parameters
    ----------
    Fs : Poly
        Polynomial recentered at the point.
    r : int
        Multiplicity of the point.
    n, u, w : 3-vectors
        Plane normal and two independent in-plane vectors; ``u, w`` default
        to :func:`default_frame`.

    Returns
    -------
    (kind, SurfaceJet or None, FundamentalForms or None)
        ``kind`` is the :func:`solve_affine` classification.
    """
    if u is None or w is None:
        u, w = default_frame(n)
    exact = Fs.is_exact and _is_exact(n) and _is_exact(u) and _is_exact(w)
    eqs = _jet_equations(Fs, r, u, w, n)
    if not exact:
        scale = max(1.0, Fs.max_abs_coeff()) * max(1.0, max(abs(complex(c)) for c in (*u, *w, *n))) ** (r + 1)
        eqs = [e.chop(tol * scale) for e in eqs]
    eqs = [e for e in eqs if not e.is_zero()]
    if not eqs:
        return "underdetermined", None, None
    res = solve_affine(system_from_polys(eqs, UNKNOWNS))
    if res.kind != "unique":
        return res.kind, None, None
    al, be, ga = (res.assignment[x] for x in UNKNOWNS)
    if not exact:
        al, be, ga = (complex(x).real for x in (al, be, ga))
    jet = SurfaceJet(tuple(u), tuple(w), tuple(n), al, be, ga)
    return "unique", jet, forms_from_jet(jet)


def _sqrt(x):
    return sqrt_exact(x) if isinstance(x, Fraction) else math.sqrt(x)


def forms_from_jet(jet: SurfaceJet) -> FundamentalForms:
    """Fundamental forms with respect to the unit normal ``n / |n|``."""
    u, w, n = jet.u, jet.w, jet.n
    nn = _sqrt(_dot(n, n))
    E, F, G = _dot(u, u), _dot(u, w), _dot(w, w)
    return FundamentalForms(E, F, G, jet.alpha * nn, jet.beta * nn, jet.gamma * nn)


def _curvatures(jet: SurfaceJet):
    """``(K_G, K_M)`` as exact Fractions where possible, else floats."""
    u, w, n = jet.u, jet.w, jet.n
    n2 = _dot(n, n)
    E, F, G = _dot(u, u), _dot(u, w), _dot(w, w)
    det = E * G - F * F
    al, be, ga = jet.alpha, jet.beta, jet.gamma
    kg = (al * ga - be * be) * n2 / det
    nn = _sqrt(n2)
    km = (E * ga - 2 * F * be + G * al) * nn / (2 * det)
    return kg, km


def surface_branch_curvatures(F: Poly, P: Sequence, max_order: int | None = None) -> list[SurfaceBranch]:
    """Gaussian and mean curvature for each tangent plane at ``P``.

    Parameters
    ----------
    F : Poly
        Trivariate polynomial.
    P : sequence
        Point on the surface.
    max_order : int, optional
        Accepted for interface symmetry; the degree ``r + 1`` system already
        decides every case (unique, inconsistent or degenerate).

    Raises
    ------
    NonLinearTangentCone
        If the tangent cone does not split into planes.
    """
    if F.nvars != 3:
        raise ValueError("surfaces need a trivariate polynomial")
    r, T, Fs = lowest_form(F, P)
    if r == 1:
        g = tuple(T.terms.get(tuple(1 if k == i else 0 for k in range(3)), 0) for i in range(3))
        d = ProjDirection.from_vector(g, 1)
        # orient the patch along the reported normal so the sign of K_M
        # always refers to ``normal``
        planes = [(d, d.exact if d.exact is not None else tuple(c.real for c in d.components))]
    else:
        planes = []
        for tp in factor_linear_forms(T):
            d = tp.normal
            rep = d.exact if d.exact is not None else tuple(c.real for c in d.components)
            planes.append((d, rep))
    base = "Regular" if r == 1 else "Sheet"
    out = []
    for d, n in planes:
        m = d.multiplicity
        if not d.is_real:
            out.append(SurfaceBranch(d, NAN, NAN, NAN, r, "ComplexPlane", m,
                                     notes=("complex tangent plane",)))
            continue
        kind, jet, forms = solve_plane_jet(Fs, r, n)
        if kind == "inconsistent":
            out.append(SurfaceBranch(d, INF, INF, INF, r + 1, "CuspSheet", m,
                                     notes=(f"degree {r + 1} equations are inconsistent",)))
            continue
        if kind != "unique":
            out.append(SurfaceBranch(d, NAN, NAN, NAN, r + 1, "DegeneratePlane", m,
                                     notes=(f"degree {r + 1} equations leave the normal jet free",)))
            continue
        kg, km = _curvatures(jet)
        out.append(SurfaceBranch(
            d, float(kg), float(km), abs(float(km)), r + 1, base, m,
            kg if isinstance(kg, Fraction) else None,
            km if isinstance(km, Fraction) else None,
            jet, forms,
        ))
    return out


def _adjugate(H):
    def minor(i, j):
        rows = [k for k in range(3) if k != i]
        cols = [k for k in range(3) if k != j]
        a, b = rows
        c, d = cols
        return H[a][c] * H[b][d] - H[a][d] * H[b][c]

    return [[(-1) ** (i + j) * minor(j, i) for j in range(3)] for i in range(3)]


def regular_surface_curvatures_implicit(F: Poly, P: Sequence) -> tuple[float, float]:
    """``(K_G, K_M)`` at a regular point from the gradient and Hessian.

    ``K_G = g H* g^T / |g|^4`` with ``H*`` the adjugate of the Hessian and
    ``K_M = (g H g^T - |g|^2 tr H) / (2 |g|^3)``; the sign of ``K_M`` refers
    to the normal ``g / |g|``.
    """
    shifted(F, P)
    g = [gi.evaluate_exact(P) for gi in F.gradient()]
    if all(c == 0 for c in g):
        raise SingularPoint(f"gradient vanishes at {tuple(str(c) for c in P)}")
    H = [[h.evaluate_exact(P) for h in row] for row in F.hessian()]
    A = _adjugate(H)
    g2 = sum(c * c for c in g)
    gAg = sum(g[i] * A[i][j] * g[j] for i in range(3) for j in range(3))
    gHg = sum(g[i] * H[i][j] * g[j] for i in range(3) for j in range(3))
    tr = H[0][0] + H[1][1] + H[2][2]
    kg = gAg / (g2 * g2)
    gn = _sqrt(g2)
    km = (gHg - g2 * tr) / (2 * g2 * gn)
    return float(kg), float(km)
