"""Branch-wise curvature of plane algebraic curves at arbitrary points.

Each tangent direction ``v = (a1, b1)`` of the point is extended to a
quadratic jet ``r(t) = P + v t + (sigma/2) n t^2`` with ``n = (-b1, a1)``.
Since ``det(r', r'') = sigma |v|^2`` the curvature of the osculating jet is
``|sigma| / |v|``.  The value of ``sigma`` comes from the first series
coefficient ``C_l`` of ``F(r(t))`` that does not vanish identically in it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import OrderExhausted, SingularPoint
from .numkit import roots_all
from .ratpoly import Poly, compose_series, sqrt_exact
from .singular import ProjDirection, binary_form_directions, lowest_form, shifted

__all__ = [
    "PlaneJet",
    "PlaneBranch",
    "plane_series",
    "plane_branch_curvatures",
    "regular_curvature_implicit",
]

INF = math.inf
SIGMA = ("sigma",)


@dataclass(frozen=True)
class PlaneJet:
    """Second-order jet along one tangent: ``r'' = sigma * (-b1, a1)``."""

    tangent: ProjDirection
    sigma: object

    @property
    def curvature(self) -> float:
        v = self.tangent.real_vector
        return abs(complex(self.sigma)) / math.hypot(*v)


@dataclass(frozen=True)
class PlaneBranch:
    """One branch through the point.

    ``curvature`` is a float (``inf`` for cusps and complex tangents);
    ``curvature_exact`` holds the Fraction when the value is rational.
    """

    tangent: ProjDirection
    branch_multiplicity: int
    curvature: float
    contact_order: int
    diagnostics: str
    curvature_exact: Fraction | None = None
    sigma: object = None
    notes: tuple = field(default=())

    @property
    def finite(self) -> bool:
        return math.isfinite(self.curvature)


def _tangent_vector(d: ProjDirection):
    """Rational representative when available, else the float components."""
    if d.exact is not None:
        return d.exact
    if d.is_real:
        return tuple(c.real for c in d.components)
    return d.components


def _norm2(v):
    return sum(c * c for c in v)


def plane_series(Fs: Poly, v, order: int, tangential=0) -> list[Poly]:
    """``C_0..C_order`` of ``Fs(v t + ((sigma n + lam v)/2) t^2)`` as Polys in sigma.

    ``Fs`` must already be recentered at the point.
    """
    a1, b1 = v
    sig = Poly.var("sigma", SIGMA)
    half = Fraction(1, 2)
    x = [Poly.zero(SIGMA), Poly.const(a1, SIGMA), (sig * (-b1) + tangential * a1) * half]
    y = [Poly.zero(SIGMA), Poly.const(b1, SIGMA), (sig * a1 + tangential * b1) * half]
    return compose_series(Fs, [x, y], order, SIGMA)


def _coeff_tol(Fs: Poly, v, order: int) -> float:
    if Fs.is_exact and all(isinstance(c, (int, Fraction)) for c in v):
        return 0.0
    size = max(1.0, max(abs(complex(c)) for c in v))
    return 1e-10 * max(1.0, Fs.max_abs_coeff()) * size ** order


def _curvature_value(sigma, v):
    """``|sigma| / |v|``, exact when both pieces are rational."""
    if isinstance(sigma, Fraction) and sigma == 0:
        return 0.0, Fraction(0)
    if isinstance(sigma, Fraction) and all(isinstance(c, Fraction) for c in v):
        n = sqrt_exact(_norm2(v))
        if isinstance(n, Fraction):
            k = abs(sigma) / n
            return float(k), k
        return abs(float(sigma)) / n, None
    return abs(complex(sigma)) / math.sqrt(sum(abs(complex(c)) ** 2 for c in v)), None


def _branches_for_tangent(Fs: Poly, r: int, d: ProjDirection, max_order: int, tangential) -> list[PlaneBranch]:
    v = _tangent_vector(d)
    m = d.multiplicity
    base = "Regular" if r == 1 else "Node"
    if not d.is_real:
        iso = abs(complex(v[0]) ** 2 + complex(v[1]) ** 2)
        note = "isotropic tangent" if iso <= 1e-12 else "non-real tangent"
        return [PlaneBranch(d, m, INF, r, "ComplexTangent", notes=(note,))]
    tol = _coeff_tol(Fs, v, max_order)
    series = plane_series(Fs, v, max_order, tangential)
    for l in range(r + 1, max_order + 1):
        C = series[l].chop(tol) if tol else series[l]
        if C.is_zero():
            continue
        if C.degree() == 0:
            return [PlaneBranch(d, m, INF, l, "Cusp", notes=(f"C_{l} is a nonzero constant",))]
        coeffs = C.univariate_coeffs("sigma")
        out = []
        total = 0
        for s, mult in roots_all(coeffs):
            total += mult
            if isinstance(s, Fraction) or abs(complex(s).imag) <= 1e-9 * max(1.0, abs(s)):
                s = s if isinstance(s, Fraction) else complex(s).real
                k, kx = _curvature_value(s, v)
                out.append(PlaneBranch(d, mult, k, l, base, kx, s))
            else:
                out.append(PlaneBranch(d, mult, INF, l, "ComplexTangent", sigma=complex(s),
                                       notes=("complex root of the gauge equation",)))
        if total != m:
            note = f"gauge equation degree {total} differs from tangent multiplicity {m}"
            out = [PlaneBranch(b.tangent, b.branch_multiplicity, b.curvature, b.contact_order,
                               b.diagnostics, b.curvature_exact, b.sigma, b.notes + (note,)) for b in out]
        return out
    raise OrderExhausted(f"C_l vanishes identically in sigma for all l <= {max_order} along {v}")


def plane_branch_curvatures(F: Poly, P: Sequence, max_order: int | None = None,
                            tangential=0) -> list[PlaneBranch]:
    """Curvature of every branch of ``F = 0`` through ``P``.

    Parameters
    ----------
    F : Poly
        Bivariate polynomial.
    P : sequence
        Point on the curve (rationals).
    max_order : int, optional
        Highest series order inspected; defaults to ``r + 10``.
    tangential : number
        Tangential acceleration added to the jet. The result does not depend
        on it; exposed for checking exactly that.

    Returns
    -------
    list of PlaneBranch
        Grouped by tangent in the order of :func:`plane_tangent_directions`.
    """
    if F.nvars != 2:
        raise ValueError("plane curves need a bivariate polynomial")
    r, T, Fs = lowest_form(F, P)
    if max_order is None:
        max_order = r + 10
    out = []
    for d in binary_form_directions(T):
        out.extend(_branches_for_tangent(Fs, r, d, max_order, tangential))
    return out


def regular_curvature_implicit(F: Poly, P: Sequence) -> float:
    """Curvature of ``F = 0`` at a regular point from the gradient and Hessian.

    ``k = |t H t^T| / |grad F|^3`` with ``t = (-F_y, F_x)``.
    """
    Fs = shifted(F, P)
    g = [gi.evaluate_exact(P) for gi in F.gradient()]
    if all(c == 0 for c in g):
        raise SingularPoint(f"gradient vanishes at {tuple(str(c) for c in P)}")
    H = [[h.evaluate_exact(P) for h in row] for row in F.hessian()]
    del Fs
    t = (-g[1], g[0])
    num = abs(sum(t[i] * H[i][j] * t[j] for i in range(2) for j in range(2)))
    n2 = g[0] * g[0] + g[1] * g[1]
    n = sqrt_exact(n2)
    if isinstance(n, Fraction) and isinstance(num, Fraction):
        return float(num / (n2 * n))
    return float(num) / float(n2) ** 1.5
