"""Multiplicity and tangent objects at a point of a curve or surface.

The tangent cone at ``P`` is the lowest homogeneous form ``T_r`` of ``F``
recentered at ``P``.  For plane curves its projective roots are the tangent
directions; for surfaces its linear factors are the tangent planes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import NonLinearTangentCone, PointNotOnVariety, ZeroPolynomial
from .numkit import roots_all
from .ratpoly import Poly, divide_linear

__all__ = [
    "ProjDirection",
    "TangentPlane",
    "shifted",
    "multiplicity",
    "lowest_form",
    "plane_tangent_directions",
    "surface_tangent_planes",
    "factor_linear_forms",
]

_ZERO = 1e-12


@dataclass(frozen=True)
class ProjDirection:
    """A projective direction with a multiplicity.

    ``components`` is normalized: real directions are unit vectors whose first
    nonzero entry is positive; complex ones have their first entry of
    modulus > 1e-12 equal to exactly 1.  ``exact`` keeps an unnormalized
    rational representative when one is known.
    """

    components: tuple
    multiplicity: int
    is_real: bool
    exact: tuple | None = None

    @classmethod
    def from_vector(cls, vec: Sequence, multiplicity: int = 1) -> "ProjDirection":
        exact = None
        if all(isinstance(c, (int, Fraction)) and not isinstance(c, bool) for c in vec):
            exact = _primitive(vec)
        comps = [complex(c) for c in vec]
        lead = next((c for c in comps if abs(c) > _ZERO), None)
        if lead is None:
            raise ValueError("zero direction")
        scaled = [c / lead for c in comps]
        size = max(abs(c) for c in scaled)
        is_real = all(abs(c.imag) <= 1e-9 * size for c in scaled)
        if is_real:
            re = [c.real for c in scaled]
            norm = math.sqrt(sum(x * x for x in re))
            unit = [x / norm for x in re]
            first = next(x for x in unit if abs(x) > _ZERO)
            if first < 0:
                unit = [-x for x in unit]
            unit = [0.0 if abs(x) <= 1e-15 else x for x in unit]
            components = tuple(complex(x, 0.0) for x in unit)
        else:
            components = tuple(
                complex(c.real if abs(c.real) > 1e-15 else 0.0, c.imag if abs(c.imag) > 1e-15 else 0.0)
                for c in scaled
            )
            components = (1 + 0j,) + components[1:] if abs(comps[0]) > _ZERO else components
        return cls(components, int(multiplicity), is_real, exact)

    @property
    def real_vector(self) -> np.ndarray:
        return np.array([c.real for c in self.components])

    def with_multiplicity(self, m: int) -> "ProjDirection":
        return ProjDirection(self.components, m, self.is_real, self.exact)

    def same_line(self, other: "ProjDirection", tol: float = 1e-9) -> bool:
        a = np.array(self.components)
        b = np.array(other.components)
        if len(a) != len(b):
            return False
        # parallel iff the 2x2 minors vanish
        na, nb = np.linalg.norm(a), np.linalg.norm(b)
        for i in range(len(a)):
            for j in range(i + 1, len(a)):
                if abs(a[i] * b[j] - a[j] * b[i]) > tol * na * nb:
                    return False
        return True

    def pairs(self) -> list[list[float]]:
        """Components as ``[re, im]`` pairs (JSON form)."""
        return [[c.real, c.imag] for c in self.components]


@dataclass(frozen=True)
class TangentPlane:
    normal: ProjDirection
    multiplicity: int


def _primitive(vec) -> tuple:
    fr = [Fraction(c) for c in vec]
    den = 1
    for c in fr:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in fr]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    if g == 0:
        raise ValueError("zero direction")
    ints = [c // g for c in ints]
    first = next(c for c in ints if c != 0)
    if first < 0:
        ints = [-c for c in ints]
    return tuple(Fraction(c) for c in ints)


def _check_on(F: Poly, P: Sequence) -> None:
    if F.is_zero():
        raise ZeroPolynomial("F is identically zero")
    if len(P) != F.nvars:
        raise ValueError(f"point has {len(P)} coordinates, F has {F.nvars} variables")
    value = F.evaluate_exact(P)
    if isinstance(value, Fraction):
        if value != 0:
            raise PointNotOnVariety(f"F{tuple(str(c) for c in P)} = {value} != 0")
    elif abs(value) > 1e-10 * max(1.0, F.max_abs_coeff()):
        raise PointNotOnVariety(f"F(P) = {value} != 0")


def shifted(F: Poly, P: Sequence) -> Poly:
    """``F`` recentered at ``P`` after checking ``F(P) = 0``."""
    _check_on(F, P)
    return F.shift(P)


def multiplicity(F: Poly, P: Sequence) -> int:
    """Order of the first non-vanishing derivative of ``F`` at ``P``."""
    return shifted(F, P).min_degree()


def lowest_form(F: Poly, P: Sequence) -> tuple[int, Poly, Poly]:
    """``(r, T_r, F_shifted)`` for the recentered polynomial.

    Both polynomials are divided by the leading coefficient of ``T_r`` so
    that ``F`` and ``c F`` give identical downstream arithmetic.
    """
    Fs = shifted(F, P)
    r = Fs.min_degree()
    lead = next(iter(Fs.homogeneous_part(r).terms.values()))
    Fs = Fs / lead
    return r, Fs.homogeneous_part(r), Fs


def binary_form_directions(T: Poly) -> list[ProjDirection]:
    """Projective roots of a binary form ``T(a, b)`` with multiplicities."""
    r = T.degree()
    coeffs = [T.terms.get((r - j, j), 0) for j in range(r + 1)]
    # power of a dividing T  ->  direction (0, 1)
    k = 0
    while k <= r and coeffs[r - k] == 0:
        k += 1
    dirs = []
    if k:
        dirs.append(ProjDirection.from_vector((Fraction(0), Fraction(1)), k))
    slope_poly = coeffs[: r - k + 1]
    if len(slope_poly) >= 2:
        for m, mult in roots_all(slope_poly):
            if isinstance(m, Fraction):
                dirs.append(ProjDirection.from_vector((Fraction(1), m), mult))
            else:
                dirs.append(ProjDirection.from_vector((1.0, complex(m)), mult))
    return dirs


def plane_tangent_directions(F: Poly, P: Sequence) -> list[ProjDirection]:
    """Tangent directions of the plane curve ``F = 0`` at ``P``.

    Multiplicities sum to the multiplicity ``r`` of the point.
    """
    if F.nvars != 2:
        raise ValueError("plane curves need a bivariate polynomial")
    _, T, _ = lowest_form(F, P)
    return binary_form_directions(T)


# ---------------------------------------------------------------------------
# linear factors of ternary forms

# fixed pairs of lines (p + s q) in the projective plane; chosen with no
# special relation to coordinate axes
_LINE_PAIRS = [
    (((1, 2, -3), (2, -1, 5)), ((-3, 1, 2), (1, 4, -1))),
    (((2, 3, 1), (-1, 2, 3)), ((1, -2, 4), (3, 1, -2))),
    (((5, -1, 2), (1, 3, 7)), ((-2, 5, 3), (4, -3, 1))),
]

_DIV_TOL = 1e-10


def _restrict(T: Poly, p, q):
    s = Poly.var("s", ("s",))
    maps = [Poly.const(pi, ("s",)) + s * qi for pi, qi in zip(p, q)]
    return T.compose(maps, ("s",))


def _line_points(T: Poly, p, q):
    """Points of the line ``p + s q`` (s may be infinite) where T vanishes."""
    g = _restrict(T, p, q)
    r = T.degree()
    if g.is_zero():
        return None  # whole line lies in the cone
    coeffs = [g.terms.get((k,), 0) for k in range(r + 1)]
    pts = []
    deg = max(k for k, c in enumerate(coeffs) if c != 0)
    if r - deg > 0:
        pts.append((tuple(q), r - deg))
    if deg >= 1:
        for s, m in roots_all(coeffs[: deg + 1]):
            pts.append((tuple(pi + s * qi for pi, qi in zip(p, q)), m))
    return pts


def _cross(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def _exact_vec(v) -> bool:
    return all(isinstance(c, (int, Fraction)) and not isinstance(c, bool) for c in v)


def _linear(normal, ring) -> Poly:
    return Poly(ring, {tuple(1 if k == i else 0 for k in range(3)): c for i, c in enumerate(normal)})


def _try_factor(T: Poly, normal):
    """Return the cofactor if ``normal . x`` divides ``T``; else None."""
    ring = T.ring
    if _exact_vec(normal) and T.is_exact:
        L = _linear([Fraction(c) for c in normal], ring)
        Q, R = divide_linear(T, L)
        return Q if R.is_zero() else None
    n = np.array([complex(c) for c in normal])
    n = n / n[np.argmax(np.abs(n))]
    L = _linear([complex(c) for c in n], ring)
    Tc = T.to_complex()
    Q, R = divide_linear(Tc, L)
    scale = max(1.0, Tc.max_abs_coeff())
    if R.max_abs_coeff() <= _DIV_TOL * scale:
        return Q.chop(1e-14 * scale)
    return None


def _find_linear_factor(T: Poly):
    for (p1, q1), (p2, q2) in _LINE_PAIRS:
        pts1 = _line_points(T, p1, q1)
        if pts1 is None:
            return _cross(p1, q1)
        pts2 = _line_points(T, p2, q2)
        if pts2 is None:
            return _cross(p2, q2)
        cands = []
        for a, _ in pts1:
            for b, _ in pts2:
                n = _cross(a, b)
                if max(abs(complex(c)) for c in n) <= 1e-12:
                    continue
                cands.append(n)
        cands.sort(key=lambda n: 0 if _exact_vec(n) else 1)
        for n in cands:
            if _try_factor(T, n) is not None:
                return n
    return None


def factor_linear_forms(T: Poly) -> list[TangentPlane]:
    """Split a ternary form into linear factors, grouped by plane.

    Raises
    ------
    NonLinearTangentCone
        If a cofactor of degree >= 2 has no linear factor.
    """
    if T.nvars != 3:
        raise ValueError("ternary form expected")
    scale = T.max_abs_coeff()
    cof = T if T.is_exact else T / scale
    normals = []
    while cof.degree() >= 1:
        if cof.degree() == 1:
            n = [cof.terms.get(tuple(1 if k == i else 0 for k in range(3)), 0) for i in range(3)]
            normals.append(tuple(n))
            break
        n = _find_linear_factor(cof)
        if n is None:
            raise NonLinearTangentCone(
                f"tangent cone {cof.to_string() if cof.is_exact else 'of degree %d' % cof.degree()} "
                "has no linear factor"
            )
        q = _try_factor(cof, n)
        normals.append(n)
        cof = q
    planes: list[ProjDirection] = []
    for n in normals:
        d = ProjDirection.from_vector(n, 1)
        for i, prev in enumerate(planes):
            if prev.same_line(d):
                planes[i] = prev.with_multiplicity(prev.multiplicity + 1)
                break
        else:
            planes.append(d)
    return [TangentPlane(d, d.multiplicity) for d in planes]


def surface_tangent_planes(F: Poly, P: Sequence) -> list[TangentPlane]:
    """Tangent planes of the surface ``F = 0`` at ``P`` with multiplicities."""
    if F.nvars != 3:
        raise ValueError("surfaces need a trivariate polynomial")
    r, T, _ = lowest_form(F, P)
    if r == 1:
        n = [T.terms.get(tuple(1 if k == i else 0 for k in range(3)), 0) for i in range(3)]
        d = ProjDirection.from_vector(n, 1)
        return [TangentPlane(d, 1)]
    return factor_linear_forms(T)
