"""Curvature and torsion of space curves ``F = G = 0`` at arbitrary points.

Tangents come from pairs of tangent planes of the two surfaces.  When the
two surfaces share a tangent plane the direction inside it is fixed by the
solvability of the next-order jet equations (pencil refinement).

Along a tangent ``v`` the branch is written as

    r(t) = P + v t + sum_{k >= 2} j_k t^k / k!,   j_k . v = 0

(every tangential jet component is a reparametrization) and the series
coefficients ``C_i`` of ``F(r(t))`` and ``D_i`` of ``G(r(t))`` are solved order
by order: affine equations exactly, univariate ones by branching over roots.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import OrderExhausted, PencilUnresolved, SingularPoint
from .numkit import roots_all, solve_affine, system_from_polys
from .ratpoly import Poly, compose_series, sqrt_exact
from .singular import ProjDirection, binary_form_directions, lowest_form, factor_linear_forms
from .surface import default_frame

__all__ = [
    "SpaceJet",
    "SpaceBranch",
    "space_tangents",
    "space_branch_frenet",
    "regular_space_frenet_implicit",
]

INF = math.inf


@dataclass(frozen=True)
class SpaceJet:
    """Tangent, normal-plane basis and the solved jet scalars.

    ``r'' = mu1 n1 + mu2 n2`` and ``r''' = nu1 n1 + nu2 n2``; values that
    remain free are None.
    """

    v: tuple
    n1: tuple
    n2: tuple
    mu: tuple
    nu: tuple


@dataclass(frozen=True)
class SpaceBranch:
    """One branch of the curve through the point.

    ``torsion`` is None when it is undetermined (or undefined for an
    infinite curvature).
    """

    tangent: ProjDirection
    curvature: float
    torsion: float | None
    branch_multiplicity: int
    diagnostics: str
    contact_order: int = 0
    curvature_exact: Fraction | None = None
    torsion_exact: Fraction | None = None
    jet: SpaceJet | None = None
    notes: tuple = field(default=())

    @property
    def finite(self) -> bool:
        return math.isfinite(self.curvature)

    @property
    def torsion_defined(self) -> bool:
        return self.torsion is not None


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _cross(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def _is_exact(v) -> bool:
    return all(isinstance(c, (int, Fraction)) and not isinstance(c, bool) for c in v)


def _unit_normal(T: Poly):
    return tuple(T.terms.get(tuple(1 if k == i else 0 for k in range(3)), 0) for i in range(3))


def _planes(r: int, T: Poly):
    """``[(normal representative, ProjDirection)]`` of the tangent cone."""
    if r == 1:
        n = _unit_normal(T)
        return [(n, ProjDirection.from_vector(n, 1))]
    out = []
    for tp in factor_linear_forms(T):
        d = tp.normal
        if d.exact is not None:
            rep = d.exact
        elif d.is_real:
            rep = tuple(c.real for c in d.components)
        else:
            rep = d.components
        out.append((rep, d))
    return out


def _parallel(a, b, tol=1e-9) -> bool:
    c = _cross(a, b)
    if _is_exact(c):
        return all(x == 0 for x in c)
    na = math.sqrt(sum(abs(complex(x)) ** 2 for x in a))
    nb = math.sqrt(sum(abs(complex(x)) ** 2 for x in b))
    return max(abs(complex(x)) for x in c) <= tol * na * nb


# ---------------------------------------------------------------------------
# tangents

_PENCIL_RING = ("p", "q", "w1", "w2", "w3")


def _first_nonzero(coeffs, start, tol):
    for i in range(start, len(coeffs)):
        c = coeffs[i].chop(tol) if tol else coeffs[i]
        if not c.is_zero():
            return i, c
    return None, None


def _affine_split(C: Poly):
    """``C = A . w + b`` with A, b polynomials in (p, q); None if not affine in w."""
    A = [Poly.zero(_PENCIL_RING) for _ in range(3)]
    b = {}
    for e, c in C.terms.items():
        dw = e[2] + e[3] + e[4]
        if dw == 0:
            b[e] = c
        elif dw == 1:
            k = 2 + (e[2:].index(1))
            A[k - 2] = A[k - 2] + Poly(_PENCIL_RING, {e[:2] + (0, 0, 0): c})
        else:
            return None
    return A, Poly(_PENCIL_RING, b)


def _pencil_directions(Fs: Poly, Gs: Poly, rF: int, rG: int, n, max_order: int, tol: float):
    """Directions inside the common tangent plane with normal ``n``."""
    e1, e2 = default_frame(n)
    p, q, w1, w2, w3 = Poly.gens(_PENCIL_RING)
    half = Fraction(1, 2)
    series = []
    for i in range(3):
        series.append([Poly.zero(_PENCIL_RING), p * e1[i] + q * e2[i], [w1, w2, w3][i] * half])
    CF = compose_series(Fs, series, max_order, _PENCIL_RING)
    CG = compose_series(Gs, series, max_order, _PENCIL_RING)
    iF, cF = _first_nonzero(CF, rF, tol)
    iG, cG = _first_nonzero(CG, rG, tol)
    if cF is None or cG is None:
        raise PencilUnresolved("jet equations vanish identically inside the shared tangent plane")
    sF, sG = _affine_split(cF), _affine_split(cG)
    if sF is None or sG is None:
        raise PencilUnresolved("jet equations are not affine in the second-order jet")
    (AF, bF), (AG, bG) = sF, sG
    AFn = sum((a * c for a, c in zip(AF, n)), Poly.zero(_PENCIL_RING))
    AGn = sum((a * c for a, c in zip(AG, n)), Poly.zero(_PENCIL_RING))
    if AF[0].is_zero() and AF[1].is_zero() and AF[2].is_zero():
        phi = bF
    elif AG[0].is_zero() and AG[1].is_zero() and AG[2].is_zero():
        phi = bG
    else:
        phi = AGn * bF - AFn * bG
    if tol:
        phi = phi.chop(tol)
    if phi.is_zero():
        raise PencilUnresolved("solvability form vanishes identically")
    if phi.degree() == 0:
        return []
    binary = Poly(("p", "q"), {e[:2]: c for e, c in phi.terms.items()})
    out = []
    for d in binary_form_directions(binary):
        if d.exact is not None:
            a, b = d.exact
        else:
            a, b = d.components
            if d.is_real:
                a, b = a.real, b.real
        vec = tuple(a * e1[i] + b * e2[i] for i in range(3))
        out.append(ProjDirection.from_vector(vec, d.multiplicity))
    return out


def _merge(dirs: list[ProjDirection]) -> list[ProjDirection]:
    out: list[ProjDirection] = []
    for d in dirs:
        for i, prev in enumerate(out):
            if prev.same_line(d):
                out[i] = prev.with_multiplicity(prev.multiplicity + d.multiplicity)
                break
        else:
            out.append(d)
    return out


def _setup(F: Poly, G: Poly, P: Sequence):
    if F.nvars != 3 or G.nvars != 3 or F.ring != G.ring:
        raise ValueError("space curves need two trivariate polynomials over one ring")
    rF, TF, Fs = lowest_form(F, P)
    rG, TG, Gs = lowest_form(G, P)
    return rF, TF, Fs, rG, TG, Gs


def _tol(Fs: Poly, Gs: Poly) -> float:
    return 1e-10 * max(1.0, Fs.max_abs_coeff(), Gs.max_abs_coeff())


def space_tangents(F: Poly, G: Poly, P: Sequence, max_order: int = 10) -> list[ProjDirection]:
    """Tangent directions of ``F = G = 0`` at ``P`` with multiplicities."""
    rF, TF, Fs, rG, TG, Gs = _setup(F, G, P)
    return _tangents(rF, TF, Fs, rG, TG, Gs, max_order)


def _tangents(rF, TF, Fs, rG, TG, Gs, max_order):
    dirs = []
    for nF, dF in _planes(rF, TF):
        for nG, dG in _planes(rG, TG):
            if _parallel(nF, nG):
                exact = Fs.is_exact and Gs.is_exact and _is_exact(nF)
                dirs.extend(_pencil_directions(Fs, Gs, rF, rG, nF, max_order, 0.0 if exact else _tol(Fs, Gs)))
            else:
                d = ProjDirection.from_vector(_cross(nF, nG), dF.multiplicity * dG.multiplicity)
                dirs.append(d)
    return _merge(dirs)


# ---------------------------------------------------------------------------
# staged jet solver

def _labels(max_order: int):
    out = []
    for k in range(2, max_order + 1):
        out.append((f"j{k}_1", f"j{k}_2"))
    return out


@dataclass
class _State:
    sub: dict
    pending: list
    mult: int = 1
    branched: bool = False
    status: str = "open"  # open, contradiction, complex
    order: int = 0
    notes: list = field(default_factory=list)

    def copy(self) -> "_State":
        return _State(dict(self.sub), list(self.pending), self.mult, self.branched, self.status,
                      self.order, list(self.notes))

    def bind(self, label: str, expr: Poly) -> None:
        for k in list(self.sub):
            self.sub[k] = self.sub[k].subs({label: expr})
        self.sub[label] = expr


def _jet_rank(label: str) -> int:
    return int(label[1:].split("_")[0])


def _clean(eqs, sub, tol):
    out = []
    for e in eqs:
        e = e.subs(sub) if sub else e
        if tol:
            e = e.chop(tol)
        if not e.is_zero():
            out.append(e)
    return out


def _as_real(x):
    if isinstance(x, Fraction):
        return x
    z = complex(x)
    return z.real if abs(z.imag) <= 1e-9 * max(1.0, abs(z)) else z


def _settle(state: _State, eqs: list, ring, tol: float) -> list[_State]:
    queue = [(state, eqs)]
    done = []
    while queue:
        st, eqs = queue.pop()
        while True:
            eqs = _clean(eqs, st.sub, tol)
            if any(e.is_constant() for e in eqs):
                st.status = "contradiction"
                st.notes.append(f"inconsistent equations at order {st.order}")
                done.append(st)
                break
            lin = [e for e in eqs if e.degree() == 1]
            if lin:
                unknowns = sorted({v for e in lin for v in e.variables_used()}, key=ring.index)
                res = solve_affine(system_from_polys(lin, unknowns))
                if res.kind == "inconsistent":
                    st.status = "contradiction"
                    st.notes.append(f"inconsistent linear equations at order {st.order}")
                    done.append(st)
                    break
                for label, (c, deps) in res.parametric.items():
                    expr = Poly.const(c, ring)
                    for fl, coef in deps.items():
                        expr = expr + Poly.var(fl, ring) * coef
                    st.bind(label, expr)
                eqs = [e for e in eqs if e.degree() != 1]
                continue
            pick = None
            for e in eqs:
                for x in e.variables_used():
                    parts = e.coeff_in(x)
                    if max(parts) == 1 and parts[1].is_constant():
                        if pick is None or _jet_rank(x) > _jet_rank(pick[1]):
                            pick = (e, x, parts)
            if pick is not None:
                e, x, parts = pick
                c = parts[1].constant_term()
                rest = parts.get(0, Poly.zero(ring))
                st.bind(x, rest * (-1) / c)
                eqs = [f for f in eqs if f is not e]
                continue
            uni = [e for e in eqs if len(e.variables_used()) == 1]
            if uni:
                e = min(uni, key=lambda f: f.degree())
                x = e.variables_used()[0]
                rest = [f for f in eqs if f is not e]
                for root, m in roots_all(e.univariate_coeffs(x)):
                    child = st.copy()
                    child.mult *= m
                    child.branched = True
                    root = _as_real(root)
                    if isinstance(root, complex):
                        child.status = "complex"
                        child.notes.append(f"complex root {root} for {x}")
                        child.bind(x, Poly.const(root, ring))
                        done.append(child)
                        continue
                    child.bind(x, Poly.const(root, ring))
                    queue.append((child, rest))
                break
            st.pending = eqs
            done.append(st)
            break
    return done


def _value(st: _State, label: str, ring):
    e = st.sub.get(label)
    if e is None or not e.is_constant():
        return None
    return e.constant_term()


def _sqrt(x):
    return sqrt_exact(x) if isinstance(x, Fraction) else math.sqrt(x)


def _finish(st: _State, d: ProjDirection, v, n1, n2, ring, tangent_mult: int, base: str) -> SpaceBranch | None:
    """Branch record if ``st`` has settled enough, else None."""
    mult = st.mult if st.branched else tangent_mult
    mu = (_value(st, "j2_1", ring), _value(st, "j2_2", ring))
    if st.status == "complex":
        return SpaceBranch(d, INF, None, mult, "ComplexBranch", st.order, notes=tuple(st.notes))
    if st.status == "contradiction" and None in mu:
        return SpaceBranch(d, INF, None, mult, "Cusp", st.order, notes=tuple(st.notes))
    if None in mu:
        return None
    m1, m2 = (_as_real(x) for x in mu)
    vv = _dot(v, v)
    j2 = tuple(m1 * a + m2 * b for a, b in zip(n1, n2))
    jj = _dot(j2, j2)
    k = _sqrt(jj) / vv
    kx = k if isinstance(k, Fraction) else None
    if jj == 0 or (not isinstance(jj, Fraction) and jj <= 1e-24):
        return SpaceBranch(d, float(k), 0.0, mult, base, st.order, kx, Fraction(0) if kx is not None else None,
                           SpaceJet(v, n1, n2, (m1, m2), (None, None)),
                           tuple(st.notes) + ("straight to second order; torsion taken as 0",))
    if st.status == "contradiction":
        return SpaceBranch(d, float(k), None, mult, base, st.order, kx, None,
                           SpaceJet(v, n1, n2, (m1, m2), (None, None)), tuple(st.notes))
    if "j3_1" not in ring:
        return None
    nu1, nu2 = Poly.var("j3_1", ring), Poly.var("j3_2", ring)
    # det(v, j2, j3) = (mu1 nu2 - mu2 nu1) det(v, n1, n2)
    base_det = _dot(v, _cross(n1, n2))
    det = (nu2 * m1 - nu1 * m2) * base_det
    det = det.subs(st.sub)
    if not det.is_constant():
        tol_det = 1e-12 * max(1.0, det.max_abs_coeff())
        if det.is_exact or not det.chop(tol_det).is_constant():
            return None
        det = det.chop(tol_det)
    dv = _as_real(det.constant_term())
    tau = dv / (vv * jj)
    nus = (_value(st, "j3_1", ring), _value(st, "j3_2", ring))
    return SpaceBranch(d, float(k), float(tau), mult, base, st.order, kx,
                       tau if isinstance(tau, Fraction) else None,
                       SpaceJet(v, n1, n2, (m1, m2), nus), tuple(st.notes))


def _tangent_rep(d: ProjDirection):
    if d.exact is not None:
        return d.exact
    return tuple(c.real for c in d.components)


def _branches_along(Fs, Gs, d: ProjDirection, max_order: int, base: str) -> list[SpaceBranch]:
    if not d.is_real:
        return [SpaceBranch(d, INF, None, d.multiplicity, "ComplexTangent", notes=("non-real tangent",))]
    v = _tangent_rep(d)
    exact = Fs.is_exact and Gs.is_exact and _is_exact(v)
    tol = 0.0 if exact else _tol(Fs, Gs)
    n1, n2 = default_frame(v)
    if not exact:
        # unit vectors keep float tolerances meaningful
        n1 = tuple(c / math.sqrt(_dot(n1, n1)) for c in n1)
        n2 = tuple(c / math.sqrt(_dot(n2, n2)) for c in n2)
    labels = _labels(max_order)
    ring = tuple(x for pair in labels for x in pair)
    gens = {x: Poly.var(x, ring) for x in ring}
    series = []
    for i in range(3):
        coeffs = [Poly.zero(ring), Poly.const(v[i], ring)]
        for k, (a, b) in enumerate(labels, start=2):
            coeffs.append((gens[a] * n1[i] + gens[b] * n2[i]) * Fraction(1, math.factorial(k)))
        series.append(coeffs)
    # most branches settle within a few orders, so the series is composed
    # lazily, doubling the truncation order when it runs out
    CD = [[], []]

    def coeffs(i):
        if i >= len(CD[0]):
            order = min(max_order, max(4, i, 2 * (len(CD[0]) - 1)))
            CD[0] = compose_series(Fs, series, order, ring)
            CD[1] = compose_series(Gs, series, order, ring)
        return CD[0][i], CD[1][i]

    states = [_State({}, [])]
    finished: list[SpaceBranch] = []
    for i in range(1, max_order + 1):
        nxt = []
        for st in states:
            st.order = i
            for child in _settle(st, st.pending + list(coeffs(i)), ring, tol):
                br = _finish(child, d, v, n1, n2, ring, d.multiplicity, base)
                if br is not None:
                    finished.append(br)
                elif child.status == "open":
                    nxt.append(child)
        states = nxt
        if not states:
            break
    for st in states:
        mu = (_value(st, "j2_1", ring), _value(st, "j2_2", ring))
        if None in mu:
            raise OrderExhausted(f"second-order jet along {v} still free at order {max_order}")
        m1, m2 = (_as_real(x) for x in mu)
        vv = _dot(v, v)
        jj = _dot(tuple(m1 * a + m2 * b for a, b in zip(n1, n2)),
                  tuple(m1 * a + m2 * b for a, b in zip(n1, n2)))
        k = _sqrt(jj) / vv
        mult = st.mult if st.branched else d.multiplicity
        finished.append(SpaceBranch(d, float(k), None, mult, base, max_order,
                                    k if isinstance(k, Fraction) else None, None,
                                    SpaceJet(v, n1, n2, (m1, m2), (None, None)),
                                    tuple(st.notes) + (f"torsion undetermined at order {max_order}",)))
    return finished


def space_branch_frenet(F: Poly, G: Poly, P: Sequence, max_order: int = 10) -> list[SpaceBranch]:
    """Curvature and torsion of every branch of ``F = G = 0`` through ``P``.

    Parameters
    ----------
    F, G : Poly
        Trivariate polynomials over the same ring.
    P : sequence
        Point on both surfaces.
    max_order : int
        Highest series order used by the staged solver.
    """
    rF, TF, Fs, rG, TG, Gs = _setup(F, G, P)
    dirs = _tangents(rF, TF, Fs, rG, TG, Gs, max_order)
    regular = rF == 1 and rG == 1 and len(dirs) == 1 and dirs[0].multiplicity == 1
    base = "Regular" if regular else "Branch"
    out = []
    for d in dirs:
        out.extend(_branches_along(Fs, Gs, d, max_order, base))
    return out


# ---------------------------------------------------------------------------
# regular points

def _field_cross(a, b):
    return [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]


def _flow_derivatives(T: list, P) -> tuple:
    """``T``, ``(T . grad) T`` and ``(T . grad)^2 T`` evaluated at ``P``.

    Uses ``(T . grad)^2 T = D^2T[T, T] + DT DT T`` so only first and second
    partials of ``T`` at the point are needed.
    """
    ring = T[0].ring
    t = [c.evaluate_exact(P) for c in T]
    J = [[c.diff(x) for x in ring] for c in T]
    Jp = [[e.evaluate_exact(P) for e in row] for row in J]
    Jt = [sum(Jp[i][j] * t[j] for j in range(3)) for i in range(3)]
    second = []
    for i in range(3):
        acc = 0
        for j in range(3):
            if t[j] == 0:
                continue
            for k in range(3):
                if t[k]:
                    acc += J[i][j].diff(ring[k]).evaluate_exact(P) * t[j] * t[k]
        second.append(acc)
    t3 = [second[i] + sum(Jp[i][j] * Jt[j] for j in range(3)) for i in range(3)]
    return t, Jt, t3


def regular_space_frenet_implicit(F: Poly, G: Poly, P: Sequence) -> tuple[float, float | None]:
    """``(k, tau)`` at a regular point from ``T* = grad F x grad G``.

    ``T** = (T* . grad) T*`` and ``T*** = (T* . grad) T**``; these are the
    first three derivatives of the flow of ``T*``, which traces the curve.
    When ``k = 0`` the determinant vanishes too and ``tau`` is reported as 0,
    the same convention the singular path uses for straight branches.
    """
    _setup(F, G, P)
    T1 = _field_cross(F.gradient(), G.gradient())
    if all(c.evaluate_exact(P) == 0 for c in T1):
        raise SingularPoint("grad F x grad G vanishes at the point")
    t1, t2, t3 = _flow_derivatives(T1, P)
    c12 = _cross(t1, t2)
    n1 = _dot(t1, t1)
    c2 = _dot(c12, c12)
    k = _sqrt(c2) / (n1 * _sqrt(n1))
    if c2 == 0:
        return float(k), 0.0
    tau = _dot(c12, t3) / c2
    return float(k), float(tau)
