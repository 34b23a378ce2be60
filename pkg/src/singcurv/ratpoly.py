"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`Poly` is an immutable map from exponent tuples to coefficients over
an ordered list of variable names (its *ring*).  Coefficients are
:class:`fractions.Fraction` in the exact case.  The same class also carries
float/complex coefficients; that happens only once an irrational tangent
direction has been substituted, and callers then use :meth:`Poly.chop` for
zero tests.

Terms are kept in graded-lexicographic order (total degree first, then
exponents, both descending) so equal polynomials serialize identically.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Mapping, Sequence

from .errors import MixedRings, UnknownVariable, ZeroPolynomial

Rational = Fraction

__all__ = [
    "Rational",
    "Poly",
    "as_coeff",
    "is_exact_number",
    "compose_series",
    "series_mul",
]


def as_coeff(c):
    """Normalize a scalar: ints/rationals become Fraction, floats stay floats."""
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (bool, int, _RationalABC)):
        return Fraction(c)
    if isinstance(c, complex):
        return c
    if isinstance(c, float):
        return c
    # numpy scalars and friends
    if hasattr(c, "imag") and getattr(c, "imag") != 0:
        return complex(c)
    return float(c)


def is_exact_number(c) -> bool:
    return isinstance(c, (int, Fraction)) and not isinstance(c, bool)


def _glex_key(exp):
    return (sum(exp), exp)


class Poly:
    """Immutable sparse polynomial over the variables in ``ring``.

    Parameters
    ----------
    ring : sequence of str
        Ordered variable names.
    terms : mapping, optional
        ``{exponent_tuple: coefficient}``; zero coefficients are dropped.
    """

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Sequence[str], terms: Mapping[tuple, object] | None = None):
        ring = tuple(ring)
        n = len(ring)
        clean = {}
        if terms:
            for exp, c in terms.items():
                exp = tuple(int(e) for e in exp)
                if len(exp) != n:
                    raise ValueError(f"exponent {exp} does not match ring {ring}")
                if any(e < 0 for e in exp):
                    raise ValueError(f"negative exponent {exp}")
                c = as_coeff(c)
                if c != 0:
                    clean[exp] = clean.get(exp, 0) + c
                    if clean[exp] == 0:
                        del clean[exp]
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "terms", dict(sorted(clean.items(), key=lambda kv: _glex_key(kv[0]), reverse=True)))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def _raw(cls, ring: tuple, terms: dict) -> "Poly":
        """Fast path for already-normalized exponents and coefficients."""
        p = object.__new__(cls)
        clean = sorted(((e, c) for e, c in terms.items() if c != 0), key=lambda kv: _glex_key(kv[0]), reverse=True)
        object.__setattr__(p, "ring", ring)
        object.__setattr__(p, "terms", dict(clean))
        object.__setattr__(p, "_hash", None)
        return p

    # ---- constructors -------------------------------------------------
    @classmethod
    def const(cls, c, ring: Sequence[str] = ()) -> "Poly":
        ring = tuple(ring)
        return cls(ring, {(0,) * len(ring): c})

    @classmethod
    def zero(cls, ring: Sequence[str] = ()) -> "Poly":
        return cls(ring)

    @classmethod
    def var(cls, name: str, ring: Sequence[str]) -> "Poly":
        ring = tuple(ring)
        if name not in ring:
            raise UnknownVariable(f"variable {name!r} not in ring {ring}")
        exp = tuple(1 if v == name else 0 for v in ring)
        return cls._raw(ring, {exp: Fraction(1)})

    @classmethod
    def gens(cls, ring: Sequence[str]) -> list["Poly"]:
        return [cls.var(v, ring) for v in ring]

    # ---- basic queries ------------------------------------------------
    @property
    def nvars(self) -> int:
        return len(self.ring)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, Fraction(0))

    @property
    def is_exact(self) -> bool:
        return all(isinstance(c, Fraction) for c in self.terms.values())

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, var: str) -> int:
        i = self._index(var)
        return max((e[i] for e in self.terms), default=-1)

    def min_degree(self) -> int:
        """Smallest total degree of a nonzero term."""
        if not self.terms:
            raise ZeroPolynomial("min_degree of the zero polynomial")
        return min(sum(e) for e in self.terms)

    def homogeneous_part(self, d: int) -> "Poly":
        return Poly(self.ring, {e: c for e, c in self.terms.items() if sum(e) == d})

    def homogeneous_parts(self) -> dict[int, "Poly"]:
        parts: dict[int, dict] = {}
        for e, c in self.terms.items():
            parts.setdefault(sum(e), {})[e] = c
        return {d: Poly(self.ring, t) for d, t in sorted(parts.items())}

    def variables_used(self) -> tuple[str, ...]:
        used = set()
        for e in self.terms:
            for v, k in zip(self.ring, e):
                if k:
                    used.add(v)
        return tuple(v for v in self.ring if v in used)

    def max_abs_coeff(self) -> float:
        return max((abs(c) for c in self.terms.values()), default=0.0)

    def _index(self, var: str) -> int:
        try:
            return self.ring.index(var)
        except ValueError:
            raise UnknownVariable(f"variable {var!r} not in ring {self.ring}") from None

    # ---- ring alignment -----------------------------------------------
    def with_ring(self, ring: Sequence[str]) -> "Poly":
        """Re-express in another ring containing every variable in use."""
        ring = tuple(ring)
        if ring == self.ring:
            return self
        idx = []
        for v in self.ring:
            idx.append(ring.index(v) if v in ring else None)
        out = {}
        for e, c in self.terms.items():
            ne = [0] * len(ring)
            for k, j in zip(e, idx):
                if k:
                    if j is None:
                        raise MixedRings(f"variable missing from target ring {ring}")
                    ne[j] = k
            out[tuple(ne)] = c
        return Poly(ring, out)

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring == self.ring:
                return other
            if other.is_constant():
                return Poly.const(other.constant_term(), self.ring)
            if self.is_constant():
                return NotImplemented
            raise MixedRings(f"rings differ: {self.ring} vs {other.ring}")
        if isinstance(other, (int, float, complex, Fraction)) or hasattr(other, "real"):
            return Poly.const(other, self.ring)
        return NotImplemented

    def _binary(self, other, op):
        o = self._coerce(other)
        if o is NotImplemented:
            if isinstance(other, Poly):
                # self is constant, other is not: lift self
                lifted = Poly.const(self.constant_term(), other.ring)
                return op(lifted, other)
            return NotImplemented
        return op(self, o)

    # ---- arithmetic ---------------------------------------------------
    @staticmethod
    def _add(p: "Poly", q: "Poly") -> "Poly":
        out = dict(p.terms)
        for e, c in q.terms.items():
            out[e] = out.get(e, 0) + c
        return Poly._raw(p.ring, out)

    @staticmethod
    def _mul(p: "Poly", q: "Poly") -> "Poly":
        out: dict = {}
        for e1, c1 in p.terms.items():
            for e2, c2 in q.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly._raw(p.ring, out)

    def __add__(self, other):
        return self._binary(other, Poly._add)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return Poly._raw(self.ring, {e: -c for e, c in self.terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        return self._binary(other, lambda p, q: Poly._add(p, -q))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, Poly):
            return self._binary(other, Poly._mul)
        o = as_coeff(other)
        return Poly._raw(self.ring, {e: c * o for e, c in self.terms.items()})

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        if isinstance(other, Poly):
            if not other.is_constant() or other.is_zero():
                raise ValueError("division only by nonzero constants")
            other = other.constant_term()
        o = as_coeff(other)
        if o == 0:
            raise ZeroDivisionError("polynomial divided by zero")
        return Poly(self.ring, {e: c / o for e, c in self.terms.items()})

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        result = Poly.const(1, self.ring)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            if self.ring != other.ring:
                if self.is_constant() and other.is_constant():
                    return self.constant_term() == other.constant_term()
                return False
            return self.terms == other.terms
        if isinstance(other, (int, float, complex, Fraction)):
            return self.is_constant() and self.constant_term() == other
        return NotImplemented

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.ring, tuple(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self):
        return f"Poly({self.to_string()!r}, ring={self.ring})"

    def __str__(self):
        return self.to_string()

    # ---- calculus and substitution -----------------------------------
    def diff(self, var: str) -> "Poly":
        """Exact partial derivative with respect to ``var``."""
        i = self._index(var)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                ne = e[:i] + (k - 1,) + e[i + 1:]
                out[ne] = c * k
        return Poly(self.ring, out)

    def gradient(self) -> list["Poly"]:
        return [self.diff(v) for v in self.ring]

    def hessian(self) -> list[list["Poly"]]:
        g = self.gradient()
        return [[gi.diff(v) for v in self.ring] for gi in g]

    def _power_tables(self, values):
        maxexp = [0] * self.nvars
        for e in self.terms:
            for i, k in enumerate(e):
                if k > maxexp[i]:
                    maxexp[i] = k
        tables = []
        for v, m in zip(values, maxexp):
            row = [1]
            for _ in range(m):
                row.append(row[-1] * v)
            tables.append(row)
        return tables

    def evaluate(self, point: Sequence) -> complex:
        """Evaluate at a numeric point; returns a Python complex.

        Powers are tabulated once per variable so each term costs one
        product chain; rounding error is O(eps * terms * magnitude).
        """
        if len(point) != self.nvars:
            raise ValueError(f"point has {len(point)} coordinates, ring has {self.nvars}")
        vals = [complex(v) for v in point]
        tables = self._power_tables(vals)
        acc = 0j
        for e, c in self.terms.items():
            t = complex(c)
            for i, k in enumerate(e):
                if k:
                    t *= tables[i][k]
            acc += t
        return acc

    def evaluate_exact(self, point: Sequence):
        """Evaluate with the coefficient arithmetic itself (exact for Fractions)."""
        if len(point) != self.nvars:
            raise ValueError(f"point has {len(point)} coordinates, ring has {self.nvars}")
        vals = [as_coeff(v) for v in point]
        tables = self._power_tables(vals)
        acc = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for i, k in enumerate(e):
                if k:
                    t = t * tables[i][k]
            acc = acc + t
        return acc

    def compose(self, maps: Sequence["Poly"], target_ring: Sequence[str] | None = None) -> "Poly":
        """Substitute ``maps[i]`` for the i-th ring variable.

        All map entries must live over one target ring (constants are
        lifted).  Returns a polynomial over that ring.
        """
        if len(maps) != self.nvars:
            raise ValueError(f"need {self.nvars} maps, got {len(maps)}")
        rings = {m.ring for m in maps if isinstance(m, Poly) and not m.is_constant()}
        if target_ring is not None:
            target = tuple(target_ring)
            if any(r != target for r in rings):
                raise MixedRings("map entries disagree with the target ring")
        else:
            if len(rings) > 1:
                raise MixedRings(f"map entries over different rings: {sorted(rings)}")
            if rings:
                target = next(iter(rings))
            else:
                target = next((m.ring for m in maps if isinstance(m, Poly)), ())
        lifted = []
        for m in maps:
            if not isinstance(m, Poly):
                m = Poly.const(m, target)
            elif m.ring != target:
                m = Poly.const(m.constant_term(), target)
            lifted.append(m)
        tables = self._power_tables(lifted)
        out = Poly.zero(target)
        acc: dict = {}
        for e, c in self.terms.items():
            t = Poly.const(c, target)
            for i, k in enumerate(e):
                if k:
                    t = t * tables[i][k]
            for te, tc in t.terms.items():
                acc[te] = acc.get(te, 0) + tc
        out = Poly(target, acc)
        return out

    def subs(self, values: Mapping[str, object]) -> "Poly":
        """Substitute numbers or same-ring polynomials for some variables.

        The ring is unchanged; substituted variables simply stop occurring.
        """
        ring = self.ring
        idx = [i for i, v in enumerate(ring) if v in values and any(e[i] for e in self.terms)]
        if not idx:
            return self
        powers = {}
        for i in idx:
            val = values[ring[i]]
            if isinstance(val, Poly):
                val = val.with_ring(ring) if val.ring != ring else val
            else:
                val = Poly.const(val, ring)
            powers[i] = [Poly.const(1, ring), val]
        acc: dict = {}
        for e, c in self.terms.items():
            rest = list(e)
            t = None
            for i in idx:
                k = e[i]
                if k:
                    rest[i] = 0
                    row = powers[i]
                    while len(row) <= k:
                        row.append(row[-1] * row[1])
                    t = row[k] if t is None else t * row[k]
            if t is None:
                acc[e] = acc.get(e, 0) + c
                continue
            for te, tc in t.terms.items():
                key = tuple(a + b for a, b in zip(rest, te))
                acc[key] = acc.get(key, 0) + c * tc
        return Poly._raw(ring, acc)

    def shift(self, point: Sequence) -> "Poly":
        """Return ``G`` with ``G(u) = F(point + u)``, one variable at a time."""
        if len(point) != self.nvars:
            raise ValueError(f"point has {len(point)} coordinates, ring has {self.nvars}")
        p = self
        for i, a in enumerate(point):
            a = as_coeff(a)
            if a != 0:
                p = p._shift_one(i, a)
        return p

    def _shift_one(self, i: int, a) -> "Poly":
        # x_i -> x_i + a, expanded by the binomial theorem
        out: dict = {}
        for e, c in self.terms.items():
            k = e[i]
            if k == 0:
                out[e] = out.get(e, 0) + c
                continue
            apow = [1]
            for _ in range(k):
                apow.append(apow[-1] * a)
            for j in range(k + 1):
                ne = e[:i] + (j,) + e[i + 1:]
                out[ne] = out.get(ne, 0) + c * math.comb(k, j) * apow[k - j]
        return Poly(self.ring, out)

    def coeff_in(self, var: str) -> dict[int, "Poly"]:
        """Split by powers of ``var``: ``{k: coefficient poly (free of var)}``."""
        i = self._index(var)
        parts: dict[int, dict] = {}
        for e, c in self.terms.items():
            ne = e[:i] + (0,) + e[i + 1:]
            parts.setdefault(e[i], {})[ne] = c
        return {k: Poly(self.ring, t) for k, t in sorted(parts.items())}

    def univariate_coeffs(self, var: str) -> list:
        """Ascending scalar coefficients of a polynomial in ``var`` alone."""
        i = self._index(var)
        n = self.degree_in(var)
        coeffs = [Fraction(0)] * (n + 1) if n >= 0 else []
        for e, c in self.terms.items():
            if any(k for j, k in enumerate(e) if j != i):
                raise ValueError(f"polynomial involves variables besides {var!r}")
            coeffs[e[i]] = c
        return coeffs

    def map_coeffs(self, f) -> "Poly":
        return Poly(self.ring, {e: f(c) for e, c in self.terms.items()})

    def chop(self, tol: float) -> "Poly":
        """Drop inexact coefficients with modulus <= tol; snap tiny imaginary parts."""
        out = {}
        for e, c in self.terms.items():
            if isinstance(c, Fraction):
                out[e] = c
                continue
            if abs(c) <= tol:
                continue
            if isinstance(c, complex) and abs(c.imag) <= tol:
                c = c.real
            out[e] = c
        return Poly(self.ring, out)

    def to_complex(self) -> "Poly":
        return Poly(self.ring, {e: complex(c) for e, c in self.terms.items()})

    # ---- serialization ------------------------------------------------
    def to_string(self) -> str:
        """Canonical text form, e.g. ``x^3-x^2+y^2`` or ``2/3*x``."""
        if not self.terms:
            return "0"
        pieces = []
        for e, c in self.terms.items():
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.ring, e) if k
            )
            if isinstance(c, Fraction):
                neg = c < 0
                mag = -c if neg else c
                cs = str(mag)
            else:
                neg = False
                cs = f"({c!r})"
                mag = None
            if mono:
                body = mono if mag == 1 else f"{cs}*{mono}"
            else:
                body = cs
            pieces.append(("-" if neg else "+", body))
        sign, body = pieces[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in pieces[1:]:
            text += sign + body
        return text


def series_mul(a: list, b: list, order: int, ring) -> list:
    """Truncated product of two t-series whose coefficients are Polys."""
    out = [Poly.zero(ring) for _ in range(order + 1)]
    for i, ai in enumerate(a):
        if ai.is_zero():
            continue
        for j in range(0, order + 1 - i):
            if j >= len(b):
                break
            bj = b[j]
            if bj.is_zero():
                continue
            out[i + j] = out[i + j] + ai * bj
    return out


def compose_series(F: Poly, series: Sequence[list], order: int, ring: Sequence[str]) -> list:
    """Coefficients of ``t^0..t^order`` of ``F(series_1(t), ..., series_n(t))``.

    ``series[i]`` is a list of Polys over ``ring``: the t-coefficients of the
    i-th coordinate.  Only terms up to ``order`` are ever formed.
    """
    ring = tuple(ring)
    if len(series) != F.nvars:
        raise ValueError(f"need {F.nvars} series, got {len(series)}")
    norm = []
    for s in series:
        s = [x if isinstance(x, Poly) else Poly.const(x, ring) for x in s[: order + 1]]
        s = s + [Poly.zero(ring)] * (order + 1 - len(s))
        norm.append(s)
    maxexp = [0] * F.nvars
    for e in F.terms:
        for i, k in enumerate(e):
            maxexp[i] = max(maxexp[i], k)
    one = [Poly.const(1, ring)] + [Poly.zero(ring)] * order
    powers = []
    for s, m in zip(norm, maxexp):
        row = [one]
        for _ in range(m):
            row.append(series_mul(row[-1], s, order, ring))
        powers.append(row)
    acc = [dict() for _ in range(order + 1)]
    for e, c in F.terms.items():
        term = None
        for i, k in enumerate(e):
            if k:
                term = powers[i][k] if term is None else series_mul(term, powers[i][k], order, ring)
        if term is None:
            term = one
        for d in range(order + 1):
            for te, tc in term[d].terms.items():
                acc[d][te] = acc[d].get(te, 0) + c * tc
    return [Poly(ring, a) for a in acc]


def sqrt_exact(q):
    """Square root of a non-negative number: a Fraction when q is a rational square."""
    if isinstance(q, Fraction) and q >= 0:
        n, d = q.numerator, q.denominator
        rn, rd = math.isqrt(n), math.isqrt(d)
        if rn * rn == n and rd * rd == d:
            return Fraction(rn, rd)
    return math.sqrt(float(q))


def divide_linear(P: Poly, L: Poly) -> tuple[Poly, Poly]:
    """Divide ``P`` by a linear form ``L``; returns ``(quotient, remainder)``.

    Division is synthetic in the variable whose coefficient in ``L`` has the
    largest modulus; the remainder is free of that variable.
    """
    if L.degree() != 1:
        raise ValueError("divisor must have degree 1")
    if L.ring != P.ring:
        raise MixedRings("divide_linear needs a common ring")
    ring = P.ring
    lin = {}
    for e, c in L.terms.items():
        if sum(e) == 1:
            lin[e.index(1)] = c
    j = max(lin, key=lambda i: abs(lin[i]))
    var = ring[j]
    lead = lin[j]
    # L = lead * (x_j + m), m free of x_j
    m = (L - Poly.var(var, ring) * lead) / lead
    parts = P.coeff_in(var)
    n = max(parts) if parts else -1
    if n < 1:
        return Poly.zero(ring), P
    q = [Poly.zero(ring)] * n
    carry = Poly.zero(ring)
    for k in range(n, 0, -1):
        carry = parts.get(k, Poly.zero(ring)) - m * carry if k < n else parts.get(k, Poly.zero(ring))
        q[k - 1] = carry
    rem = parts.get(0, Poly.zero(ring)) - m * q[0]
    xj = Poly.var(var, ring)
    quot = Poly.zero(ring)
    for k in range(n - 1, -1, -1):
        quot = quot * xj + q[k]
    return quot / lead, rem
