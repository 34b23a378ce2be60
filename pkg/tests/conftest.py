import random
from fractions import Fraction

import pytest

from singcurv.ratpoly import Poly

# criterion -> list of (label, passed, detail), filled by test_acceptance
ACCEPTANCE = {}


def record(criterion, label, passed, detail=""):
    ACCEPTANCE.setdefault(criterion, []).append((label, bool(passed), detail))
    return bool(passed)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for crit in sorted(ACCEPTANCE):
        rows = ACCEPTANCE[crit]
        ok = all(p for _, p, _ in rows)
        tr.write_line(f"criterion {crit}: {'PASS' if ok else 'FAIL'} ({sum(p for _, p, _ in rows)}/{len(rows)} checks)")
        for label, p, detail in rows:
            if not p:
                tr.write_line(f"    FAIL {label} {detail}")


def random_poly(rng, ring, max_deg=4, terms=6, lo=-5, hi=5):
    """Random exact polynomial with integer coefficients in [lo, hi]."""
    out = {}
    n = len(ring)
    for _ in range(terms):
        d = rng.randint(1, max_deg)
        exp = [0] * n
        for _ in range(d):
            exp[rng.randrange(n)] += 1
        c = rng.randint(lo, hi)
        if c:
            out[tuple(exp)] = out.get(tuple(exp), 0) + c
    return Poly(ring, out)


def random_point(rng, n, den=4):
    return tuple(Fraction(rng.randint(-6, 6), rng.randint(1, den)) for _ in range(n))


def through(F, P):
    """``F - F(P)`` so that ``P`` lies on the zero set."""
    return F - F.evaluate_exact(P)


@pytest.fixture
def rng():
    return random.Random(20240607)
