import math
from fractions import Fraction

import numpy as np
import pytest

from conftest import random_point, random_poly, through
from singcurv import catalog
from singcurv.errors import OrderExhausted, PointNotOnVariety, SingularPoint
from singcurv.parse import parse_poly
from singcurv.singular import ProjDirection
from singcurv.space import regular_space_frenet_implicit, space_branch_frenet, space_tangents

O3 = (0, 0, 0)
RING = ("x", "y", "z")


def pair(F, G):
    return parse_poly(F, RING), parse_poly(G, RING)


def frenet(F, G, P=O3):
    return sorted((round(b.curvature, 10), round(abs(b.torsion), 10) if b.torsion is not None else None)
                  for b in space_branch_frenet(F, G, P))


def has_direction(dirs, v, mult=None):
    want = ProjDirection.from_vector(v, 1)
    return any(d.same_line(want) and (mult is None or d.multiplicity == mult) for d in dirs)


def test_circle_in_plane():
    F, G = pair("z", "x^2+y^2-1")
    (b,) = space_branch_frenet(F, G, (1, 0, 0))
    assert b.curvature == 1 and b.torsion == 0
    assert regular_space_frenet_implicit(F, G, (1, 0, 0)) == (1.0, 0.0)


def test_straight_line():
    F, G = pair("x", "y")
    (b,) = space_branch_frenet(F, G, (0, 0, 5))
    assert b.curvature == 0 and b.torsion == 0
    assert any("straight" in n for n in b.notes)
    assert regular_space_frenet_implicit(F, G, (0, 0, 5)) == (0.0, 0.0)


def test_helix_like_regular_point():
    F, G = pair(*catalog.sphere_cylinder(1))
    (b,) = space_branch_frenet(F, G, O3)
    assert b.curvature == pytest.approx(math.sqrt(141 / 125), rel=1e-12)
    assert b.torsion == pytest.approx(-36 / 141, rel=1e-12)
    k, tau = regular_space_frenet_implicit(F, G, O3)
    assert k == pytest.approx(b.curvature, rel=1e-12)
    assert tau == pytest.approx(b.torsion, rel=1e-12)


def test_tangents_of_examples():
    dirs = space_tangents(*pair(*catalog.sphere_cylinder(1)), O3)
    assert len(dirs) == 1 and has_direction(dirs, (0, 1, -2))
    dirs = space_tangents(*pair(*catalog.two_cylinders(1, 2)), O3)
    assert has_direction(dirs, (0, 1, math.sqrt(2))) and has_direction(dirs, (0, 1, -math.sqrt(2)))
    dirs = space_tangents(*pair(*catalog.PINCHED_XY), O3)
    assert has_direction(dirs, (0, 1, 1), 1) and has_direction(dirs, (0, 1, -1), 1)
    assert has_direction(dirs, (1, 0, 0), 2)


def test_tangent_cylinders():
    bs = space_branch_frenet(*pair(*catalog.two_cylinders(1, 1)), O3)
    assert len(bs) == 2
    assert all(b.curvature == pytest.approx(0.5) and b.torsion == pytest.approx(0, abs=1e-12) for b in bs)
    bs = space_branch_frenet(*pair(*catalog.two_cylinders(1, 2)), O3)
    assert all(b.curvature == pytest.approx(1 / 3) for b in bs)
    assert sorted(b.torsion for b in bs) == pytest.approx([-1 / (4 * math.sqrt(2)), 1 / (4 * math.sqrt(2))])


def test_swap_and_orientation():
    F, G = pair(*catalog.two_cylinders(1, 2))
    base = frenet(F, G)
    assert frenet(G, F) == base
    assert frenet(-F, -G) == base
    assert frenet(F * 3, G * Fraction(-2, 5)) == base


def test_dilation():
    F, G = pair(*catalog.sphere_cylinder(1))
    lam = Fraction(2)
    xs = [parse_poly(v, RING) / lam for v in RING]
    Fd, Gd = F.compose(xs, RING), G.compose(xs, RING)
    (a,) = space_branch_frenet(F, G, O3)
    (b,) = space_branch_frenet(Fd, Gd, O3)
    assert b.curvature == pytest.approx(a.curvature / 2, rel=1e-12)
    assert b.torsion == pytest.approx(a.torsion / 2, rel=1e-12)


def test_regular_matches_implicit(rng):
    checked = 0
    while checked < 50:
        P = random_point(rng, 3)
        F = through(random_poly(rng, RING, max_deg=2, terms=5), P)
        G = through(random_poly(rng, RING, max_deg=2, terms=5), P)
        try:
            k, tau = regular_space_frenet_implicit(F, G, P)
        except SingularPoint:
            continue
        (b,) = space_branch_frenet(F, G, P)
        assert b.curvature == pytest.approx(k, rel=1e-8, abs=1e-10)
        if tau is None:
            assert b.torsion is None
        else:
            assert b.torsion == pytest.approx(tau, rel=1e-7, abs=1e-9)
        checked += 1


def test_errors():
    F, G = pair("x^2+y^2+z^2-1", "z")
    with pytest.raises(PointNotOnVariety):
        space_branch_frenet(F, G, O3)
    with pytest.raises(SingularPoint):
        regular_space_frenet_implicit(*pair("x^2-y^2", "z"), O3)
    with pytest.raises(ValueError):
        space_branch_frenet(parse_poly("x"), parse_poly("y"), (0, 0))


def test_order_exhausted():
    # the pinched surface needs degree-4 terms along (1, 0, 0)
    with pytest.raises(OrderExhausted):
        space_branch_frenet(*pair(*catalog.PINCHED_XY), O3, max_order=2)
