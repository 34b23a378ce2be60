"""Worked example varieties used by the tests and the experiment scripts.

Every entry is a polynomial string (or a pair for space curves) whose
distinguished point is the origin unless stated otherwise.
"""
from __future__ import annotations

from fractions import Fraction

PLANE = {
    1: "x^3-x^2+y^2",
    2: "x^3+x^2+y^2",
    3: "x^3-y^2",
    4: "2x^4-3x^2y+y^2-2y^3+y^4",
    5: "x^4+x^2y^2-2x^2y-xy^2+y^2",
    6: "(x^2+y^2)^2+3x^2y-y^3",
    7: "(x^2+y^2)^3-4x^2y^2",
    8: "x^6-x^2y^3-y^5",
}

# multiplicity of the origin for each plane example
PLANE_ORDER = {1: 2, 2: 2, 3: 2, 4: 2, 5: 2, 6: 3, 7: 4, 8: 5}


def line_circle(R=1) -> str:
    """A line and a circle of radius ``R`` crossing at the origin."""
    return f"(x-y)*(x^2+y^2-{Fraction(R)}*2*x)"


def plane_sphere(R=1) -> str:
    """A plane and a sphere of radius ``R`` crossing at the origin."""
    return f"(x-y)*(x^2+y^2+z^2-{Fraction(R)}*2*x)"


PINCHED = "x^4+y^2+yz^2-z^2"


def sphere_cylinder(R=1) -> tuple[str, str]:
    """Sphere meeting a quadric cylinder transversally (regular point)."""
    return f"x^2+y^2+z^2-{Fraction(R)}*2*x", "x^2+2y-yz+z"


def two_cylinders(R1=1, R2=1) -> tuple[str, str]:
    """Two circular cylinders tangent to each other at the origin."""
    return f"x^2+y^2-{Fraction(R1)}*2*x", f"x^2+z^2-{Fraction(R2)}*2*x"


def pinched_cylinder(R=1) -> tuple[str, str]:
    return PINCHED, f"x^2+y^2-{Fraction(R)}*2*x"


PINCHED_XY = (PINCHED, "xy")
