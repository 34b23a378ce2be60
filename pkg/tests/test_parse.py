from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from singcurv import catalog
from singcurv.errors import ExprSyntaxError, InputError, NonPolynomial, UnknownVariable
from singcurv.parse import evaluate_ast, parse_ast, parse_point, parse_poly
from singcurv.ratpoly import Poly
from strategies import polys

XYZ = ("x", "y", "z")


def test_example_one():
    F = parse_poly("x^3-x^2+y^2")
    assert F.terms == {(3, 0): 1, (2, 0): -1, (0, 2): 1}


def test_example_seven_expanded():
    F = parse_poly("(x^2+y^2)^3-4x^2y^2")
    assert F.degree() == 6 and F.min_degree() == 4


@pytest.mark.parametrize("i", range(1, 9))
def test_example_orders(i):
    assert parse_poly(catalog.PLANE[i]).min_degree() == catalog.PLANE_ORDER[i]


def test_rational_and_decimal_literals():
    assert parse_poly("2/3*x") == Poly(("x", "y"), {(1, 0): Fraction(2, 3)})
    assert parse_poly("0.5x") == parse_poly("1/2 x")
    assert parse_poly("1.25") == Poly.const(Fraction(5, 4), ("x", "y"))


def test_juxtaposition_binds_exponent_to_last_name():
    # "yz^2" is y*z^2, not (yz)^2
    assert parse_poly("yz^2", XYZ) == parse_poly("y*z^2", XYZ)
    assert parse_poly("3x^2y", XYZ) == parse_poly("3*x^2*y", XYZ)
    assert parse_poly(catalog.PINCHED, XYZ) == parse_poly("x^4+y^2+y*z^2-z^2", XYZ)


def test_unary_minus_and_power():
    assert parse_poly("-x^2") == -parse_poly("x^2")
    assert parse_poly("x**3") == parse_poly("x^3")
    assert parse_poly("2(x+y)") == parse_poly("2*x+2*y")


@pytest.mark.parametrize("text", ["x^-1", "x^1.5", "x^1/2"])
def test_non_polynomial(text):
    with pytest.raises(NonPolynomial):
        parse_poly(text)


@pytest.mark.parametrize("text,offset", [("x+", 2), ("x+*y", 2), ("(x+y", 4), ("x$", 1), ("x^2=0", 3)])
def test_syntax_error_offsets(text, offset):
    with pytest.raises(ExprSyntaxError) as info:
        parse_poly(text)
    assert info.value.offset == offset


def test_unknown_variable_and_empty():
    with pytest.raises(UnknownVariable):
        parse_poly("x+q")
    with pytest.raises(ExprSyntaxError):
        parse_poly("   ")


def test_parse_point():
    assert parse_point("1/2, 0, -3") == (Fraction(1, 2), 0, -3)
    assert parse_point("0.25,1") == (Fraction(1, 4), 1)
    with pytest.raises(InputError):
        parse_point("1,,2")
    with pytest.raises(InputError):
        parse_point("1/0")


@settings(max_examples=150, deadline=None)
@given(polys(XYZ, max_deg=5, max_terms=7))
def test_roundtrip(F):
    assert parse_poly(F.to_string(), XYZ) == F


# random derivations of the grammar, checked against direct AST evaluation
atoms = st.one_of(
    st.sampled_from(["x", "y", "z", "xy", "zx"]),
    st.integers(0, 20).map(str),
    st.tuples(st.integers(0, 9), st.integers(1, 9)).map(lambda t: f"{t[0]}/{t[1]}"),
    st.sampled_from(["0.5", "1.25", "3."]),
)


def _expr(children):
    return st.one_of(
        st.tuples(children, st.sampled_from(["+", "-", "*", " "]), children).map(lambda t: f"{t[0]}{t[1]}{t[2]}"),
        children.map(lambda c: f"({c})"),
        st.tuples(children, st.integers(0, 3)).map(lambda t: f"({t[0]})^{t[1]}"),
        children.map(lambda c: f"-{c}"),
    )


exprs = st.recursive(atoms, _expr, max_leaves=8)


@settings(max_examples=150, deadline=None)
@given(exprs, st.lists(st.tuples(*[st.builds(Fraction, st.integers(-5, 5), st.integers(1, 3))] * 3),
                       min_size=5, max_size=5))
def test_fuzz_matches_ast(text, pts):
    # juxtaposition like "1 2" is not a product of numbers in every reading;
    # only inputs the parser accepts are compared
    try:
        ast = parse_ast(text, XYZ)
    except InputError:
        return
    F = parse_poly(text, XYZ)
    for p in pts:
        assert F.evaluate_exact(p) == evaluate_ast(ast, dict(zip(XYZ, p)))
