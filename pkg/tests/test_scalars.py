from fractions import Fraction

import pytest

from liberator.scalars import (
    ParamPoly,
    UnassignedUnknownError,
    exact_div,
    format_rational,
    name_key,
    ppoly_degree_split,
    ppoly_eval,
    ppoly_mul,
    simplify,
)

u, v = ParamPoly.var("u"), ParamPoly.var("v")


def test_mul_examples():
    assert ppoly_mul(u, v) == u * v
    assert str(ppoly_mul(u + 1, u - 1)) == "u^2 - 1"
    assert ppoly_mul(Fraction(2, 3), Fraction(3, 2)) == 1


def test_product_degree_adds():
    p, q = u * u + v, u * v - 3
    assert (p * q).degree() == p.degree() + q.degree()


def test_eval_examples():
    assert ppoly_eval(u * u - 1, {"u": 3}) == 8
    assert ppoly_eval(Fraction(5, 7), {}) == Fraction(5, 7)
    assert ppoly_eval(u * v + v, {"u": 1, "v": -1}) == -2


def test_eval_names_missing_unknown():
    with pytest.raises(UnassignedUnknownError) as info:
        ppoly_eval(u * v, {"u": 1})
    assert info.value.name == "v"
    assert "'v'" in str(info.value)


def test_degree_split_examples():
    lin, hi, const = ppoly_degree_split(u + u * v + 3)
    assert (lin, hi, const) == (u, u * v, ParamPoly.const(3))
    assert ppoly_degree_split(0) == (0, 0, 0)
    a, b = ParamPoly.var("alpha"), ParamPoly.var("beta")
    lin, hi, const = ppoly_degree_split(a * b - a)
    assert lin == -a and hi == a * b and const == 0


def test_canonical_rendering():
    assert str(ParamPoly.const(Fraction(-3, 2)) * u * v + u ** 3) == "u^3 - 3/2 u v"
    assert str(ParamPoly()) == "0"
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(Fraction(-1, 3)) == "-1/3"


def test_no_zero_coefficients_stored():
    p = (u + v) - v
    assert p.terms == {(("u", 1),): 1}
    assert not (u - u).terms


def test_natural_name_order():
    assert sorted(["c10", "c2", "c1"], key=name_key) == ["c1", "c2", "c10"]


def test_constant_hash_matches_fraction():
    assert hash(ParamPoly.const(Fraction(1, 2))) == hash(Fraction(1, 2))
    assert simplify(ParamPoly.const(3)) == Fraction(3)
    assert isinstance(simplify(ParamPoly.const(3)), Fraction)


def test_substitute_partial():
    p = u * u * v + v
    assert p.substitute({"u": v + 1}) == (v + 1) * (v + 1) * v + v


def test_exact_division():
    p = (u + v) * (u - 2 * v + 1)
    assert exact_div(p, u + v) == u - 2 * v + 1
    with pytest.raises(ValueError):
        exact_div(u * u + 1, u + 1)
    assert exact_div(Fraction(3), Fraction(6)) == Fraction(1, 2)
