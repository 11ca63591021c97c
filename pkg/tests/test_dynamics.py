from fractions import Fraction

import pytest

from liberator.dynamics import (
    Dynamics,
    derive,
    flow_apply,
    flow_preserves,
    flow_series,
    preservation_residual,
)
from liberator.ncalgebra import GeneratorMismatchError, GeneratorSet, NCPoly, RelationSet
from liberator.scalars import ParamPoly

from helpers import XY, gens_of

X, Y = gens_of(XY)
ONE = NCPoly.const(XY, 1)


def diag(lam, mu):
    return Dynamics.linear([[lam, 0], [0, mu]])


def test_derive_diagonal_eigen():
    lam, mu = Fraction(3, 2), Fraction(-2)
    dyn = diag(lam, mu)
    for i, j in [(0, 0), (2, 0), (1, 3), (3, 2)]:
        mono = X ** i * Y ** j
        assert derive(dyn, mono) == mono.scale(i * lam + j * mu)


def test_derive_unit_and_jordan():
    lam = Fraction(5)
    jordan = Dynamics.linear([[lam, 1], [0, lam]])
    assert derive(jordan, ONE) == 0
    assert derive(jordan, X * Y) == (X * Y).scale(2 * lam) + Y * Y


def test_derive_stays_unreduced():
    dyn = Dynamics(XY, [Y * X, NCPoly.zero(XY)])
    assert derive(dyn, X) == Y * X


def test_derive_generator_mismatch():
    with pytest.raises(GeneratorMismatchError):
        derive(diag(1, 1), NCPoly.gen(GeneratorSet(("A", "B")), 0))


def test_linear_convention_flag():
    a = [[1, 1], [0, 1]]
    assert Dynamics.linear(a).rhs == (X + Y, Y)
    assert Dynamics.linear(a, transpose=True).rhs == (X, X + Y)


def test_flow_series_examples():
    lam = Fraction(-2, 3)
    fs = flow_series(Dynamics(XY, [X.scale(lam), NCPoly.zero(XY)]), 5)
    assert [c for c in fs.coefficients[0]] == [X.scale(lam ** k) for k in range(6)]
    jordan = Dynamics.linear([[lam, 1], [0, lam]])
    fs = flow_series(jordan, 4)
    for k, c in enumerate(fs.coefficients[0]):
        expected = X.scale(lam ** k) + (Y.scale(k * lam ** (k - 1)) if k else NCPoly.zero(XY))
        assert c == expected
    frozen = flow_series(Dynamics(XY, [NCPoly.zero(XY)] * 2), 8)
    assert fs.order == 4 and all(c == 0 for c in frozen.coefficients[0][1:])
    assert frozen.series(0)[0] == X


def test_flow_series_order_validation():
    with pytest.raises(ValueError):
        flow_series(diag(1, 1), 0)


def test_residual_examples():
    alpha = Fraction(1, 2)
    qp = RelationSet(XY, {(0, 1): (X * Y).scale(alpha)})
    assert preservation_residual(diag(1, 2), qp, (0, 1)).is_zero()
    ccr = RelationSet(XY, {(0, 1): ONE})
    assert preservation_residual(diag(1, -1), ccr, (0, 1)).is_zero()
    # D([X,Y] - 1) = 2[X,Y] = 2 in the quotient
    assert preservation_residual(diag(1, 1), ccr, (0, 1)).value == 2


def test_residual_symbolic_ansatz():
    a0 = ParamPoly.var("a0")
    rels = RelationSet(XY, {(0, 1): NCPoly.const(XY, a0)})
    res = preservation_residual(diag(1, 1), rels, (0, 1))
    assert res.value == NCPoly.const(XY, 2 * a0)


def test_flow_preserves_examples():
    qp = RelationSet(XY, {(0, 1): (X * Y).scale(Fraction(1, 2))})
    assert flow_preserves(diag(1, 2), qp, 6)
    ccr = RelationSet(XY, {(0, 1): ONE})
    check = flow_preserves(diag(1, 1), ccr, 2)
    assert not check.preserved
    assert check.witness[1] == 1
    zero = Dynamics(XY, [NCPoly.zero(XY)] * 2)
    assert flow_preserves(zero, ccr, 8)
    assert flow_preserves(zero, RelationSet(XY, {(0, 1): X * X - Y}), 8)


def test_flow_apply_matches_exponential():
    # exp(tD) XY for D = diag(1, 2) is e^{3t} XY
    fa = flow_apply(diag(1, 2), X * Y, 4, RelationSet(XY))
    from math import factorial
    assert fa == [(X * Y).scale(Fraction(3 ** k, factorial(k))) for k in range(5)]


def test_flow_preserves_rejects_unknowns():
    rels = RelationSet(XY, {(0, 1): NCPoly.const(XY, ParamPoly.var("u"))})
    with pytest.raises(ValueError):
        flow_preserves(diag(1, 1), rels, 2)


def test_dynamics_rejects_parameters():
    with pytest.raises(ValueError):
        Dynamics(XY, [X.scale(ParamPoly.var("k")), Y])
