from fractions import Fraction
from math import comb

import pytest

from liberator.ncalgebra import (
    GeneratorMismatchError,
    GeneratorSet,
    NCPoly,
    NormalFormError,
    RelationSet,
    commutator,
    ideal_contains,
    multinomial,
    nc_mul,
    normal_form,
    pbw_check,
    relations_from_free,
    symmetric_coordinates,
    symmetric_str,
    weyl_symmetrize,
)
from liberator.scalars import ParamPoly

from helpers import XY, XYZ, brute_reduce, gens_of

X, Y = gens_of(XY)
ONE = NCPoly.const(XY, 1)


def test_nc_mul_examples():
    assert nc_mul(X, Y) == NCPoly(XY, {(0, 1): 1})
    assert nc_mul(X + Y, X - Y) == X * X - X * Y + Y * X - Y * Y
    p = X * Y + Fraction(3, 4) * Y
    assert nc_mul(ONE, p) == p == nc_mul(p, ONE)


def test_generator_mismatch():
    other = NCPoly.gen(GeneratorSet(("A", "B")), 0)
    with pytest.raises(GeneratorMismatchError):
        nc_mul(X, other)
    with pytest.raises(GeneratorMismatchError):
        commutator(other, Y)


def test_commutator_examples():
    assert commutator(X, X) == 0
    assert commutator(X, Y) == X * Y - Y * X
    assert commutator(X * X, Y) == X * X * Y - Y * X * X


def test_weyl_examples():
    assert weyl_symmetrize(XY, (1, 1)) == (X * Y + Y * X).scale(Fraction(1, 2))
    assert weyl_symmetrize(XY, (2, 0)) == X * X
    third = Fraction(1, 3)
    assert weyl_symmetrize(XY, (2, 1)) == (X * X * Y + X * Y * X + Y * X * X).scale(third)


@pytest.mark.parametrize("md", [(0, 0), (3, 0), (2, 2), (1, 3), (3, 2)])
def test_weyl_weights(md):
    w = weyl_symmetrize(XY, md)
    assert len(w.terms) == multinomial(md)
    assert sum(w.terms.values()) == 1
    assert all(c > 0 for c in w.terms.values())


def test_normal_form_examples():
    ccr = RelationSet(XY, {(0, 1): ONE})
    assert normal_form(Y * X, ccr) == X * Y - 1
    alpha = Fraction(2, 5)
    qp = RelationSet(XY, {(0, 1): X * Y * alpha})
    assert normal_form(Y * X, qp) == (X * Y).scale(1 - alpha)


def test_normal_form_symbolic_alpha():
    a = ParamPoly.var("alpha")
    qp = RelationSet(XY, {(0, 1): (X * Y).scale(a)})
    assert normal_form(Y * X, qp) == (X * Y).scale(1 - a)


def test_normal_form_matches_brute_force_ccr():
    ccr = RelationSet(XY, {(0, 1): ONE})
    word = (1, 1, 0, 1, 0, 0)
    got = normal_form(NCPoly.monomial(XY, word), ccr)
    assert got.terms == brute_reduce({word: 1}, {(0, 1): {(): 1}}, "left")
    assert got.terms == brute_reduce({word: 1}, {(0, 1): {(): 1}}, "right")


def test_degree_raising_needs_cap():
    raising = RelationSet(XY, {(0, 1): X * X * X * Y * Y})
    with pytest.raises(NormalFormError, match="DegreeCap"):
        normal_form(Y * X, raising)
    capped = raising.with_cap(5)
    assert normal_form(Y * X, capped) == X * Y - X * X * X * Y * Y
    assert normal_form(Y * X * Y, capped) == X * Y * Y  # degree 6 discarded
    assert not raising.with_cap(4).rhs(0, 1)  # the relation itself is over the cap


def test_relation_must_be_normal():
    with pytest.raises(ValueError):
        RelationSet(XY, {(0, 1): Y * X})


def test_pbw_ccr():
    report = pbw_check(RelationSet(XY, {(0, 1): ONE}), 4)
    assert report.passing
    assert [f for _, f, _ in report.dimensions] == [d + 1 for d in range(5)]
    assert "no overlaps" in report.notes


def test_pbw_heisenberg():
    X3, Y3, Z3 = gens_of(XYZ)
    report = pbw_check(RelationSet(XYZ, {(0, 1): Z3}), 4)
    assert report.passing and report.overlaps_checked == 1
    assert [(f, e) for _, f, e in report.dimensions] == [(comb(d + 2, d),) * 2 for d in range(5)]


def test_pbw_so3():
    X3, Y3, Z3 = gens_of(XYZ)
    rels = RelationSet(XYZ, {(0, 1): Z3, (1, 2): X3, (0, 2): -Y3})
    assert pbw_check(rels, 4).passing


def _overlap_oracle(rules):
    left = brute_reduce({(2, 1, 0): 1}, rules, "left")
    right = brute_reduce({(2, 1, 0): 1}, rules, "right")
    return left == right


def test_pbw_overlap_agrees_with_brute_force():
    X3, Y3, Z3 = gens_of(XYZ)
    cases = [
        ({(0, 1): Z3, (0, 2): Z3 * Z3}, {(0, 1): {(2,): 1}, (0, 2): {(2, 2): 1}}),
        # [X,Y]=Z, [X,Z]=X, [Y,Z]=0 breaks Jacobi
        ({(0, 1): Z3, (0, 2): X3}, {(0, 1): {(2,): 1}, (0, 2): {(0,): 1}}),
        ({(0, 1): Y3 * Z3, (1, 2): X3}, {(0, 1): {(1, 2): 1}, (1, 2): {(0,): 1}}),
    ]
    verdicts = []
    for rhs, rules in cases:
        report = pbw_check(RelationSet(XYZ, rhs), 3)
        assert (not report.overlap_failures) == _overlap_oracle(rules)
        verdicts.append(not report.overlap_failures)
    assert verdicts[0] and not verdicts[1]


def test_symmetric_coordinates_round_trip():
    rels = RelationSet(XY, {(0, 1): ONE})
    x = normal_form(weyl_symmetrize(XY, (1, 1)) * 3 + X * X, rels)
    coords = symmetric_coordinates(x, rels)
    assert coords == {(2, 0): 1, (1, 1): 3}
    assert symmetric_str({(1, 1): Fraction(-1, 2)}, XY) == "-1/2 sym(X,Y)"


def test_relations_from_free_normalizes():
    rels = relations_from_free(XY, {(0, 1): Y * X})
    # [X,Y] = YX means XY - YX = YX, so YX = XY/2
    assert normal_form(Y * X, rels) == (X * Y).scale(Fraction(1, 2))


def test_ideal_contains():
    rel = X * Y - Y * X - X * X
    assert ideal_contains(rel * Y - Y * rel, [rel], 3)
    assert not ideal_contains(X * Y, [rel], 3)
