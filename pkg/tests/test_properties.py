"""Hypothesis property tests for the algebraic invariants."""

import random

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from liberator.dynamics import Dynamics, derive, flow_preserves, preservation_residual
from liberator.hamiltonian import adjoint_action, from_symmetric
from liberator.ncalgebra import NCPoly, commutator, normal_form, symmetric_coordinates
from liberator.parser import format_dynamics, parse_dynamics
from liberator.scalars import ParamPoly, ppoly_degree_split, ppoly_eval
from liberator.solver import resonance_monomials

from families import preserved_pair, random_poly, relation_set
from helpers import XY, XYZ

SETTINGS = settings(max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow])

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)
VARS = ("u", "v", "w")


@st.composite
def ppolys(draw):
    out = ParamPoly.const(0)
    for _ in range(draw(st.integers(0, 4))):
        term = ParamPoly.const(draw(rationals))
        for name in VARS:
            term = term * ParamPoly.var(name) ** draw(st.integers(0, 2))
        out = out + term
    return out


assignments = st.fixed_dictionaries({name: rationals for name in VARS})


@st.composite
def ncpolys(draw, gens=XY, maxlen=3):
    terms = draw(st.dictionaries(
        st.lists(st.integers(0, len(gens) - 1), max_size=maxlen).map(tuple), rationals, max_size=4))
    return NCPoly(gens, terms)


generator_sets = st.sampled_from([XY, XYZ])
seeds = st.integers(0, 2 ** 32).map(random.Random)


# scalars ---------------------------------------------------------------------


@SETTINGS
@given(ppolys(), ppolys(), ppolys())
def test_ring_axioms(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x
    assert x * (y + z) == x * y + x * z
    assert (x + y) + z == x + (y + z)


@SETTINGS
@given(ppolys(), ppolys(), assignments)
def test_eval_is_homomorphism(x, y, values):
    assert ppoly_eval(x * y, values) == ppoly_eval(x, values) * ppoly_eval(y, values)
    assert ppoly_eval(x + y, values) == ppoly_eval(x, values) + ppoly_eval(y, values)


@SETTINGS
@given(ppolys())
def test_degree_split_sums_back(x):
    lin, hi, const = ppoly_degree_split(x)
    assert ParamPoly.lift(lin) + ParamPoly.lift(hi) + ParamPoly.lift(const) == x
    assert ParamPoly.lift(lin).degree() <= 1
    assert all(sum(e for _, e in mono) >= 2 for mono in ParamPoly.lift(hi).terms)


# noncommutative algebra ------------------------------------------------------


@SETTINGS
@given(seeds, st.data())
def test_normal_form_linear_and_idempotent(rng, data):
    rels = relation_set(rng)
    x = data.draw(ncpolys(rels.gens))
    y = data.draw(ncpolys(rels.gens))
    nx = normal_form(x, rels)
    assert nx.is_normal()
    assert normal_form(nx, rels) == nx
    assert normal_form(x + y, rels) == nx + normal_form(y, rels)


@SETTINGS
@given(generator_sets.flatmap(lambda g: st.tuples(ncpolys(g), ncpolys(g))))
def test_commutator_antisymmetric(pair):
    x, y = pair
    assert commutator(x, y) == -commutator(y, x)


@SETTINGS
@given(seeds)
def test_symmetric_coordinates_round_trip(rng):
    rels = relation_set(rng)
    x = normal_form(random_poly(rng, rels.gens, 3), rels)
    coords = symmetric_coordinates(x, rels)
    assert coords is not None
    assert normal_form(from_symmetric(rels.gens, coords), rels) == x


# dynamics --------------------------------------------------------------------


@st.composite
def dynamics(draw, gens=XY):
    return Dynamics(gens, [draw(ncpolys(gens, 2)) for _ in gens.names])


@SETTINGS
@given(generator_sets.flatmap(lambda g: st.tuples(dynamics(g), ncpolys(g), ncpolys(g), rationals)))
def test_leibniz_and_linearity(args):
    dyn, x, y, s = args
    assert derive(dyn, x * y) == derive(dyn, x) * y + x * derive(dyn, y)
    assert derive(dyn, x + y.scale(s)) == derive(dyn, x) + derive(dyn, y).scale(s)


@SETTINGS
@given(seeds, rationals)
def test_residual_scales_with_dynamics(rng, s):
    rels = relation_set(rng)
    dyn = Dynamics(rels.gens, [random_poly(rng, rels.gens, 2, 3) for _ in rels.gens.names])
    for pair in rels.gens.pairs():
        base = preservation_residual(dyn, rels, pair).value
        assert preservation_residual(dyn.scaled(s), rels, pair).value == base.scale(s)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_zero_residual_implies_flow(rng):
    dyn, rels = preserved_pair(rng, cyclic=True)
    assert all(preservation_residual(dyn, rels, p).is_zero() for p in dyn.gens.pairs())
    assert flow_preserves(dyn, rels, 3).preserved


# solver ----------------------------------------------------------------------


@SETTINGS
@given(rationals, rationals, rationals.filter(bool), st.integers(0, 8))
def test_resonance_scale_invariance(lam, mu, c, maxdeg):
    assert resonance_monomials(lam, mu, maxdeg) == resonance_monomials(c * lam, c * mu, maxdeg)


# hamiltonicity ---------------------------------------------------------------


@SETTINGS
@given(seeds)
def test_adjoint_is_derivation(rng):
    rels = relation_set(rng)
    h, x, y = (random_poly(rng, rels.gens, 2, 3) for _ in range(3))
    left = adjoint_action(h, x * y, rels)
    right = normal_form(adjoint_action(h, x, rels) * y + x * adjoint_action(h, y, rels), rels)
    assert left == right


# parser ----------------------------------------------------------------------


@SETTINGS
@given(generator_sets.flatmap(lambda g: dynamics(g)))
def test_parse_round_trip(dyn):
    again = parse_dynamics(format_dynamics(dyn))
    assert again.gens == dyn.gens and again.rhs == dyn.rhs
