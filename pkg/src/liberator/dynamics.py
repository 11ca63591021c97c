"""Derivation induced by an operator ODE system and its formal flow."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from .ncalgebra import (
    GeneratorMismatchError,
    GeneratorSet,
    NCPoly,
    RelationSet,
    _add_term,
    commutator,
    nc_mul,
    normal_form,
)


class Dynamics:
    """Right-hand sides ``d e_i/dt = f_i`` as free-algebra polynomials.

    The right-hand sides are kept unreduced: their normal form depends on
    the relations, which are usually what is being solved for.  Coefficients
    must be rationals unless ``allow_parameters`` is set (symbolic systems are
    only meaningful for :func:`liberator.solver.build_system`).
    """

    def __init__(self, gens: GeneratorSet, rhs: Sequence[NCPoly], allow_parameters: bool = False):
        rhs = tuple(rhs)
        if len(rhs) != len(gens):
            raise ValueError(f"expected {len(gens)} right-hand sides, got {len(rhs)}")
        for p in rhs:
            if p.gens != gens:
                raise GeneratorMismatchError("right-hand side uses a different generator set")
            if not allow_parameters and not p.is_concrete():
                raise ValueError("dynamics must have rational coefficients")
        self.gens = gens
        self.rhs = rhs
        self._word_cache: dict = {}

    @classmethod
    def linear(cls, matrix, names=("X", "Y"), transpose: bool = False) -> "Dynamics":
        """``d/dt (e_1..e_n) = A (e_1..e_n)``, or ``A^T`` with ``transpose``."""
        gens = GeneratorSet(tuple(names))
        n = len(gens)
        a = [[Fraction(x) for x in row] for row in matrix]
        if len(a) != n or any(len(row) != n for row in a):
            raise ValueError(f"matrix must be {n}x{n}")
        if transpose:
            a = [list(col) for col in zip(*a)]
        rhs = []
        for i in range(n):
            rhs.append(NCPoly(gens, {(k,): a[i][k] for k in range(n)}))
        return cls(gens, rhs)

    @classmethod
    def quadratic_pair(cls, a, b, c, d, e, f, names=("X", "Y")) -> "Dynamics":
        """``dX/dt = aX^2 + b(XY+YX)/2 + cY^2``, ``dY/dt = dX^2 + e(XY+YX)/2 + fY^2``."""
        gens = GeneratorSet(tuple(names))
        half = Fraction(1, 2)

        def q(p, r, s):
            return NCPoly(gens, {(0, 0): p, (0, 1): r * half, (1, 0): r * half, (1, 1): s})

        return cls(gens, [q(a, b, c), q(d, e, f)], allow_parameters=True)

    def scaled(self, s) -> "Dynamics":
        return Dynamics(self.gens, [p.scale(s) for p in self.rhs], allow_parameters=True)

    def is_linear(self) -> bool:
        return all(p.min_degree() == 1 and p.degree() == 1 for p in self.rhs if p)

    def max_degree(self) -> int:
        return max((p.degree() for p in self.rhs), default=-1)

    def __eq__(self, other):
        return isinstance(other, Dynamics) and self.gens == other.gens and self.rhs == other.rhs

    def __hash__(self):
        return hash((self.gens, self.rhs))

    def __repr__(self):
        eqs = "; ".join(f"d{name}/dt = {p}" for name, p in zip(self.gens.names, self.rhs))
        return f"Dynamics({eqs})"

    def derive_word(self, word: tuple) -> dict:
        cached = self._word_cache.get(word)
        if cached is not None:
            return cached
        out: dict = {}
        for pos, letter in enumerate(word):
            head, tail = word[:pos], word[pos + 1:]
            for w, c in self.rhs[letter].items():
                _add_term(out, head + w + tail, c)
        self._word_cache[word] = out
        return out


def derive(dyn: Dynamics, x: NCPoly, cap: int | None = None) -> NCPoly:
    """Leibniz extension of ``e_i -> f_i``; the result is not reduced."""
    if x.gens != dyn.gens:
        raise GeneratorMismatchError("polynomial and dynamics use different generator sets")
    out: dict = {}
    for word, c in x.items():
        for w, d in dyn.derive_word(word).items():
            if cap is not None and len(w) > cap:
                continue
            _add_term(out, w, c * d)
    return NCPoly._raw(x.gens, out)


@dataclass
class FlowSeries:
    """``gamma_t(e_i) = sum_k t^k D^k(e_i) / k!`` up to order ``order``."""

    order: int
    coefficients: tuple  # per generator: (D^0 e_i, D^1 e_i, ..., D^K e_i)
    cap: int | None = None

    def series(self, i: int) -> list[NCPoly]:
        """Taylor coefficients ``D^k(e_i)/k!``."""
        return [c.scale(Fraction(1, factorial(k))) for k, c in enumerate(self.coefficients[i])]


def flow_series(dyn: Dynamics, K: int, cap: int | None = None) -> FlowSeries:
    if K < 1:
        raise ValueError("flow order must be at least 1")
    coeffs = []
    for i in range(len(dyn.gens)):
        seq = [NCPoly.gen(dyn.gens, i)]
        for _ in range(K):
            seq.append(derive(dyn, seq[-1], cap))
        coeffs.append(tuple(seq))
    return FlowSeries(K, tuple(coeffs), cap)


def flow_apply(dyn: Dynamics, x: NCPoly, K: int, rels: RelationSet) -> list[NCPoly]:
    """Taylor coefficients of ``exp(tD) x`` computed inside the quotient.

    Each step reduces before deriving again, so the result depends on the
    representative unless ``D`` preserves the relation ideal.
    """
    out = [normal_form(x, rels)]
    current = out[0]
    for k in range(1, K + 1):
        current = normal_form(derive(dyn, current, rels.cap), rels)
        out.append(current.scale(Fraction(1, factorial(k))))
    return out


def relation_element(rels: RelationSet, i: int, j: int) -> NCPoly:
    gens = rels.gens
    return commutator(NCPoly.gen(gens, i), NCPoly.gen(gens, j)) - rels.rhs(i, j)


@dataclass
class Residual:
    pair: tuple
    value: NCPoly

    def is_zero(self) -> bool:
        return not self.value


def preservation_residual(dyn: Dynamics, rels: RelationSet, pair: tuple) -> Residual:
    """NF of ``[f_i, e_j] + [e_i, f_j] - D(f_ij)``."""
    if dyn.gens != rels.gens:
        raise GeneratorMismatchError("dynamics and relations use different generator sets")
    i, j = pair
    gens = dyn.gens
    ei, ej = NCPoly.gen(gens, i), NCPoly.gen(gens, j)
    cap = rels.cap
    expr = (commutator(dyn.rhs[i], ej) + commutator(ei, dyn.rhs[j])).truncate(cap)
    expr = expr - derive(dyn, rels.rhs(i, j), cap)
    return Residual((i, j), normal_form(expr, rels))


def _series_product(a: list, b: list, K: int, cap) -> list:
    gens = a[0].gens if a else b[0].gens
    out = [NCPoly.zero(gens) for _ in range(K + 1)]
    for p, x in enumerate(a):
        if not x:
            continue
        for q in range(0, K + 1 - p):
            if q < len(b) and b[q]:
                out[p + q] = out[p + q] + nc_mul(x, b[q], cap)
    return out


@dataclass
class FlowCheck:
    preserved: bool
    order: int
    witness: tuple | None = None  # (pair, t-order, reduced coefficient)

    def __bool__(self):
        return self.preserved


def flow_preserves(dyn: Dynamics, rels: RelationSet, K: int) -> FlowCheck:
    """Substitute the flow series into every relation element and reduce each t^k coefficient."""
    if not rels.is_concrete():
        raise ValueError("flow_preserves needs concrete relations")
    series = flow_series(dyn, K, rels.cap)
    per_gen = [series.series(i) for i in range(len(dyn.gens))]
    cap = rels.cap
    word_cache: dict = {}

    def gamma_word(word):
        if word in word_cache:
            return word_cache[word]
        if not word:
            result = [NCPoly.const(dyn.gens, 1)] + [NCPoly.zero(dyn.gens)] * K
        else:
            result = _series_product(gamma_word(word[:-1]), per_gen[word[-1]], K, cap)
        word_cache[word] = result
        return result

    for pair in dyn.gens.pairs():
        element = relation_element(rels, *pair)
        total = [NCPoly.zero(dyn.gens) for _ in range(K + 1)]
        for word, c in element.items():
            for k, coeff in enumerate(gamma_word(word)):
                if coeff:
                    total[k] = total[k] + coeff.scale(c)
        for k in range(K + 1):
            reduced = normal_form(total[k], rels)
            if reduced:
                return FlowCheck(False, K, (pair, k, reduced))
    return FlowCheck(True, K)
