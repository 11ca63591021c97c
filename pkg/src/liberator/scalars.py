"""Exact scalars: rationals and commutative polynomials in named unknowns.

Rationals are :class:`fractions.Fraction`.  :class:`ParamPoly` is a sparse
polynomial whose monomials are tuples of ``(name, exponent)`` pairs sorted by
a deterministic natural order on the names.  Coefficients inside the rest of
the package may be either a ``Fraction`` or a ``ParamPoly``; helpers here
keep the two interchangeable.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

Rational = Fraction
Monomial = tuple  # tuple[tuple[str, int], ...]

_SPLIT = re.compile(r"(\d+)")


@lru_cache(maxsize=None)
def name_key(name: str) -> tuple:
    """Natural sort key: ``c2`` sorts before ``c10``."""
    return tuple((0, int(part)) if part.isdigit() else (1, part)
                 for part in _SPLIT.split(name) if part != "")


class UnassignedUnknownError(KeyError):
    def __init__(self, name: str):
        super().__init__(name)
        self.name = name

    def __str__(self):
        return f"no value assigned to unknown {self.name!r}"


def as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    if isinstance(value, ParamPoly) and value.is_constant():
        return value.constant()
    raise TypeError(f"not an exact rational: {value!r}")


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for name, e in b:
        exps[name] = exps.get(name, 0) + e
    return tuple(sorted(exps.items(), key=lambda kv: name_key(kv[0])))


def _mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


class ParamPoly:
    """Immutable commutative polynomial over the rationals."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Fraction] | None = None):
        clean = {}
        if terms:
            for mono, c in terms.items():
                if c:
                    clean[mono] = Fraction(c)
        self._terms = clean
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def _raw(cls, terms: dict) -> "ParamPoly":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, value) -> "ParamPoly":
        value = Fraction(value)
        return cls._raw({(): value} if value else {})

    @classmethod
    def var(cls, name: str, power: int = 1) -> "ParamPoly":
        if power < 0:
            raise ValueError("negative exponent")
        return cls._raw({((name, power),) if power else (): Fraction(1)})

    @staticmethod
    def lift(value) -> "ParamPoly":
        if isinstance(value, ParamPoly):
            return value
        return ParamPoly.const(value)

    # inspection ---------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and () in self._terms)

    def constant(self) -> Fraction:
        return self._terms.get((), Fraction(0))

    def variables(self) -> list[str]:
        names = {name for mono in self._terms for name, _ in mono}
        return sorted(names, key=name_key)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((_mono_degree(m) for m in self._terms), default=-1)

    def degree_in(self, names: Iterable[str]) -> int:
        names = set(names)
        return max((sum(e for v, e in m if v in names) for m in self._terms), default=-1)

    def __bool__(self):
        return bool(self._terms)

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, ParamPoly):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            if not other:
                return self
            terms = dict(self._terms)
            c = terms.get((), 0) + other
            if c:
                terms[()] = Fraction(c)
            else:
                terms.pop((), None)
            return ParamPoly._raw(terms)
        terms = dict(self._terms)
        for mono, c in other._terms.items():
            s = terms.get(mono, 0) + c
            if s:
                terms[mono] = s
            else:
                terms.pop(mono, None)
        return ParamPoly._raw(terms)

    __radd__ = __add__

    def __neg__(self):
        return ParamPoly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, (ParamPoly, int, Fraction)):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, ParamPoly):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            if not other:
                return ParamPoly._raw({})
            return ParamPoly._raw({m: c * other for m, c in self._terms.items()})
        if len(other._terms) == 1 and () in other._terms:
            return self * other._terms[()]
        if len(self._terms) == 1 and () in self._terms:
            return other * self._terms[()]
        terms: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                s = terms.get(m, 0) + c1 * c2
                if s:
                    terms[m] = s
                else:
                    terms.pop(m, None)
        return ParamPoly._raw(terms)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = as_rational(other)
        return self * (1 / other)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = ParamPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, ParamPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant())
            else:
                self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # evaluation ---------------------------------------------------------
    def eval(self, assignment: Mapping[str, object]) -> Fraction:
        total = Fraction(0)
        for mono, c in self._terms.items():
            value = c
            for name, e in mono:
                if name not in assignment:
                    raise UnassignedUnknownError(name)
                value *= Fraction(assignment[name]) ** e
            total += value
        return total

    def substitute(self, assignment: Mapping[str, object]) -> "ParamPoly":
        """Partial substitution; values may be rationals or ParamPolys."""
        result = ParamPoly._raw({})
        cache: dict = {}
        for mono, c in self._terms.items():
            term = ParamPoly.const(c)
            rest = []
            for name, e in mono:
                if name in assignment:
                    key = (name, e)
                    if key not in cache:
                        cache[key] = ParamPoly.lift(assignment[name]) ** e
                    term = term * cache[key]
                else:
                    rest.append((name, e))
            if rest:
                term = term * ParamPoly._raw({tuple(rest): Fraction(1)})
            result = result + term
        return result

    def homogeneous_part(self, degree: int, names: Iterable[str] | None = None) -> "ParamPoly":
        if names is None:
            return ParamPoly._raw({m: c for m, c in self._terms.items() if _mono_degree(m) == degree})
        names = set(names)
        return ParamPoly._raw({m: c for m, c in self._terms.items()
                               if sum(e for v, e in m if v in names) == degree})

    def exact_div(self, other) -> "ParamPoly":
        """Quotient of an exact division; raises ValueError if a remainder appears."""
        if not isinstance(other, ParamPoly):
            return self * (1 / Fraction(other))
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        if other.is_constant():
            return self * (1 / other.constant())
        names = sorted(set(self.variables()) | set(other.variables()), key=name_key)

        def key(mono):
            exps = dict(mono)
            return (_mono_degree(mono), tuple(exps.get(v, 0) for v in names))

        lead_d = max(other._terms, key=key)
        lead_dc = other._terms[lead_d]
        lead_exps = dict(lead_d)
        quotient = ParamPoly._raw({})
        rem = self
        while rem:
            lead_r = max(rem._terms, key=key)
            exps = dict(lead_r)
            diff = {}
            for v, e in lead_exps.items():
                k = exps.get(v, 0) - e
                if k < 0:
                    raise ValueError("polynomial division is not exact")
            for v in exps:
                k = exps[v] - lead_exps.get(v, 0)
                if k:
                    diff[v] = k
            mono = tuple(sorted(diff.items(), key=lambda kv: name_key(kv[0])))
            term = ParamPoly._raw({mono: rem._terms[lead_r] / lead_dc})
            quotient = quotient + term
            rem = rem - term * other
        return quotient

    def linear_coefficients(self) -> dict[str, Fraction]:
        """Coefficients of the degree-one monomials."""
        return {m[0][0]: c for m, c in self._terms.items() if len(m) == 1 and m[0][1] == 1}

    # rendering ----------------------------------------------------------
    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        names = self.variables()

        def key(item):
            exps = dict(item[0])
            return (-_mono_degree(item[0]), tuple(-exps.get(v, 0) for v in names))

        return sorted(self._terms.items(), key=key)

    def __str__(self):
        if not self._terms:
            return "0"
        out = []
        for mono, c in self.sorted_terms():
            body = " ".join(name if e == 1 else f"{name}^{e}" for name, e in mono)
            mag = abs(c)
            if body:
                text = body if mag == 1 else f"{format_rational(mag)} {body}"
            else:
                text = format_rational(mag)
            if not out:
                out.append(text if c > 0 else f"-{text}")
            else:
                out.append(("+ " if c > 0 else "- ") + text)
        return " ".join(out)

    def __repr__(self):
        return f"ParamPoly({str(self)!r})"


Scalar = Union[Fraction, ParamPoly]


def simplify(c) -> Scalar:
    """Demote constant ParamPolys to Fractions; promote ints."""
    if isinstance(c, ParamPoly):
        return c.constant() if c.is_constant() else c
    return Fraction(c)


def scalar_str(c) -> str:
    if isinstance(c, ParamPoly):
        return str(c)
    return format_rational(c)


def scalar_variables(c) -> list[str]:
    return c.variables() if isinstance(c, ParamPoly) else []


def exact_div(a, b):
    """Exact quotient for Fractions or ParamPolys (the division must be exact)."""
    if isinstance(a, ParamPoly):
        return simplify(a.exact_div(b))
    if isinstance(b, ParamPoly):
        if b.is_constant():
            return Fraction(a) / b.constant()
        if not a:
            return Fraction(0)
        raise ValueError("polynomial division is not exact")
    return Fraction(a) / Fraction(b)


def ppoly_mul(x, y) -> ParamPoly:
    return ParamPoly.lift(x) * ParamPoly.lift(y)


def ppoly_eval(x, assignment: Mapping[str, object]) -> Fraction:
    return ParamPoly.lift(x).eval(assignment)


def ppoly_degree_split(x, unknowns: Iterable[str] | None = None):
    """Split into (linear, higher, constant) parts by degree in ``unknowns``.

    With ``unknowns`` omitted every variable counts.  Other variables are
    treated as part of the coefficient domain.
    """
    x = ParamPoly.lift(x)
    names = None if unknowns is None else set(unknowns)
    linear, higher, const = {}, {}, {}
    for mono, c in x.items():
        d = _mono_degree(mono) if names is None else sum(e for v, e in mono if v in names)
        (const if d == 0 else linear if d == 1 else higher)[mono] = c
    return ParamPoly._raw(linear), ParamPoly._raw(higher), ParamPoly._raw(const)
