"""Free associative algebra, Weyl symmetrization and rewriting modulo commutation relations.

Words are tuples of generator indices.  The normal order is the declaration
order of the generators: a word is in normal form when its indices are
non-decreasing.  A relation ``[e_i, e_j] = f_ij`` (``i < j``) is used as the
rewrite rule ``e_j e_i -> e_i e_j - f_ij``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Mapping, Sequence

from . import linalg
from .scalars import ParamPoly, format_rational, name_key, scalar_variables, simplify

Word = tuple


class GeneratorMismatchError(ValueError):
    pass


class NormalFormError(RuntimeError):
    pass


class RewritingCycleError(NormalFormError):
    pass


class _Cycle(Exception):
    pass


@dataclass(frozen=True)
class GeneratorSet:
    names: tuple

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names in {names}")
        if not names:
            raise ValueError("at least one generator is required")

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown generator {name!r}") from None

    @property
    def n(self) -> int:
        return len(self.names)

    def pairs(self) -> list[tuple[int, int]]:
        n = len(self.names)
        return [(i, j) for i in range(n) for j in range(i + 1, n)]


def is_sorted(word: Word) -> bool:
    return all(a <= b for a, b in zip(word, word[1:]))


def multidegree(word: Word, n: int) -> tuple:
    counts = [0] * n
    for letter in word:
        counts[letter] += 1
    return tuple(counts)


def sorted_word(md: Sequence[int]) -> Word:
    return tuple(i for i, k in enumerate(md) for _ in range(k))


def multidegrees(n: int, degree: int):
    """All length-n exponent vectors of the given total degree, graded-lex descending."""
    if n == 1:
        yield (degree,)
        return
    for first in range(degree, -1, -1):
        for rest in multidegrees(n - 1, degree - first):
            yield (first,) + rest


def _add_term(terms: dict, word, coeff):
    s = terms.get(word)
    s = coeff if s is None else s + coeff
    if s:
        terms[word] = simplify(s)
    else:
        terms.pop(word, None)


class NCPoly:
    """Noncommutative polynomial: word -> coefficient (Fraction or ParamPoly)."""

    __slots__ = ("gens", "_terms")

    def __init__(self, gens: GeneratorSet, terms: Mapping | None = None):
        self.gens = gens
        clean = {}
        if terms:
            n = len(gens)
            for word, c in terms.items():
                word = tuple(word)
                if any(not 0 <= x < n for x in word):
                    raise GeneratorMismatchError(f"word {word} outside generator set {gens.names}")
                if c:
                    clean[word] = simplify(c)
        self._terms = clean

    @classmethod
    def _raw(cls, gens, terms):
        obj = cls.__new__(cls)
        obj.gens = gens
        obj._terms = terms
        return obj

    @classmethod
    def zero(cls, gens):
        return cls._raw(gens, {})

    @classmethod
    def const(cls, gens, value):
        return cls(gens, {(): value})

    @classmethod
    def gen(cls, gens, which):
        i = gens.index(which) if isinstance(which, str) else which
        return cls._raw(gens, {(i,): Fraction(1)})

    @classmethod
    def monomial(cls, gens, word, coeff=1):
        return cls(gens, {tuple(word): coeff})

    # inspection ---------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, word) -> object:
        return self._terms.get(tuple(word), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def degree(self) -> int:
        return max((len(w) for w in self._terms), default=-1)

    def min_degree(self) -> int:
        return min((len(w) for w in self._terms), default=-1)

    def is_normal(self) -> bool:
        return all(is_sorted(w) for w in self._terms)

    def unknowns(self) -> list[str]:
        names = set()
        for c in self._terms.values():
            names.update(scalar_variables(c))
        return sorted(names, key=name_key)

    def is_concrete(self) -> bool:
        return all(isinstance(c, Fraction) for c in self._terms.values())

    # arithmetic ---------------------------------------------------------
    def _check(self, other: "NCPoly"):
        if other.gens != self.gens:
            raise GeneratorMismatchError(f"generator sets differ: {self.gens.names} vs {other.gens.names}")

    def _coerce(self, other):
        if isinstance(other, NCPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, ParamPoly)):
            return NCPoly.const(self.gens, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self._terms)
        for w, c in other._terms.items():
            _add_term(terms, w, c)
        return NCPoly._raw(self.gens, terms)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly._raw(self.gens, {w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s) -> "NCPoly":
        if not s:
            return NCPoly.zero(self.gens)
        terms = {}
        for w, c in self._terms.items():
            v = c * s
            if v:
                terms[w] = simplify(v)
        return NCPoly._raw(self.gens, terms)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, ParamPoly)):
            return self.scale(other)
        if not isinstance(other, NCPoly):
            return NotImplemented
        return nc_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, ParamPoly)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result = NCPoly.const(self.gens, 1)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, NCPoly):
            return self.gens == other.gens and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == NCPoly.const(self.gens, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.gens, frozenset(self._terms.items())))

    # transformations ----------------------------------------------------
    def map_coefficients(self, fn) -> "NCPoly":
        terms = {}
        for w, c in self._terms.items():
            v = fn(c)
            if v:
                terms[w] = simplify(v)
        return NCPoly._raw(self.gens, terms)

    def substitute(self, assignment: Mapping[str, object]) -> "NCPoly":
        def sub(c):
            return c.substitute(assignment) if isinstance(c, ParamPoly) else c
        return self.map_coefficients(sub)

    def truncate(self, cap: int | None) -> "NCPoly":
        if cap is None:
            return self
        return NCPoly._raw(self.gens, {w: c for w, c in self._terms.items() if len(w) <= cap})

    def homogeneous_part(self, degree: int) -> "NCPoly":
        return NCPoly._raw(self.gens, {w: c for w, c in self._terms.items() if len(w) == degree})

    # rendering ----------------------------------------------------------
    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda item: (-len(item[0]), item[0]))

    def word_str(self, word: Word, sep: str = " ") -> str:
        if not word:
            return "1"
        parts = []
        k = 0
        while k < len(word):
            j = k
            while j < len(word) and word[j] == word[k]:
                j += 1
            name = self.gens.names[word[k]]
            parts.append(name if j - k == 1 else f"{name}^{j - k}")
            k = j
        return sep.join(parts)

    def to_string(self, sep: str = " ") -> str:
        if not self._terms:
            return "0"
        out = []
        for word, c in self.sorted_terms():
            body = self.word_str(word, sep) if word else ""
            if isinstance(c, ParamPoly):
                text = f"({c})" + (f" {body}" if body else "")
                out.append(text if not out else f"+ {text}")
                continue
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

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"NCPoly({self.to_string()!r})"


def nc_mul(x: NCPoly, y: NCPoly, cap: int | None = None) -> NCPoly:
    """Free-algebra product (concatenation), optionally dropping words longer than ``cap``."""
    x._check(y)
    terms: dict = {}
    for w1, c1 in x._terms.items():
        for w2, c2 in y._terms.items():
            if cap is not None and len(w1) + len(w2) > cap:
                continue
            _add_term(terms, w1 + w2, c1 * c2)
    return NCPoly._raw(x.gens, terms)


def commutator(x: NCPoly, y: NCPoly) -> NCPoly:
    return nc_mul(x, y) - nc_mul(y, x)


@lru_cache(maxsize=None)
def _distinct_orderings(md: tuple) -> tuple:
    out = []
    counts = list(md)
    total = sum(md)
    buf = []

    def rec():
        if len(buf) == total:
            out.append(tuple(buf))
            return
        for letter, k in enumerate(counts):
            if k:
                counts[letter] -= 1
                buf.append(letter)
                rec()
                buf.pop()
                counts[letter] += 1

    rec()
    return tuple(out)


def weyl_symmetrize(gens: GeneratorSet, md: Sequence[int]) -> NCPoly:
    """Uniform average of all orderings of the multiset word with exponents ``md``."""
    md = tuple(md)
    if len(md) != len(gens):
        raise ValueError(f"multidegree {md} has wrong length for {len(gens)} generators")
    if any(k < 0 for k in md):
        raise ValueError("multidegree entries must be non-negative")
    words = _distinct_orderings(md)
    c = Fraction(1, len(words))
    return NCPoly._raw(gens, {w: c for w in words})


def multinomial(md: Sequence[int]) -> int:
    out = factorial(sum(md))
    for k in md:
        out //= factorial(k)
    return out


class RelationSet:
    """Commutation relations ``[e_i, e_j] = f_ij`` for ``i < j`` plus a truncation policy.

    Pairs that are not given commute.  ``cap=None`` means no truncation; an
    integer cap works in the quotient by all words longer than ``cap``.
    """

    def __init__(self, gens: GeneratorSet, rhs: Mapping | None = None, cap: int | None = None):
        if cap is not None and cap < 1:
            raise ValueError("degree cap must be a positive integer")
        self.gens = gens
        self.cap = cap
        table = {}
        for pair, poly in (rhs or {}).items():
            i, j = pair
            if not 0 <= i < j < len(gens):
                raise ValueError(f"relation pair {pair} must satisfy 0 <= i < j < n")
            if not isinstance(poly, NCPoly):
                poly = NCPoly.const(gens, poly)
            if poly.gens != gens:
                raise GeneratorMismatchError("relation uses a different generator set")
            if not poly.is_normal():
                raise ValueError(f"relation [{gens.names[i]},{gens.names[j]}] is not in normal form: {poly}")
            poly = poly.truncate(cap)
            if poly:
                table[(i, j)] = poly
        self._rhs = table
        self._cache: dict = {}
        self._active: set = set()

    @classmethod
    def from_names(cls, gens: GeneratorSet, rhs: Mapping, cap=None) -> "RelationSet":
        return cls(gens, {(gens.index(a), gens.index(b)): p for (a, b), p in rhs.items()}, cap)

    def rhs(self, i: int, j: int) -> NCPoly:
        return self._rhs.get((i, j), NCPoly.zero(self.gens))

    @property
    def table(self) -> dict:
        return dict(self._rhs)

    def unknowns(self) -> list[str]:
        names = set()
        for p in self._rhs.values():
            names.update(p.unknowns())
        return sorted(names, key=name_key)

    def is_concrete(self) -> bool:
        return all(p.is_concrete() for p in self._rhs.values())

    def max_degree(self) -> int:
        return max((p.degree() for p in self._rhs.values()), default=-1)

    def substitute(self, assignment) -> "RelationSet":
        return RelationSet(self.gens, {k: p.substitute(assignment) for k, p in self._rhs.items()}, self.cap)

    def scaled(self, s) -> "RelationSet":
        return RelationSet(self.gens, {k: p.scale(s) for k, p in self._rhs.items()}, self.cap)

    def with_cap(self, cap) -> "RelationSet":
        return RelationSet(self.gens, self._rhs, cap)

    def describe(self) -> dict:
        out = {}
        for (i, j) in self.gens.pairs():
            out[f"[{self.gens.names[i]},{self.gens.names[j]}]"] = str(self.rhs(i, j))
        return out

    def __repr__(self):
        body = ", ".join(f"{k} = {v}" for k, v in self.describe().items())
        cap = "unbounded" if self.cap is None else f"cap {self.cap}"
        return f"RelationSet({body}; {cap})"

    # rewriting ----------------------------------------------------------
    def rewrite_at(self, word: Word, pos: int) -> dict:
        """One rewrite step at the descent ``word[pos] > word[pos+1]``; returns a term table."""
        j, i = word[pos], word[pos + 1]
        if not j > i:
            raise ValueError(f"no descent at position {pos} of {word}")
        head, tail = word[:pos], word[pos + 2:]
        out = {head + (i, j) + tail: Fraction(1)}
        for w, c in self.rhs(i, j).items():
            if self.cap is None and len(w) > 2:
                raise NormalFormError("degree-raising relation requires DegreeCap")
            nw = head + w + tail
            if self.cap is not None and len(nw) > self.cap:
                continue
            _add_term(out, nw, -c)
        return out

    def reduce_word(self, word: Word) -> dict:
        """Normal form of a single word as a read-only term table."""
        cached = self._cache.get(word)
        if cached is not None:
            return cached
        try:
            return self._reduce(word)
        except _Cycle:
            self._active.clear()
        if not self.is_concrete():
            raise RewritingCycleError(
                "rewriting cycles under relations with unknown coefficients; use cleared_normal_form")
        nums, den = self._solve_closure([word])
        for w, terms in nums.items():
            self._cache[w] = {k: simplify(c / den) for k, c in terms.items() if c}
        return self._cache[word]

    def _reduce(self, word: Word) -> dict:
        cached = self._cache.get(word)
        if cached is not None:
            return cached
        if self.cap is not None and len(word) > self.cap:
            return {}
        pos = next((p for p in range(len(word) - 1) if word[p] > word[p + 1]), None)
        if pos is None:
            result = {word: Fraction(1)}
        else:
            if word in self._active:
                raise _Cycle(word)
            self._active.add(word)
            try:
                result = {}
                for w, c in self.rewrite_at(word, pos).items():
                    for w2, c2 in self._reduce(w).items():
                        _add_term(result, w2, c * c2)
            finally:
                self._active.discard(word)
        self._cache[word] = result
        return result

    def _solve_closure(self, words) -> tuple[dict, object]:
        """Normal forms of every unsorted word reachable from ``words`` by one linear solve.

        Each reachable word ``v`` contributes the equation ``NF(v) = NF(rewrite(v))``;
        words already reduced enter as constants.  Returns numerators over a
        common determinant.
        """
        index: dict = {}
        order: list = []
        expansions: dict = {}
        queue = [w for w in words if not is_sorted(w) and w not in self._cache]
        while queue:
            v = queue.pop()
            if v in index or (self.cap is not None and len(v) > self.cap):
                continue
            index[v] = len(order)
            order.append(v)
            pos = next(p for p in range(len(v) - 1) if v[p] > v[p + 1])
            terms = self.rewrite_at(v, pos)
            expansions[v] = terms
            for t in terms:
                if not is_sorted(t) and t not in self._cache and t not in index:
                    queue.append(t)
        s = len(order)
        columns: dict = {}
        known_rows = []
        matrix = []
        for v in order:
            row = [Fraction(0)] * s
            row[index[v]] = Fraction(1)
            known: dict = {}
            for t, c in expansions[v].items():
                if t in index:
                    row[index[t]] = row[index[t]] - c
                else:
                    source = {t: Fraction(1)} if is_sorted(t) else self._cache[t]
                    for w2, c2 in source.items():
                        _add_term(known, w2, c * c2)
                        columns.setdefault(w2, len(columns))
            matrix.append(row)
            known_rows.append(known)
        rhs = []
        for known in known_rows:
            line = [Fraction(0)] * len(columns)
            for w, c in known.items():
                line[columns[w]] = c
            rhs.append(line)
        numerators, det = linalg.fraction_free_solve(matrix, rhs)
        if numerators is None or not det:
            raise NormalFormError("relations admit no unique normal form (singular rewriting system)")
        words_by_col = sorted(columns, key=columns.get)
        out = {}
        for v in order:
            line = numerators[index[v]]
            out[v] = {w: c for w, c in zip(words_by_col, line) if c}
        return out, det

    def cleared_normal_forms(self, polys) -> tuple[list, object]:
        """Normal forms as numerators over one common denominator.

        Identical to :func:`normal_form` (denominator 1) unless rewriting
        cycles under symbolic coefficients, in which case the denominator is a
        polynomial in the unknowns that is 1 at the origin.
        """
        try:
            return [NCPoly._raw(self.gens, self.reduce_terms(p._terms)) for p in polys], Fraction(1)
        except RewritingCycleError:
            self._active.clear()
        words = {w for p in polys for w in p._terms}
        nums, den = self._solve_closure(list(words))
        out = []
        for p in polys:
            acc: dict = {}
            for w, c in p._terms.items():
                if self.cap is not None and len(w) > self.cap:
                    continue
                if w in nums:
                    source = nums[w]
                    for w2, c2 in source.items():
                        _add_term(acc, w2, c * c2)
                else:
                    source = {w: Fraction(1)} if is_sorted(w) else self._cache[w]
                    for w2, c2 in source.items():
                        _add_term(acc, w2, c * c2 * den)
            out.append(NCPoly._raw(self.gens, acc))
        return out, simplify(den)

    def reduce_terms(self, terms: Mapping) -> dict:
        out: dict = {}
        for w, c in terms.items():
            for w2, c2 in self.reduce_word(tuple(w)).items():
                _add_term(out, w2, c * c2)
        return out


def normal_form(x: NCPoly, rels: RelationSet) -> NCPoly:
    if x.gens != rels.gens:
        raise GeneratorMismatchError("polynomial and relations use different generator sets")
    return NCPoly._raw(x.gens, rels.reduce_terms(x._terms))


# ---------------------------------------------------------------------------
# PBW / overlap checks


@dataclass
class PbwReport:
    dimensions: list = field(default_factory=list)  # (degree, found, expected)
    overlap_failures: list = field(default_factory=list)  # ((k, j, i), mismatch NCPoly)
    overlaps_checked: int = 0
    notes: list = field(default_factory=list)

    @property
    def passing(self) -> bool:
        return not self.overlap_failures and all(f == e for _, f, e in self.dimensions)

    def to_dict(self, gens: GeneratorSet | None = None) -> dict:
        return {
            "passing": self.passing,
            "dimensions": [{"degree": d, "found": f, "expected": e} for d, f, e in self.dimensions],
            "overlaps_checked": self.overlaps_checked,
            "overlap_failures": [
                {"word": "".join(gens.names[k] for k in t) if gens else list(t), "mismatch": str(p)}
                for t, p in self.overlap_failures
            ],
            "notes": list(self.notes),
        }


def overlap_mismatch(rels: RelationSet, triple: tuple) -> NCPoly:
    """Reduce e_k e_j e_i both ways (rewrite the left pair first vs the right pair first)."""
    k, j, i = triple
    word = (k, j, i)
    left = rels.reduce_terms(rels.rewrite_at(word, 0))
    right = rels.reduce_terms(rels.rewrite_at(word, 1))
    diff = dict(left)
    for w, c in right.items():
        _add_term(diff, w, -c)
    return NCPoly._raw(rels.gens, diff)


def _rows_for(polys: Sequence[NCPoly]):
    columns = sorted({w for p in polys for w in p._terms}, key=lambda w: (len(w), w))
    index = {w: k for k, w in enumerate(columns)}
    rows = []
    for p in polys:
        row = [Fraction(0)] * len(columns)
        for w, c in p._terms.items():
            row[index[w]] = c
        rows.append(row)
    return rows, columns


def pbw_check(rels: RelationSet, maxdeg: int) -> PbwReport:
    if maxdeg < 2:
        raise ValueError("maxdeg must be at least 2")
    if not rels.is_concrete():
        raise ValueError("pbw_check needs concrete (unknown-free) relations")
    gens = rels.gens
    n = len(gens)
    report = PbwReport()
    if n < 3:
        report.notes.append("no overlaps")
    for k in range(n):
        for j in range(k):
            for i in range(j):
                report.overlaps_checked += 1
                mismatch = overlap_mismatch(rels, (k, j, i))
                if mismatch:
                    report.overlap_failures.append(((k, j, i), mismatch))
    if rels.cap is not None and maxdeg > rels.cap:
        report.notes.append(f"dimension check beyond degree cap {rels.cap}")
    images = []
    previous_rank = 0
    for d in range(maxdeg + 1):
        images.extend(normal_form(weyl_symmetrize(gens, md), rels) for md in multidegrees(n, d))
        rows, columns = _rows_for(images)
        r = linalg.rank(rows, len(columns)) if columns else 0
        report.dimensions.append((d, r - previous_rank, comb(n + d - 1, d)))
        previous_rank = r
    return report


def symmetric_coordinates(x: NCPoly, rels: RelationSet, maxdeg: int | None = None) -> dict | None:
    """Write ``x`` as a combination of normal forms of symmetrized monomials.

    Returns ``{multidegree: coefficient}`` or ``None`` when ``x`` is outside
    their span (which happens only when the Weyl map is not onto).
    """
    if not rels.is_concrete() or not x.is_concrete():
        raise ValueError("symmetric_coordinates needs concrete input")
    x = normal_form(x, rels)
    if not x:
        return {}
    n = len(rels.gens)
    top = x.degree() if maxdeg is None else maxdeg
    if rels.cap is not None:
        top = min(max(top, x.degree()), rels.cap)
    mds = [md for d in range(top + 1) for md in multidegrees(n, d)]
    images = [normal_form(weyl_symmetrize(rels.gens, md), rels) for md in mds]
    rows, columns = _rows_for(images + [x])
    # unknowns are the multidegrees, one equation per word
    matrix = [[rows[m][k] for m in range(len(mds))] for k in range(len(columns))]
    target = [rows[-1][k] for k in range(len(columns))]
    particular, _ = linalg.solve_affine(matrix, target, len(mds))
    if particular is None:
        return None
    return {md: c for md, c in zip(mds, particular) if c}


def symmetric_str(coords: Mapping, gens: GeneratorSet) -> str:
    """Render ``{multidegree: c}`` using ``{X,Y}``-style symmetrized products."""
    if not coords:
        return "0"
    items = sorted(coords.items(), key=lambda kv: (-sum(kv[0]), tuple(-k for k in kv[0])))
    out = []
    for md, c in items:
        body = _sym_monomial_str(md, gens)
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


def _sym_monomial_str(md, gens) -> str:
    letters = [(gens.names[i], k) for i, k in enumerate(md) if k]
    if not letters:
        return ""
    if len(letters) == 1:
        name, k = letters[0]
        return name if k == 1 else f"{name}^{k}"
    inner = ",".join(name if k == 1 else f"{name}^{k}" for name, k in letters)
    return f"sym({inner})"


def relations_from_free(gens: GeneratorSet, rhs: Mapping, cap: int | None = None) -> RelationSet:
    """Relations given with arbitrary (possibly unsorted) right-hand sides.

    Finds sorted right-hand sides ``f`` with ``f = NF_f(g)`` for every pair,
    i.e. the rewriting system generating the same two-sided ideal as
    ``[e_i, e_j] - g_ij``.  Only the case where these conditions are linear in
    the sorted coefficients is supported.
    """
    rhs = {pair: (p if isinstance(p, NCPoly) else NCPoly.const(gens, p)) for pair, p in rhs.items()}
    if all(p.is_normal() for p in rhs.values()):
        return RelationSet(gens, rhs, cap)
    n = len(gens)
    top = max(p.degree() for p in rhs.values())
    if cap is not None:
        top = min(top, cap)
    names = []
    trial = {}
    for (i, j), p in rhs.items():
        poly = NCPoly.zero(gens)
        for d in range(top + 1):
            for md in multidegrees(n, d):
                name = f"_r{i}_{j}_" + "_".join(map(str, md))
                names.append(name)
                poly = poly + NCPoly.monomial(gens, sorted_word(md), ParamPoly.var(name))
        trial[(i, j)] = poly
    sym = RelationSet(gens, trial, cap)
    try:
        equations = []
        for pair, g in rhs.items():
            residue = normal_form(g.truncate(cap), sym) - trial[pair]
            equations.extend(ParamPoly.lift(c) for c in residue._terms.values())
    except NormalFormError as exc:
        raise ValueError(f"cannot normalize relations: {exc}") from None
    rows, target = [], []
    for eq in equations:
        if eq.degree() > 1:
            raise ValueError("cannot normalize relations: conditions are nonlinear in the sorted form")
        lin = eq.linear_coefficients()
        rows.append([lin.get(v, Fraction(0)) for v in names])
        target.append(-eq.constant())
    solution, kernel = linalg.solve_affine(rows, target, len(names))
    if solution is None:
        raise ValueError("relations are inconsistent: the commutator cannot be isolated")
    if kernel:
        raise ValueError("relations do not determine a unique rewriting system")
    values = dict(zip(names, solution))
    return RelationSet(gens, {pair: trial[pair].substitute(values) for pair in rhs}, cap)


def ideal_contains(x: NCPoly, elements: Sequence[NCPoly], degree: int | None = None) -> bool:
    """Whether ``x`` is a combination of products ``u r v`` (words u, v, r in ``elements``).

    Only products of degree at most ``degree`` (default: the degree of
    ``x``) are used.  For homogeneous elements the ideal is graded, so this
    decides membership exactly; otherwise a True answer is a certificate and
    False is inconclusive.  Needs no rewriting system, so it also works
    when the commutator cannot be isolated.
    """
    if not x:
        return True
    top = x.degree() if degree is None else degree
    n = len(x.gens)
    words = [w for d in range(top + 1) for w in itertools.product(range(n), repeat=d)]
    products = []
    for r in elements:
        room = top - r.degree()
        for u in words:
            if len(u) > room:
                continue
            left = NCPoly.monomial(x.gens, u) * r
            for v in words:
                if len(u) + len(v) <= room:
                    products.append(left * NCPoly.monomial(x.gens, v))
    if not products:
        return False
    rows, columns = _rows_for(products + [x])
    return linalg.rank(rows[:-1], len(columns)) == linalg.rank(rows, len(columns))
