"""Text syntax for dynamics and relations, and the matching pretty-printer.

Dynamics::

    generators X Y
    dX/dt = 2 X^2 + 3/2 {X,Y} + Y^2
    dY/dt = X*Y - Y*X

Equations are separated by newlines or ``;``.  ``{A,B}`` is the symmetrized
product (AB+BA)/2, ``*`` (or whitespace) is the noncommutative product.
Relations use ``[X,Y] = expr``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .dynamics import Dynamics
from .ncalgebra import GeneratorSet, NCPoly, RelationSet, relations_from_free
from .scalars import format_rational


class ParseError(ValueError):
    def __init__(self, message: str, text: str = "", pos: int | None = None):
        self.message = message
        self.text = text
        self.pos = pos
        super().__init__(self._render())

    def _render(self):
        if self.pos is None:
            return self.message
        line = self.text.count("\n", 0, self.pos) + 1
        start = self.text.rfind("\n", 0, self.pos) + 1
        end = self.text.find("\n", self.pos)
        end = len(self.text) if end < 0 else end
        col = self.pos - start + 1
        return f"{self.message} at line {line}, column {col}\n  {self.text[start:end]}\n  {' ' * (col - 1)}^"


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^{}(),\[\]=;]))")


def _tokenize(text: str, start: int, end: int):
    tokens = []
    pos = start
    while pos < end:
        if text[pos:end].strip() == "":
            break
        m = _TOKEN.match(text, pos, end)
        if not m:
            bad = pos + len(text[pos:end]) - len(text[pos:end].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", text, bad)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", end))
    return tokens


class _ExprParser:
    def __init__(self, text, start, end, gens: GeneratorSet):
        self.text = text
        self.tokens = _tokenize(text, start, end)
        self.i = 0
        self.gens = gens

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message, tok=None):
        tok = tok or self.peek()
        return ParseError(message, self.text, tok[2])

    def expect(self, value):
        tok = self.take()
        if tok[1] != value:
            raise self.error(f"expected {value!r}, found {tok[1] or 'end of input'!r}", tok)
        return tok

    def parse(self) -> NCPoly:
        out = self.expr()
        if self.peek()[0] != "end":
            raise self.error(f"unexpected {self.peek()[1]!r}")
        return out

    def expr(self) -> NCPoly:
        sign = 1
        if self.peek()[1] in "+-" and self.peek()[0] == "op":
            sign = -1 if self.take()[1] == "-" else 1
        out = self.term().scale(sign)
        while self.peek()[0] == "op" and self.peek()[1] in ("+", "-"):
            sign = -1 if self.take()[1] == "-" else 1
            out = out + self.term().scale(sign)
        return out

    def term(self) -> NCPoly:
        coeff = Fraction(1)
        have_coeff = False
        if self.peek()[0] == "num":
            coeff = self.coefficient()
            have_coeff = True
        factors = []
        while True:
            tok = self.peek()
            if tok[0] == "name" or (tok[0] == "op" and tok[1] in "({"):
                factors.append(self.factor())
                continue
            if tok[0] == "op" and tok[1] == "*":
                if not factors and not have_coeff:
                    raise self.error("'*' needs a left operand")
                self.take()
                if not (self.peek()[0] == "name" or self.peek()[1] in ("(", "{")):
                    raise self.error("expected a factor after '*'")
                continue
            break
        if not factors and not have_coeff:
            raise self.error(f"expected a term, found {tok[1] or 'end of input'!r}")
        out = NCPoly.const(self.gens, coeff)
        for f in factors:
            out = out * f
        return out

    def coefficient(self) -> Fraction:
        num = int(self.take()[1])
        if self.peek()[1] == "/":
            self.take()
            tok = self.take()
            if tok[0] != "num":
                raise self.error("expected an integer denominator", tok)
            den = int(tok[1])
            if den == 0:
                raise self.error("zero denominator", tok)
            return Fraction(num, den)
        return Fraction(num)

    def factor(self) -> NCPoly:
        tok = self.take()
        if tok[0] == "name":
            if tok[1] not in self.gens.names:
                raise self.error(f"unknown generator {tok[1]!r}", tok)
            base = NCPoly.gen(self.gens, self.gens.index(tok[1]))
        elif tok[1] == "(":
            base = self.expr()
            self.expect(")")
        else:  # "{"
            a = self.expr()
            self.expect(",")
            b = self.expr()
            self.expect("}")
            base = (a * b + b * a).scale(Fraction(1, 2))
        if self.peek()[1] == "^":
            self.take()
            tok = self.take()
            if tok[1] == "-":
                raise self.error("negative exponent", tok)
            if tok[0] != "num":
                raise self.error("expected a non-negative integer exponent", tok)
            base = base ** int(tok[1])
        return base


def parse_expression(text: str, gens: GeneratorSet) -> NCPoly:
    return _ExprParser(text, 0, len(text), gens).parse()


_DECL = re.compile(r"\s*generators\b")
_LHS = re.compile(r"\s*d\s*([A-Za-z_][A-Za-z0-9_]*)\s*/\s*dt\s*=")
_REL = re.compile(r"\s*\[\s*([A-Za-z_][A-Za-z0-9_]*)\s*,\s*([A-Za-z_][A-Za-z0-9_]*)\s*\]\s*=")


def _statements(text: str):
    """Yield (start, end) spans split on newlines and semicolons."""
    start = 0
    for m in re.finditer(r"[;\n]", text + "\n"):
        if text[start:m.start()].strip():
            yield start, m.start()
        start = m.end()


def parse_dynamics(text: str, names=None) -> Dynamics:
    """Parse a system of operator equations into :class:`Dynamics`."""
    declared = list(names) if names else None
    equations = []
    for start, end in _statements(text):
        chunk = text[start:end]
        m = _DECL.match(chunk)
        if m:
            if declared is not None:
                raise ParseError("generators declared twice", text, start + m.start())
            declared = chunk[m.end():].replace(",", " ").split()
            if not declared:
                raise ParseError("empty generator declaration", text, start + m.end())
            if len(set(declared)) != len(declared):
                raise ParseError("duplicate generator name", text, start + m.end())
            continue
        m = _LHS.match(chunk)
        if not m:
            lead = start + len(chunk) - len(chunk.lstrip())
            raise ParseError("expected 'dNAME/dt = ...'", text, lead)
        equations.append((m.group(1), start + m.start(1), start + m.end(), end))
    if not equations:
        raise ParseError("no equations found", text, 0)
    if declared is None:
        declared = []
        for name, *_ in equations:
            if name not in declared:
                declared.append(name)
    gens = GeneratorSet(tuple(declared))
    rhs = {}
    for name, name_pos, body_start, end in equations:
        if name not in gens.names:
            raise ParseError(f"unknown generator {name!r}", text, name_pos)
        if name in rhs:
            raise ParseError(f"second equation for {name!r}", text, name_pos)
        rhs[name] = _ExprParser(text, body_start, end, gens).parse()
    missing = [n for n in gens.names if n not in rhs]
    if missing:
        raise ParseError(f"no equation for generator(s) {', '.join(missing)}")
    return Dynamics(gens, [rhs[n] for n in gens.names])


def parse_relations(text: str, gens: GeneratorSet, cap=None) -> RelationSet:
    """Parse ``[A,B] = expr`` statements; unsorted right-hand sides are normalized."""
    table = {}
    for start, end in _statements(text):
        chunk = text[start:end]
        m = _REL.match(chunk)
        if not m:
            lead = start + len(chunk) - len(chunk.lstrip())
            raise ParseError("expected '[A,B] = ...'", text, lead)
        a, b = m.group(1), m.group(2)
        for name, g in ((a, 1), (b, 2)):
            if name not in gens.names:
                raise ParseError(f"unknown generator {name!r}", text, start + m.start(g))
        i, j = gens.index(a), gens.index(b)
        if i == j:
            raise ParseError("a generator commutes with itself", text, start + m.start(1))
        body = _ExprParser(text, start + m.end(), end, gens).parse()
        pair = (min(i, j), max(i, j))
        if pair in table:
            raise ParseError("relation given twice", text, start + m.start(1))
        table[pair] = body if i < j else -body
    return relations_from_free(gens, table, cap)


# ---------------------------------------------------------------------------
# printing


def format_word(gens: GeneratorSet, word) -> str:
    parts = []
    k = 0
    while k < len(word):
        m = k
        while m < len(word) and word[m] == word[k]:
            m += 1
        name = gens.names[word[k]]
        parts.append(name if m - k == 1 else f"{name}^{m - k}")
        k = m
    return "*".join(parts)


def format_poly(p: NCPoly) -> str:
    """Render so that :func:`parse_expression` reads it back exactly."""
    if not p:
        return "0"
    out = []
    for word, c in p.sorted_terms():
        c = Fraction(c)
        body = format_word(p.gens, word)
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


def format_dynamics(dyn: Dynamics) -> str:
    lines = ["generators " + " ".join(dyn.gens.names)]
    for name, p in zip(dyn.gens.names, dyn.rhs):
        lines.append(f"d{name}/dt = {format_poly(p)}")
    return "\n".join(lines)


def format_relations(rels: RelationSet) -> str:
    gens = rels.gens
    return "; ".join(f"[{gens.names[i]},{gens.names[j]}] = {format_poly(rels.rhs(i, j))}"
                     for i, j in gens.pairs())
