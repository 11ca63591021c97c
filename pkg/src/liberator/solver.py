"""Relation ansatze, preservation equations and their exact solution.

The pipeline is ``liberate``: choose candidate monomials, attach an unknown
to each, reduce the preservation residuals to get polynomial equations in
the unknowns, solve them exactly, then revalidate every reported relation
on its own (residual, flow series and PBW check).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Mapping, Sequence

from . import linalg
from .dynamics import Dynamics, derive, flow_preserves, preservation_residual
from .ncalgebra import (
    GeneratorSet,
    NCPoly,
    NormalFormError,
    PbwReport,
    RelationSet,
    commutator,
    multidegrees,
    pbw_check,
    sorted_word,
    symmetric_coordinates,
    symmetric_str,
)
from .scalars import ParamPoly, format_rational, name_key, simplify


class InvariantViolation(RuntimeError):
    """A reported solution failed independent revalidation."""


# ---------------------------------------------------------------------------
# resonance and the 2x2 case split


def resonance_monomials(lam, mu, maxdeg: int) -> set:
    """All (i, j) with i + j <= maxdeg and lam(i-1) + mu(j-1) = 0."""
    if maxdeg < 0:
        raise ValueError("maxdeg must be non-negative")
    lam, mu = Fraction(lam), Fraction(mu)
    return {(i, d - i) for d in range(maxdeg + 1) for i in range(d + 1)
            if lam * (i - 1) + mu * (d - i - 1) == 0}


def generic_resonance_monomials(maxdeg: int) -> set:
    """Multidegrees resonant for every ratio lam/mu; only XY survives."""
    return {(1, 1)} if maxdeg >= 2 else set()


def grlex(mds) -> list:
    """Descending graded-lex order (highest degree first, then X-heavy first)."""
    return sorted(mds, key=lambda md: (-sum(md), tuple(-k for k in md)))


CASE_NUMBERS = {
    "QuantumPlane": 1,
    "Quadratic": 2,
    "PolyTimesY": 3,
    "WignerDiagonal": 4,
    "MixedPowers": 5,
    "JordanBlock": None,
    "ZeroDynamics": None,
}


@dataclass(frozen=True)
class CaseLabel:
    name: str
    eigenvalues: tuple  # (lam, mu) or (lam,) for a Jordan block
    diagonal: bool = True

    @property
    def number(self):
        return CASE_NUMBERS[self.name]

    def to_dict(self) -> dict:
        return {
            "label": self.name,
            "case": self.number,
            "eigenvalues": [format_rational(x) for x in self.eigenvalues],
            "diagonal_form": self.diagonal,
        }


def _rational_sqrt(q: Fraction):
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def classify_2x2(matrix, transpose: bool = False) -> CaseLabel:
    """Case label of ``d/dt (X, Y) = A (X, Y)`` from the Jordan form of A."""
    a = [[Fraction(x) for x in row] for row in matrix]
    if len(a) != 2 or any(len(row) != 2 for row in a):
        raise ValueError("matrix must be 2x2")
    if transpose:
        a = [list(col) for col in zip(*a)]
    (p, q), (r, s) = a
    if not any((p, q, r, s)):
        return CaseLabel("ZeroDynamics", (Fraction(0), Fraction(0)))
    tr, det = p + s, p * s - q * r
    root = _rational_sqrt(tr * tr - 4 * det)
    if root is None:
        raise ValueError("irrational eigenvalues unsupported; use --generic-ratio mode")
    lam, mu = (tr - root) / 2, (tr + root) / 2
    if lam == mu:
        if q or r:
            return CaseLabel("JordanBlock", (lam,), diagonal=False)
        return CaseLabel("Quadratic", (lam, mu))
    # distinct eigenvalues: order them as they sit on the diagonal when A is diagonal
    if not q and not r:
        lam, mu = p, s
    diagonal = not q and not r
    if lam == 0 or mu == 0:
        name = "PolyTimesY"
    elif lam + mu == 0:
        name = "WignerDiagonal"
    elif (lam > 0) == (mu > 0):
        name = "QuantumPlane"
    else:
        name = "MixedPowers"
    return CaseLabel(name, (lam, mu), diagonal)


# ---------------------------------------------------------------------------
# ansatz and equations


@dataclass
class AnsatzSpec:
    """Candidate monomials per generator pair, each with its own unknown.

    Unknowns multiply sorted words.  The symmetrized basis is used only for
    reporting: a concrete solution is converted afterwards, because the
    normal form of a symmetrized monomial depends on the relation itself.
    """

    gens: GeneratorSet
    terms: dict  # (i, j) -> list of (multidegree, unknown name)

    @classmethod
    def from_multidegrees(cls, gens: GeneratorSet, per_pair: Mapping, prefix: str = "u") -> "AnsatzSpec":
        terms = {}
        for (i, j), mds in sorted(per_pair.items()):
            mds = grlex(set(map(tuple, mds)))
            tag = f"{prefix}{i}{j}_" if len(gens) > 2 else prefix
            terms[(i, j)] = [(md, tag + "".join(map(str, md))) for md in mds]
        names = [name for entries in terms.values() for _, name in entries]
        if len(set(names)) != len(names):
            raise ValueError("ansatz unknown names must be distinct")
        return cls(gens, terms)

    @classmethod
    def uniform(cls, gens: GeneratorSet, degrees: Sequence[int]) -> "AnsatzSpec":
        n = len(gens)
        mds = [md for d in degrees for md in multidegrees(n, d)]
        return cls.from_multidegrees(gens, {pair: mds for pair in gens.pairs()})

    @property
    def unknowns(self) -> list[str]:
        return [name for entries in self.terms.values() for _, name in entries]

    def max_degree(self) -> int:
        return max((sum(md) for entries in self.terms.values() for md, _ in entries), default=0)

    def relation_polys(self, values: Mapping | None = None) -> dict:
        out = {}
        for pair, entries in self.terms.items():
            poly = NCPoly.zero(self.gens)
            for md, name in entries:
                coeff = ParamPoly.var(name) if values is None else values.get(name, 0)
                poly = poly + NCPoly.monomial(self.gens, sorted_word(md), coeff)
            out[pair] = poly
        return out

    def relations(self, cap=None, values: Mapping | None = None) -> RelationSet:
        return RelationSet(self.gens, self.relation_polys(values), cap)


@dataclass
class EquationSystem:
    """Polynomial equations (each must vanish) in the listed unknowns.

    ``denominator`` is nonzero at every admissible point; it differs from 1
    only when the rewriting system cycles and normal forms had to be found by
    a linear solve with symbolic coefficients.
    """

    equations: list
    unknowns: list
    denominator: object = Fraction(1)
    ansatz: AnsatzSpec | None = None
    cap: int | None = None

    def __post_init__(self):
        known = set(self.unknowns)
        for eq in self.equations:
            extra = [v for v in ParamPoly.lift(eq).variables() if v not in known]
            if extra:
                raise ValueError(f"equation uses undeclared unknowns {extra}")

    def is_linear(self) -> bool:
        return all(ParamPoly.lift(eq).degree() <= 1 for eq in self.equations)

    def coefficient_matrix(self) -> list[list]:
        """Rows of linear coefficients (only meaningful for linear systems)."""
        rows = []
        for eq in self.equations:
            lin = ParamPoly.lift(eq).linear_coefficients()
            rows.append([lin.get(u, Fraction(0)) for u in self.unknowns])
        return rows


def _split_parameters(p, unknowns: set):
    """Group the terms of ``p`` by their monomial in ``unknowns``; values are ParamPolys in the rest."""
    out: dict = {}
    for mono, c in ParamPoly.lift(p).items():
        key = tuple((v, e) for v, e in mono if v in unknowns)
        rest = tuple((v, e) for v, e in mono if v not in unknowns)
        out[key] = out.get(key, ParamPoly.const(0)) + ParamPoly._raw({rest: c})
    return out


def build_system(dyn: Dynamics, ansatz: AnsatzSpec, cap: int | None = None) -> EquationSystem:
    """Preservation equations for the ansatz relations under ``dyn``.

    Dynamics may carry symbolic parameters; the equations then have
    coefficients polynomial in them, and only the ansatz names count as
    unknowns.
    """
    if dyn.gens != ansatz.gens:
        raise ValueError("dynamics and ansatz use different generator sets")
    unknowns = ansatz.unknowns
    clash = set(unknowns) & {v for p in dyn.rhs for v in p.unknowns()}
    if clash:
        raise ValueError(f"ansatz unknowns clash with dynamics parameters: {sorted(clash)}")
    rels = ansatz.relations(cap)
    gens = dyn.gens
    exprs = []
    for (i, j) in gens.pairs():
        ei, ej = NCPoly.gen(gens, i), NCPoly.gen(gens, j)
        expr = (commutator(dyn.rhs[i], ej) + commutator(ei, dyn.rhs[j])).truncate(cap)
        exprs.append(expr - derive(dyn, rels.rhs(i, j), cap))
    reduced, den = rels.cleared_normal_forms(exprs)
    equations = [c for r in reduced for _, c in r.sorted_terms() if c]
    kind = _ParamEquationSystem if dyn_has_parameters(dyn) else EquationSystem
    return kind(equations, unknowns, den, ansatz, cap)


def dyn_has_parameters(dyn: Dynamics) -> bool:
    return any(not p.is_concrete() for p in dyn.rhs)


class _ParamEquationSystem(EquationSystem):
    """Equation system whose coefficients involve dynamics parameters."""

    def __post_init__(self):
        pass

    def parameters(self) -> list[str]:
        known = set(self.unknowns)
        names = {v for eq in self.equations for v in ParamPoly.lift(eq).variables() if v not in known}
        return sorted(names, key=name_key)

    def is_linear(self) -> bool:
        known = self.unknowns
        return all(ParamPoly.lift(eq).degree_in(known) <= 1 for eq in self.equations)

    def generic(self) -> EquationSystem:
        """Equations that must hold for every value of the parameters.

        Each equation splits into one equation per parameter monomial.
        """
        names = set(self.unknowns)
        out = []
        for eq in self.equations:
            groups: dict = {}
            for mono, c in ParamPoly.lift(eq).items():
                key = tuple((v, e) for v, e in mono if v not in names)
                rest = tuple((v, e) for v, e in mono if v in names)
                groups.setdefault(key, {})[rest] = c
            out.extend(ParamPoly._raw(g) for g in groups.values())
        den = self.denominator
        if isinstance(den, ParamPoly) and set(den.variables()) - names:
            raise ValueError("denominator depends on the parameters")
        return EquationSystem([e for e in out if e], self.unknowns, den, self.ansatz, self.cap)

    def coefficient_matrix(self) -> list[list]:
        names = set(self.unknowns)
        rows = []
        for eq in self.equations:
            groups = _split_parameters(eq, names)
            rows.append([simplify(groups.get(((u, 1),), ParamPoly.const(0))) for u in self.unknowns])
        return rows


# ---------------------------------------------------------------------------
# solving


@dataclass
class SolveReport:
    status: str  # "NoSolution" | "SolutionSpace" | "NonlinearResidue"
    unknowns: list
    basis: list = field(default_factory=list)  # vectors over the unknowns
    complete: bool = True  # the reported space is the whole solution set
    residue: list = field(default_factory=list)  # surviving equations (in basis coordinates)
    scan: dict | None = None
    isolated: list = field(default_factory=list)  # scan hits outside the family
    solutions: list = field(default_factory=list)  # filled by liberate
    notes: list = field(default_factory=list)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def to_dict(self) -> dict:
        out = {
            "status": self.status,
            "unknowns": list(self.unknowns),
            "dimension": self.dimension,
            "complete": self.complete,
            "basis": [[format_rational(x) for x in v] for v in self.basis],
            "solutions": [s.to_dict() for s in self.solutions],
            "notes": list(self.notes),
        }
        if self.residue:
            out["residue"] = [str(r) for r in self.residue]
        if self.scan is not None:
            out["scan"] = self.scan
            out["isolated"] = list(self.isolated)
        return out


def _single_variable_power(p: ParamPoly):
    """Name ``t`` when ``p = c * t^k`` (so ``t = 0`` is forced), else None."""
    if len(p._terms) != 1:
        return None
    (mono,) = p._terms
    if len(mono) == 1:
        return mono[0][0]
    return None


def solve_system(sys: EquationSystem, scan_height: int | None = None) -> SolveReport:
    """Largest linear family of solutions through the origin.

    Linear equations (and equations of the form ``c t^k``) are forced and are
    imposed first.  When only genuinely nonlinear equations remain, their
    linear parts are imposed as well: every linear family of solutions must
    satisfy them, but isolated solutions off such a family may be lost, so the
    report is then marked incomplete.  What remains is either identically zero
    on the family (``SolutionSpace``) or reported as ``NonlinearResidue``.
    """
    if isinstance(sys, _ParamEquationSystem):
        raise ValueError("solve_system needs rational coefficients; substitute the parameters first")
    unknowns = list(sys.unknowns)
    eqs = [ParamPoly.lift(e) for e in sys.equations if e]
    if any(e.constant() for e in eqs):
        raise ValueError("inhomogeneous equation systems are not supported")
    k = len(unknowns)
    basis = [[Fraction(int(r == c)) for c in range(k)] for r in range(k)]
    complete = True
    while True:
        tnames = [f"_t{m}" for m in range(len(basis))]
        if basis:
            sub = {}
            for c, u in enumerate(unknowns):
                acc = ParamPoly.const(0)
                for m, vec in enumerate(basis):
                    if vec[c]:
                        acc = acc + ParamPoly.var(tnames[m]) * vec[c]
                sub[u] = acc
            current = [e.substitute(sub) for e in eqs]
        else:
            current = []
        current = [e for e in current if e]
        if not current:
            break
        forced = []
        for e in current:
            if e.degree() <= 1:
                forced.append(e)
            else:
                t = _single_variable_power(e)
                if t is not None:
                    forced.append(ParamPoly.var(t))
        if not forced:
            forced = [e.homogeneous_part(1) for e in current if e.homogeneous_part(1)]
            if not forced:
                report = SolveReport("NonlinearResidue", unknowns, basis, False, current)
                report.notes.append("surviving equations are in coordinates _t along the basis")
                return report
            complete = False
        rows = []
        for e in forced:
            lin = e.linear_coefficients()
            rows.append([lin.get(t, Fraction(0)) for t in tnames])
        ns = linalg.nullspace(rows, len(basis))
        basis = [[sum((w[m] * basis[m][c] for m in range(len(basis))), Fraction(0)) for c in range(k)]
                 for w in ns]
    basis = [_normalize(v) for v in basis]
    status = "SolutionSpace" if basis else "NoSolution"
    report = SolveReport(status, unknowns, basis, complete)
    if scan_height is not None and not (basis and complete):
        report.scan = bounded_height_scan(sys, scan_height, basis)
        report.isolated = report.scan["off_family"]
        if report.isolated and status == "NoSolution":
            # solutions exist, just not along any line through the origin
            report.status = "NonlinearResidue"
            report.residue = eqs
            report.notes.append("isolated solutions only; see scan")
    return report


def _normalize(v):
    """Scale so the first nonzero entry is 1."""
    lead = next((x for x in v if x), None)
    return [x / lead for x in v] if lead else list(v)


def height_rationals(H: int) -> list[Fraction]:
    vals = {Fraction(p, q) for q in range(1, H + 1) for p in range(-H, H + 1)}
    return sorted(vals)


MAX_SCAN_POINTS = 2_000_000


def verify_candidate(sys: EquationSystem, point: Mapping) -> bool:
    """Exact check that ``point`` solves the system with a nonzero denominator."""
    den = sys.denominator
    if isinstance(den, ParamPoly) and not den.eval(point):
        return False
    return all(not ParamPoly.lift(e).eval(point) for e in sys.equations)


def bounded_height_scan(sys: EquationSystem, H: int = 8, family: Sequence = ()) -> dict:
    """All nonzero points with coordinates p/q, |p|, q <= H, that solve the system.

    A floating-point pass discards points quickly; survivors are verified
    with exact arithmetic.  Solutions outside the span of ``family`` are
    listed separately under ``off_family``.
    """
    import numpy as np

    unknowns = list(sys.unknowns)
    values = height_rationals(H)
    total = len(values) ** len(unknowns)
    if not unknowns:
        return {"height": H, "points": 0, "candidates": 0, "off_family": [], "skipped": False}
    if total > MAX_SCAN_POINTS:
        return {"height": H, "points": total, "candidates": 0, "off_family": [], "skipped": True}
    family_rank = linalg.rank(family, len(unknowns)) if family else 0
    grid = np.array([float(v) for v in values])
    axes = np.meshgrid(*([grid] * len(unknowns)), indexing="ij")
    cols = {u: ax.ravel() for u, ax in zip(unknowns, axes)}
    powers: dict = {}

    def power(v, e):
        if (v, e) not in powers:
            powers[(v, e)] = cols[v] ** e
        return powers[(v, e)]

    mask = np.zeros(total, dtype=bool)
    for u in unknowns:
        mask |= cols[u] != 0
    for eq in sys.equations:
        eq = ParamPoly.lift(eq)
        if not eq:
            continue
        val = np.zeros(total)
        mag = np.zeros(total)
        for mono, c in eq.items():
            term = np.full(total, float(c))
            for v, e in mono:
                term *= power(v, e)
            val += term
            mag += np.abs(term)
        mask &= np.abs(val) <= 1e-9 * mag + 1e-300
        if not mask.any():
            break
    hits, off = 0, []
    for flat in np.flatnonzero(mask):
        idx = np.unravel_index(flat, [len(values)] * len(unknowns))
        point = {u: values[i] for u, i in zip(unknowns, idx)}
        if not verify_candidate(sys, point):
            continue
        hits += 1
        vec = [point[u] for u in unknowns]
        if linalg.rank(list(family) + [vec], len(unknowns)) > family_rank:
            off.append({u: format_rational(point[u]) for u in unknowns})
    return {"height": H, "points": total, "candidates": hits, "off_family": off, "skipped": False}


# ---------------------------------------------------------------------------
# the pipeline


SCALE_TRIALS = [Fraction(1), Fraction(1, 2), Fraction(2), Fraction(1, 3), Fraction(3),
                Fraction(-1), Fraction(-1, 2), Fraction(-2), Fraction(1, 5), Fraction(5)]


@dataclass
class Solution:
    """One revalidated relation set from a solution basis vector."""

    rels: RelationSet
    values: dict
    pbw: PbwReport
    flow_order: int
    flow_ok: bool
    scale: Fraction = Fraction(1)
    symmetric: dict | None = None  # pair -> {multidegree: coefficient}

    def proportions(self) -> dict:
        """Per pair: symmetric-basis coefficients normalized so the leading one is 1."""
        out = {}
        if self.symmetric is None:
            return out
        for pair, coords in self.symmetric.items():
            order = grlex(coords)
            if not order:
                continue
            lead = coords[order[0]]
            out[pair] = [(md, coords[md] / lead) for md in order]
        return out

    def to_dict(self) -> dict:
        gens = self.rels.gens
        relations = {}
        for (i, j) in gens.pairs():
            key = f"[{gens.names[i]},{gens.names[j]}]"
            entry = {"sorted": str(self.rels.rhs(i, j))}
            if self.symmetric is not None:
                entry["symmetric"] = symmetric_str(self.symmetric.get((i, j), {}), gens)
            relations[key] = entry
        props = {}
        for (i, j), items in self.proportions().items():
            key = f"[{gens.names[i]},{gens.names[j]}]"
            props[key] = [[symmetric_str({md: Fraction(1)}, gens), format_rational(c)] for md, c in items]
        return {
            "relations": relations,
            "proportions": props,
            "scale": format_rational(self.scale),
            "pbw": self.pbw.to_dict(gens),
            "flow_order": self.flow_order,
            "flow_preserved": self.flow_ok,
        }


def residuals_vanish(dyn: Dynamics, rels: RelationSet) -> bool:
    return all(preservation_residual(dyn, rels, pair).is_zero() for pair in dyn.gens.pairs())


def revalidate(dyn: Dynamics, ansatz: AnsatzSpec, vector, cap, pbw_degree: int, flow_order: int,
               denominator=Fraction(1)) -> Solution:
    """Pick a concrete representative of the ray through ``vector`` and check it independently.

    Scales where ``denominator`` vanishes are skipped (the rewriting system
    is singular there).  The preservation residual must vanish and the flow
    series must preserve the relations, else :class:`InvariantViolation`.
    Among admissible scales the first one passing the PBW check is kept.
    """
    unknowns = ansatz.unknowns
    admissible = []
    for s in SCALE_TRIALS:
        values = {u: x * s for u, x in zip(unknowns, vector)}
        if isinstance(denominator, ParamPoly) and not denominator.eval(values):
            continue
        rels = ansatz.relations(cap, values)
        try:
            if not residuals_vanish(dyn, rels):
                raise InvariantViolation(f"solution {values} fails the preservation residual")
            pbw = pbw_check(rels, pbw_degree)
        except NormalFormError:
            continue
        admissible.append((not pbw.passing, len(admissible), rels, values, pbw, s))
    for *_, rels, values, pbw, s in sorted(admissible, key=lambda c: c[:2]):
        try:
            flow = flow_preserves(dyn, rels, flow_order) if flow_order else None
        except NormalFormError:
            continue
        if flow is not None and not flow.preserved:
            raise InvariantViolation(f"flow check failed for {rels}: {flow.witness}")
        break
    else:
        raise InvariantViolation(f"no admissible representative for solution vector {vector}")
    sym = {}
    for pair in dyn.gens.pairs():
        coords = symmetric_coordinates(rels.rhs(*pair), rels, ansatz.max_degree())
        if coords is None:
            sym = None
            break
        sym[pair] = coords
    return Solution(rels, values, pbw, flow_order, True, s, sym)


def ansatz_for(dyn: Dynamics, mode: str, maxdeg: int, generic_ratio: bool = False) -> AnsatzSpec:
    gens = dyn.gens
    if mode == "linear":
        return AnsatzSpec.uniform(gens, [1])
    if mode == "quadratic":
        return AnsatzSpec.uniform(gens, [2])
    if mode == "full":
        return AnsatzSpec.uniform(gens, range(maxdeg + 1))
    if mode == "resonance":
        if len(gens) != 2:
            raise ValueError("resonance ansatz is defined for two generators")
        if generic_ratio and dyn_has_parameters(dyn):
            mds = generic_resonance_monomials(maxdeg)
        else:
            lam, mu = diagonal_eigenvalues(dyn)
            mds = resonance_monomials(lam, mu, maxdeg)
        return AnsatzSpec.from_multidegrees(gens, {(0, 1): mds})
    raise ValueError(f"unknown ansatz mode {mode!r}")


def diagonal_eigenvalues(dyn: Dynamics) -> tuple:
    out = []
    for i, p in enumerate(dyn.rhs):
        terms = dict(p.items())
        if any(w != (i,) for w in terms):
            raise ValueError("resonance ansatz needs diagonal linear dynamics")
        out.append(terms.get((i,), Fraction(0)))
    return tuple(out)


def default_cap(ansatz: AnsatzSpec, maxdeg: int):
    """Relations of degree above 2 raise degrees; truncate them at ``maxdeg``."""
    return None if ansatz.max_degree() <= 2 else max(maxdeg, ansatz.max_degree())


def liberate(dyn: Dynamics, ansatz: str | AnsatzSpec = "full", maxdeg: int = 6, cap="auto",
             flow_order: int = 4, pbw_degree: int = 4, generic_ratio: bool = False,
             scan_height: int | None = None) -> SolveReport:
    """Find flow-preserved relations for ``dyn`` and revalidate each basis solution."""
    spec = ansatz if isinstance(ansatz, AnsatzSpec) else ansatz_for(dyn, ansatz, maxdeg, generic_ratio)
    if cap == "auto":
        cap = default_cap(spec, maxdeg)
    system = build_system(dyn, spec, cap)
    if isinstance(system, _ParamEquationSystem):
        if not generic_ratio:
            raise ValueError("dynamics with symbolic parameters need generic mode")
        system = system.generic()
    report = solve_system(system, scan_height)
    if cap is not None:
        report.notes.append(f"computed modulo words of degree > {cap}")
    if system.denominator != 1:
        report.notes.append(f"valid where {system.denominator} is nonzero")
    for vec in report.basis:
        report.solutions.append(revalidate(dyn, spec, vec, cap, pbw_degree, flow_order, system.denominator))
    if report.isolated and report.basis:
        report.notes.append("scan found solutions outside the reported family")
    return report


def jacobi_check(rels: RelationSet, maxdeg: int = 4) -> PbwReport:
    if len(rels.gens) < 2:
        raise ValueError("need at least two generators")
    return pbw_check(rels, maxdeg)


def proportional(u: Sequence, v: Sequence) -> bool:
    """True when the two vectors are nonzero multiples of each other."""
    u, v = [Fraction(x) for x in u], [Fraction(x) for x in v]
    if not any(u) or not any(v) or len(u) != len(v):
        return False
    return all(a * d == b * c for (a, b), (c, d) in itertools.combinations(zip(u, v), 2)) and \
        all((a == 0) == (b == 0) for a, b in zip(u, v))
