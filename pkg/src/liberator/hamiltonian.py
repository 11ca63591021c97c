"""Is the dynamics inner?  Search for h with [h, e_i] = f_i modulo the relations."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .dynamics import Dynamics
from .ncalgebra import (
    GeneratorMismatchError,
    NCPoly,
    RelationSet,
    _rows_for,
    commutator,
    multidegrees,
    normal_form,
    symmetric_str,
    weyl_symmetrize,
)
from .scalars import format_rational


def adjoint_action(h: NCPoly, x: NCPoly, rels: RelationSet) -> NCPoly:
    """NF([h, x])."""
    if h.gens != rels.gens or x.gens != rels.gens:
        raise GeneratorMismatchError("adjoint action needs a shared generator set")
    return normal_form(commutator(h, x).truncate(rels.cap), rels)


def from_symmetric(gens, coords) -> NCPoly:
    """Element sum c_m * weyl(m) in the free algebra."""
    out = NCPoly.zero(gens)
    for md, c in coords.items():
        if c:
            out = out + weyl_symmetrize(gens, md).scale(c)
    return out


@dataclass
class HamiltonReport:
    status: str  # "Hamiltonian" | "NotHamiltonianUpToDegree"
    maxdeg: int
    h: dict | None = None  # particular solution, symmetric coordinates {multidegree: c}
    kernel: list = field(default_factory=list)  # list of symmetric-coordinate dicts
    gens: object = None
    rels: RelationSet | None = None

    @property
    def hamiltonian(self) -> bool:
        return self.status == "Hamiltonian"

    def element(self) -> NCPoly | None:
        return None if self.h is None else from_symmetric(self.gens, self.h)

    def kernel_elements(self) -> list[NCPoly]:
        return [from_symmetric(self.gens, k) for k in self.kernel]

    def to_dict(self) -> dict:
        out = {"status": self.status, "maxdeg": self.maxdeg}
        if self.h is not None:
            out["h"] = symmetric_str(self.h, self.gens)
            out["h_sorted"] = str(normal_form(self.element(), self.rels))
            out["kernel"] = [symmetric_str(k, self.gens) for k in self.kernel]
        else:
            out["h"] = None
            out["kernel"] = []
        return out


def hamiltonian_defect(dyn: Dynamics, rels: RelationSet, h: NCPoly) -> list[NCPoly]:
    """NF([h, e_i] - f_i) per generator; all zero iff h generates the dynamics."""
    out = []
    for i, f in enumerate(dyn.rhs):
        e = NCPoly.gen(dyn.gens, i)
        out.append(normal_form((commutator(h, e) - f).truncate(rels.cap), rels))
    return out


def solve_hamiltonian(dyn: Dynamics, rels: RelationSet, maxdeg: int = 6) -> HamiltonReport:
    """Affine solution of NF([h, e_i]) = NF(f_i) with h in the span of symmetrized monomials.

    Each condition is linear in the coefficients of h because the relations
    are concrete.  The particular solution has every free coefficient set to
    zero; the kernel is the span of central elements found up to ``maxdeg``.
    """
    if dyn.gens != rels.gens:
        raise GeneratorMismatchError("dynamics and relations use different generator sets")
    if not rels.is_concrete():
        raise ValueError("solve_hamiltonian needs concrete relations")
    gens = dyn.gens
    n = len(gens)
    mds = [md for d in range(maxdeg + 1) for md in multidegrees(n, d)]
    basis = [weyl_symmetrize(gens, md) for md in mds]
    blocks = []
    for i in range(n):
        e = NCPoly.gen(gens, i)
        images = [adjoint_action(b, e, rels) for b in basis]
        target = normal_form(dyn.rhs[i].truncate(rels.cap), rels)
        blocks.append((images, target))
    rows, rhs = [], []
    for images, target in blocks:
        table, columns = _rows_for(images + [target])
        for k in range(len(columns)):
            rows.append([table[m][k] for m in range(len(mds))])
            rhs.append(table[-1][k])
    particular, kernel = linalg.solve_affine(rows, rhs, len(mds))
    if particular is None:
        return HamiltonReport("NotHamiltonianUpToDegree", maxdeg, gens=gens, rels=rels)
    h = {md: c for md, c in zip(mds, particular) if c}
    kern = [{md: c for md, c in zip(mds, v) if c} for v in kernel]
    report = HamiltonReport("Hamiltonian", maxdeg, h, kern, gens, rels)
    if any(hamiltonian_defect(dyn, rels, report.element())):
        raise AssertionError("Hamiltonian failed its own adjoint re-check")
    return report


def proportional_hamiltonian(dyn: Dynamics, rels: RelationSet, h0: NCPoly):
    """Scalar k with NF([k h0, e_i]) = NF(f_i) for every i, or None.

    Used to test a Hamiltonian that is only known up to proportion.
    """
    k = None
    for i, f in enumerate(dyn.rhs):
        e = NCPoly.gen(dyn.gens, i)
        image = adjoint_action(h0, e, rels)
        target = normal_form(f.truncate(rels.cap), rels)
        words = set(image.terms) | set(target.terms)
        for w in words:
            a, b = image.coefficient(w), target.coefficient(w)
            if not a:
                if b:
                    return None
                continue
            ratio = Fraction(b) / Fraction(a)
            if k is None:
                k = ratio
            elif ratio != k:
                return None
    if k is None:
        return Fraction(0) if not any(dyn.rhs) else None
    return k


def format_coords(coords: dict) -> dict:
    return {"".join(map(str, md)): format_rational(c) for md, c in sorted(coords.items())}
