"""Fraction-free Gauss-Jordan elimination over the rationals."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .scalars import exact_div


def _integer_row(row: Sequence) -> list[int]:
    den = 1
    for x in row:
        den = lcm(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in row]
    return _primitive(ints)


def _primitive(row: list[int]) -> list[int]:
    g = 0
    for x in row:
        g = gcd(g, x)
        if g == 1:
            return row
    if g > 1:
        return [x // g for x in row]
    return row


def echelon(rows: Sequence[Sequence], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns.

    Rows are cleared to primitive integer vectors and eliminated with
    integer cross-multiplication, so no intermediate fractions appear.  The
    pivot column is the lowest-index column with a nonzero entry; within that
    column the row with the smallest absolute entry is chosen (ties by row
    index).
    """
    mat = [_integer_row(r) for r in rows if any(r)]
    for r in mat:
        if len(r) != ncols:
            raise ValueError("row length does not match column count")
    pivots: list[int] = []
    top = 0
    for col in range(ncols):
        candidates = [i for i in range(top, len(mat)) if mat[i][col]]
        if not candidates:
            continue
        best = min(candidates, key=lambda i: (abs(mat[i][col]), i))
        mat[top], mat[best] = mat[best], mat[top]
        prow = mat[top]
        p = prow[col]
        for i in range(len(mat)):
            if i == top:
                continue
            f = mat[i][col]
            if f:
                mat[i] = _primitive([p * a - f * b for a, b in zip(mat[i], prow)])
        pivots.append(col)
        top += 1
        if top == len(mat):
            break
    reduced = []
    for k, col in enumerate(pivots):
        p = mat[k][col]
        reduced.append([Fraction(x, p) for x in mat[k]])
    return reduced, pivots


def rank(rows: Sequence[Sequence], ncols: int) -> int:
    return len(echelon(rows, ncols)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Basis of {v : rows . v = 0}, one vector per free column (free entry 1)."""
    reduced, pivots = echelon(rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for k, col in enumerate(pivots):
            v[col] = -reduced[k][free]
        basis.append(v)
    return basis


def solve_affine(rows: Sequence[Sequence], rhs: Sequence, ncols: int):
    """Solve rows . v = rhs.

    Returns ``(particular, kernel_basis)`` or ``(None, kernel_basis)`` when
    the system is inconsistent.  The particular solution has every free
    variable set to zero.
    """
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    reduced, pivots = echelon(aug, ncols + 1)
    kernel = nullspace(rows, ncols)
    if pivots and pivots[-1] == ncols:
        return None, kernel
    v = [Fraction(0)] * ncols
    for k, col in enumerate(pivots):
        v[col] = reduced[k][ncols]
    return v, kernel


def fraction_free_solve(matrix: Sequence[Sequence], rhs: Sequence[Sequence]):
    """Solve ``A X = B`` over an integral domain by fraction-free Gauss-Jordan.

    Entries may be Fractions or ParamPolys.  Returns ``(numerators, det)``
    with ``A . numerators = det . B``, where ``det`` is the determinant of
    ``A`` up to sign, or ``(None, 0)`` when ``A`` is singular.  Every division
    performed is exact.
    """
    s = len(matrix)
    width = s + (len(rhs[0]) if s and rhs else 0)
    rows = [list(matrix[i]) + list(rhs[i]) for i in range(s)]
    prev = Fraction(1)
    for k in range(s):
        piv = next((r for r in range(k, s) if rows[r][k]), None)
        if piv is None:
            return None, Fraction(0)
        rows[k], rows[piv] = rows[piv], rows[k]
        pk = rows[k][k]
        prow = rows[k]
        for i in range(s):
            if i == k:
                continue
            row = rows[i]
            aik = row[k]
            new = []
            for c in range(width):
                v = pk * row[c] - aik * prow[c] if aik else pk * row[c]
                new.append(exact_div(v, prev) if v else Fraction(0))
            rows[i] = new
        prev = pk
    return [row[s:] for row in rows], prev
