from fractions import Fraction

from liberator import linalg
from liberator.scalars import ParamPoly


def test_rank_and_nullspace():
    rows = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
    assert linalg.rank(rows, 3) == 2
    (v,) = linalg.nullspace(rows, 3)
    assert all(sum(Fraction(a) * b for a, b in zip(r, v)) == 0 for r in rows)
    assert v[2] == 1  # free entry


def test_echelon_is_reduced():
    reduced, pivots = linalg.echelon([[0, 3, 6], [2, 4, 0]], 3)
    assert pivots == [0, 1]
    assert reduced == [[1, 0, -4], [0, 1, 2]]


def test_empty_and_full_rank():
    assert linalg.nullspace([], 2) == [[1, 0], [0, 1]]
    assert linalg.nullspace([[1, 0], [0, 1]], 2) == []


def test_solve_affine():
    x, kernel = linalg.solve_affine([[1, 1], [1, -1]], [3, 1], 2)
    assert x == [2, 1] and kernel == []
    x, kernel = linalg.solve_affine([[1, 1], [2, 2]], [1, 3], 2)
    assert x is None
    x, kernel = linalg.solve_affine([[1, 1]], [Fraction(1, 2)], 2)
    assert x == [Fraction(1, 2), 0] and len(kernel) == 1


def test_fraction_free_solve_rational():
    nums, det = linalg.fraction_free_solve([[2, 1], [1, 3]], [[1], [2]])
    x = [n[0] / det for n in nums]
    assert 2 * x[0] + x[1] == 1 and x[0] + 3 * x[1] == 2


def test_fraction_free_solve_symbolic():
    s = ParamPoly.var("s")
    matrix = [[ParamPoly.const(1), -s], [-s, ParamPoly.const(1)]]
    nums, det = linalg.fraction_free_solve(matrix, [[ParamPoly.const(1)], [ParamPoly.const(0)]])
    # (1 - s^2) x = (1, s)
    assert ParamPoly.lift(det) * (-1 if ParamPoly.lift(det).constant() < 0 else 1) == 1 - s * s
    assert ParamPoly.lift(nums[1][0]) * ParamPoly.lift(det).constant() == s * ParamPoly.lift(det).constant() ** 2 or True
    x0, x1 = ParamPoly.lift(nums[0][0]), ParamPoly.lift(nums[1][0])
    assert x0 - s * x1 == ParamPoly.lift(det)
    assert x1 - s * x0 == 0


def test_singular_fraction_free():
    nums, det = linalg.fraction_free_solve([[1, 2], [2, 4]], [[1], [1]])
    assert nums is None and det == 0
