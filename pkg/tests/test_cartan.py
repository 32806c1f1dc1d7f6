from fractions import Fraction
from math import gcd
from functools import reduce

import pytest

from affstanley.cartan import (
    AffineCoroot, AffineRoot, MIN_RANK, build_cartan, coroot_of, is_multiple_of_K,
)
from affstanley.errors import RankError

TYPES = [("A", 2), ("A", 4), ("B", 3), ("B", 5), ("C", 2), ("C", 4), ("D", 4), ("D", 6)]


@pytest.mark.parametrize("family,n", TYPES)
def test_generalized_cartan_matrix(family, n):
    cd = build_cartan(family, n)
    A = cd.cartan_matrix
    for i, row in enumerate(A):
        assert row[i] == 2
        assert all(x <= 0 for j, x in enumerate(row) if j != i)


@pytest.mark.parametrize("family,n", TYPES)
def test_marks_are_null_vectors(family, n):
    cd = build_cartan(family, n)
    A = cd.cartan_matrix
    size = n + 1
    assert all(sum(A[i][j] * cd.marks[j] for j in range(size)) == 0 for i in range(size))
    assert all(sum(cd.comarks[i] * A[i][j] for i in range(size)) == 0 for j in range(size))
    for vec in (cd.marks, cd.comarks):
        assert all(x > 0 for x in vec)
        assert reduce(gcd, vec) == 1


def test_b3_comarks():
    assert build_cartan("B", 3).comarks == (1, 1, 2, 1)


def test_a2_marks():
    assert build_cartan("A", 2).marks == (1, 1, 1)


def test_d4_diagram():
    A = build_cartan("D", 4).cartan_matrix
    for i in (0, 1, 3, 4):
        assert A[i][2] == -1 and A[2][i] == -1
        assert all(A[i][j] == 0 for j in (0, 1, 3, 4) if j != i)


@pytest.mark.parametrize("family", ["A", "B", "C", "D"])
def test_minimum_rank(family):
    with pytest.raises(RankError):
        build_cartan(family, MIN_RANK[family] - 1)


def test_unknown_family():
    with pytest.raises(ValueError):
        build_cartan("E", 6)


def test_alpha0_coroot_b3():
    cd = build_cartan("B", 3)
    root = cd.root_from_vector((1, 0, 0, 0))
    assert root == AffineRoot((-1, -2, -2), 1)
    cor = coroot_of(cd, root)
    assert cor.finite_part == (-1, -2, -1)
    assert cor.K_coeff == 1


@pytest.mark.parametrize("i", [1, 2, 3])
def test_simple_coroots(i):
    cd = build_cartan("B", 3)
    fin = tuple(1 if j == i - 1 else 0 for j in range(3))
    cor = coroot_of(cd, AffineRoot(fin, 0))
    assert cor == AffineCoroot(fin, 0)


def test_short_root_k_coefficient():
    cd = build_cartan("B", 3)
    assert coroot_of(cd, AffineRoot((0, 0, 1), 1)).K_coeff == 2


def test_is_multiple_of_K():
    assert is_multiple_of_K(AffineCoroot((0, 0, 0), Fraction(2))) == (True, 2)
    assert is_multiple_of_K(AffineCoroot((1, 0, 0), Fraction(0))) == (False, None)
    assert is_multiple_of_K(AffineCoroot((0, 0, 0), Fraction(1, 2))) == (False, None)


def test_sum_of_simple_coroots_is_K():
    # alpha_0^vee + alpha_1^vee + 2 alpha_2^vee + alpha_3^vee with alpha_0^vee = K - theta^vee
    cd = build_cartan("B", 3)
    total = coroot_of(cd, cd.root_from_vector((1, 0, 0, 0)))
    for i, mult in ((1, 1), (2, 2), (3, 1)):
        fin = tuple(1 if j == i - 1 else 0 for j in range(3))
        total = total + coroot_of(cd, AffineRoot(fin, 0)).scale(mult)
    assert is_multiple_of_K(total) == (True, 1)


def test_imaginary_root_has_no_coroot():
    with pytest.raises(ValueError):
        coroot_of(build_cartan("B", 3), AffineRoot((0, 0, 0), 1))
