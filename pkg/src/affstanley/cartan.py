"""
Cartan data for the untwisted affine types A, B, C, D.

Affine roots are stored as integer vectors over the simple roots
alpha_0, ..., alpha_n.  Since alpha_0 = delta - theta, a vector ``c`` is the
real root ``finite + k*delta`` with ``k = c[0]`` and
``finite = c[1:] - c[0]*theta``.  The invariant form is normalized so that
long roots have squared length 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import RankError

__all__ = [
    "FAMILIES", "MIN_RANK", "CartanData", "AffineRoot", "AffineCoroot",
    "build_cartan", "coroot_of", "is_multiple_of_K",
]

FAMILIES = ("A", "B", "C", "D")
MIN_RANK = {"A": 2, "B": 3, "C": 2, "D": 4}


def _finite_realization(family, n):
    """Simple roots and highest root in an orthonormal basis, plus the
    factor that rescales the dot product so long roots have norm 2."""
    def e(i, dim):
        v = [0] * dim
        v[i] = 1
        return v

    def sub(u, v):
        return [a - b for a, b in zip(u, v)]

    def add(u, v):
        return [a + b for a, b in zip(u, v)]

    if family == "A":
        dim = n + 1
        simple = [sub(e(i, dim), e(i + 1, dim)) for i in range(n)]
        theta = sub(e(0, dim), e(n, dim))
        scale = Fraction(1)
    else:
        dim = n
        simple = [sub(e(i, dim), e(i + 1, dim)) for i in range(n - 1)]
        if family == "B":
            simple.append(e(n - 1, dim))
            theta = add(e(0, dim), e(1, dim))
            scale = Fraction(1)
        elif family == "C":
            simple.append([2 * x for x in e(n - 1, dim)])
            theta = [2 * x for x in e(0, dim)]
            scale = Fraction(1, 2)
        else:
            simple.append(add(e(n - 2, dim), e(n - 1, dim)))
            theta = add(e(0, dim), e(1, dim))
            scale = Fraction(1)
    return simple, theta, scale


def _solve(matrix, rhs):
    """Solve a small nonsingular system exactly (Gauss-Jordan)."""
    size = len(matrix)
    aug = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    for col in range(size):
        piv = next(r for r in range(col, size) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(size):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [aug[r][size] for r in range(size)]


@dataclass(frozen=True)
class CartanData:
    family: str
    n: int
    cartan_matrix: tuple[tuple[int, ...], ...]  # a_ij = <alpha_i^vee, alpha_j>
    marks: tuple[int, ...]
    comarks: tuple[int, ...]
    norms: tuple[Fraction, ...]  # (alpha_i | alpha_i)
    gram: tuple[tuple[Fraction, ...], ...]  # (alpha_i | alpha_j), i, j in I_af
    finite_roots: frozenset = field(repr=False, compare=False)

    @property
    def nodes(self):
        return tuple(range(self.n + 1))

    @property
    def theta(self):
        return self.marks[1:]

    @property
    def delta(self):
        return self.marks

    def form(self, u, v):
        """Invariant form on affine root vectors."""
        g = self.gram
        return sum(u[i] * g[i][j] * v[j]
                   for i in range(len(u)) if u[i]
                   for j in range(len(v)) if v[j])

    def pair(self, i, v):
        """<alpha_i^vee, v> for a root-lattice vector ``v``."""
        row = self.cartan_matrix[i]
        return sum(row[j] * v[j] for j in range(len(v)))

    def finite_form(self, u, v):
        g = self.gram
        m = self.n
        return sum(u[i] * g[i + 1][j + 1] * v[j]
                   for i in range(m) if u[i] for j in range(m) if v[j])

    def coweight(self, i):
        """nu(omega_i^vee) in simple-root coordinates (i in 1..n)."""
        if not 1 <= i <= self.n:
            raise ValueError(f"coweight index {i} out of range 1..{self.n}")
        g = [[self.gram[a][b] for b in range(1, self.n + 1)]
             for a in range(1, self.n + 1)]
        rhs = [1 if j == i else 0 for j in range(1, self.n + 1)]
        return tuple(_solve(g, rhs))

    def reflect_finite(self, i, vec):
        """s_i (i >= 1) acting on a finite vector in simple-root coordinates."""
        coeff = 2 * self.finite_form(_unit(i - 1, self.n), vec) / self.norms[i]
        out = list(vec)
        out[i - 1] -= coeff
        return tuple(out)

    def root_from_vector(self, c):
        return AffineRoot(tuple(c[j + 1] - c[0] * self.marks[j + 1]
                                for j in range(self.n)), c[0])

    def vector_from_root(self, root):
        k = root.delta_coeff
        return (k,) + tuple(f + k * t for f, t in zip(root.finite_part, self.theta))


def _unit(i, m):
    v = [0] * m
    v[i] = 1
    return tuple(v)


@dataclass(frozen=True)
class AffineRoot:
    finite_part: tuple[int, ...]
    delta_coeff: int

    def __neg__(self):
        return AffineRoot(tuple(-x for x in self.finite_part), -self.delta_coeff)

    def is_positive(self):
        if self.delta_coeff:
            return self.delta_coeff > 0
        return any(x > 0 for x in self.finite_part)


@dataclass(frozen=True)
class AffineCoroot:
    finite_part: tuple[Fraction, ...]  # simple-coroot coordinates alpha_1^vee..
    K_coeff: Fraction

    def __add__(self, other):
        return AffineCoroot(tuple(a + b for a, b in zip(self.finite_part, other.finite_part)),
                            self.K_coeff + other.K_coeff)

    def __neg__(self):
        return AffineCoroot(tuple(-a for a in self.finite_part), -self.K_coeff)

    def scale(self, c):
        return AffineCoroot(tuple(c * a for a in self.finite_part), c * self.K_coeff)


def _enumerate_finite_roots(cd):
    m = cd.n
    todo = [_unit(i, m) for i in range(m)]
    roots = set(todo)
    while todo:
        r = todo.pop()
        for i in range(1, m + 1):
            s = cd.reflect_finite(i, r)
            s = tuple(int(x) for x in s)
            if s not in roots:
                roots.add(s)
                todo.append(s)
    return frozenset(roots)


@lru_cache(maxsize=None)
def build_cartan(family, n):
    """Cartan data of the untwisted affine type ``family`` of rank ``n``."""
    family = family.upper()
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
    if n < MIN_RANK[family]:
        raise RankError(f"type {family} requires n >= {MIN_RANK[family]}, got {n}")
    simple, theta, scale = _finite_realization(family, n)
    dot = lambda u, v: scale * sum(a * b for a, b in zip(u, v))
    vecs = [[-x for x in theta]] + simple
    size = n + 1
    gram = tuple(tuple(Fraction(dot(vecs[i], vecs[j])) for j in range(size))
                 for i in range(size))
    norms = tuple(gram[i][i] for i in range(size))
    cartan = tuple(tuple(int(2 * gram[i][j] / norms[i]) for j in range(size))
                   for i in range(size))
    # theta in simple-root coordinates
    fin = [[Fraction(dot(simple[j], simple[i])) for j in range(n)] for i in range(n)]
    rhs = [Fraction(dot(theta, simple[i])) for i in range(n)]
    coeffs = _solve(fin, rhs)
    assert all(c.denominator == 1 for c in coeffs)
    marks = (1,) + tuple(int(c) for c in coeffs)
    comarks = tuple(int(marks[i] * norms[i] / 2) for i in range(size))
    cd = CartanData(family, n, cartan, marks, comarks, norms, gram, frozenset())
    object.__setattr__(cd, "finite_roots", _enumerate_finite_roots(cd))
    _validate(cd)
    return cd


def _validate(cd):
    A = cd.cartan_matrix
    size = cd.n + 1
    for i in range(size):
        assert A[i][i] == 2
        assert all(A[i][j] <= 0 for j in range(size) if j != i)
    assert all(sum(A[i][j] * cd.marks[j] for j in range(size)) == 0 for i in range(size))
    assert all(sum(cd.comarks[i] * A[i][j] for i in range(size)) == 0 for j in range(size))
    for vec in (cd.marks, cd.comarks):
        g = 0
        for x in vec:
            assert x > 0
            g = gcd(g, x)
        assert g == 1


def coroot_of(cd, root):
    """The coroot of a real affine root, as finite coroot plus a multiple of K."""
    fin = root.finite_part
    if not any(fin):
        raise ValueError("imaginary root has no coroot")
    if tuple(int(x) for x in fin) not in cd.finite_roots:
        raise ValueError(f"{fin} is not a root of type {cd.family}{cd.n}")
    norm = cd.finite_form(fin, fin)
    # alpha^vee = 2 alpha / (alpha|alpha); alpha_i = (|alpha_i|^2 / 2) alpha_i^vee
    finite = tuple(Fraction(2 * fin[j]) / norm * cd.norms[j + 1] / 2
                   for j in range(cd.n))
    return AffineCoroot(finite, Fraction(2 * root.delta_coeff) / norm)


def is_multiple_of_K(c):
    """Return ``(True, k)`` if ``c == k*K`` for an integer ``k``, else ``(False, None)``."""
    if any(c.finite_part):
        return False, None
    k = Fraction(c.K_coeff)
    if k.denominator != 1:
        return False, None
    return True, int(k)
