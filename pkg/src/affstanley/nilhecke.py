"""
A small nilHecke layer: polynomial coefficients in the affine weight lattice,
the commutation of A_i past a polynomial, and the coproduct followed by
evaluation at zero.

Polynomials are in the commuting variables Lambda_0..Lambda_n and delta,
stored as dicts from exponent tuples (length n+2, delta last) to Fractions.
Elements of the tensor square are kept with every polynomial on the far left
of the first factor, using ``s a (x) b = a (x) s b`` for the left S-actions.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .errors import InconsistencyError
from .nilcox import NilCoxElement, epsilon, pieri_element, pieri_range, \
    _length_additive_product
from .weyl import weyl_group

__all__ = [
    "WeightPolynomial", "NilHeckeElement", "TensorElement", "commute_past",
    "coproduct", "coproduct_basis", "phi0_2", "check_coproduct_theorems",
    "tensor_of", "expected_coproduct",
]


class WeightPolynomial:
    """Polynomial in Lambda_0..Lambda_n, delta with rational coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        self.terms = {m: Fraction(c) for m, c in (terms or {}).items() if c}

    @classmethod
    def constant(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars, k):
        return cls(nvars, {tuple(1 if t == k else 0 for t in range(nvars)): 1})

    @classmethod
    def linear(cls, coeffs):
        nvars = len(coeffs)
        return cls(nvars, {tuple(1 if t == k else 0 for t in range(nvars)): c
                           for k, c in enumerate(coeffs) if c})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, WeightPolynomial):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == WeightPolynomial.constant(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"WeightPolynomial({self.terms})"

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return WeightPolynomial(self.nvars, out)

    def __neg__(self):
        return WeightPolynomial(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, WeightPolynomial):
            c = Fraction(other)
            return WeightPolynomial(self.nvars, {m: c * x for m, x in self.terms.items()})
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return WeightPolynomial(self.nvars, out)

    __rmul__ = __mul__

    def degree(self):
        return max((sum(m) for m in self.terms), default=-1)

    def truncate(self, max_degree):
        return WeightPolynomial(self.nvars, {m: c for m, c in self.terms.items()
                                             if sum(m) <= max_degree})

    def at_zero(self):
        """phi_0: the constant term."""
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def power(self, k):
        out = WeightPolynomial.constant(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out


class _WeightData:
    """Simple roots in the Lambda/delta basis and the reflections they give."""

    def __init__(self, cd):
        self.cd = cd
        size = cd.n + 1
        self.nvars = size + 1
        A = cd.cartan_matrix
        # alpha_i = sum_j <alpha_j^vee, alpha_i> Lambda_j + [i == 0] delta
        self.alpha = []
        for i in range(size):
            coeffs = [A[j][i] for j in range(size)] + [1 if i == 0 else 0]
            self.alpha.append(WeightPolynomial.linear(coeffs))
        self._reflect_cache = {}
        self._dd_cache = {}

    def reflect_monomial(self, i, mono):
        """s_i applied to a monomial: Lambda_i -> Lambda_i - alpha_i."""
        key = (i, mono)
        got = self._reflect_cache.get(key)
        if got is None:
            k = mono[i]
            base = list(mono)
            base[i] = 0
            got = WeightPolynomial(self.nvars, {tuple(base): 1})
            if k:
                image = WeightPolynomial.variable(self.nvars, i) - self.alpha[i]
                got = got * image.power(k)
            self._reflect_cache[key] = got
        return got

    def reflect(self, i, p):
        out = WeightPolynomial(self.nvars)
        for m, c in p.terms.items():
            out = out + self.reflect_monomial(i, m) * c
        return out

    def divided_difference_monomial(self, i, mono):
        """partial_i of a monomial through the twisted Leibniz rule
        partial(fg) = partial(f) g + s_i(f) partial(g), with
        partial(Lambda_j) = [i == j] and partial(delta) = 0."""
        key = (i, mono)
        got = self._dd_cache.get(key)
        if got is None:
            if mono[i] == 0:
                got = WeightPolynomial(self.nvars)  # s_i fixes the monomial
            else:
                rest = list(mono)
                rest[i] -= 1
                rest = tuple(rest)
                # mono = Lambda_i * rest
                rest_poly = WeightPolynomial(self.nvars, {rest: 1})
                s_lam = WeightPolynomial.variable(self.nvars, i) - self.alpha[i]
                got = rest_poly + s_lam * self.divided_difference_monomial(i, rest)
            self._dd_cache[key] = got
        return got

    def divided_difference(self, i, p):
        out = WeightPolynomial(self.nvars)
        for m, c in p.terms.items():
            out = out + self.divided_difference_monomial(i, m) * c
        return out


@lru_cache(maxsize=None)
def _weights(family, n):
    return _WeightData(weyl_group(family, n).cartan)


def _data(group):
    cd = group.cartan
    return _weights(cd.family, cd.n)


class NilHeckeElement:
    """Sparse map WeylElement -> WeightPolynomial, polynomials on the left."""

    __slots__ = ("group", "terms")

    def __init__(self, group, terms=None):
        self.group = group
        self.terms = {w: p for w, p in (terms or {}).items() if not p.is_zero()}

    def __eq__(self, other):
        return isinstance(other, NilHeckeElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"NilHeckeElement({self.terms})"

    def phi0(self):
        return NilCoxElement(self.group, {w: p.at_zero() for w, p in self.terms.items()})


def commute_past(group, i, poly):
    """A_i * poly in left-normal form: (s_i poly) A_i + (partial_i poly) A_id."""
    data = _data(group)
    terms = {}
    moved = data.reflect(i, poly)
    if not moved.is_zero():
        terms[group.simple(i)] = moved
    rest = data.divided_difference(i, poly)
    if not rest.is_zero():
        terms[group.identity] = rest
    return NilHeckeElement(group, terms)


class TensorElement:
    """Sparse map (x, y) -> WeightPolynomial for sum p A_x (x) A_y."""

    __slots__ = ("group", "terms")

    def __init__(self, group, terms=None):
        self.group = group
        self.terms = {k: p for k, p in (terms or {}).items() if not p.is_zero()}

    def __eq__(self, other):
        return isinstance(other, TensorElement) and self.terms == other.terms

    def __add__(self, other):
        out = dict(self.terms)
        for k, p in other.terms.items():
            out[k] = out[k] + p if k in out else p
        return TensorElement(self.group, out)

    def scale(self, c):
        return TensorElement(self.group, {k: p * c for k, p in self.terms.items()})


def _add(out, key, poly):
    if key in out:
        out[key] = out[key] + poly
    else:
        out[key] = poly


def _left_multiply(group, i, t, budget):
    """Delta(A_i) * t with
    Delta(A_i) = A_i (x) 1 + 1 (x) A_i - alpha_i A_i (x) A_i.

    ``budget`` is the largest polynomial degree that can still influence the
    value at zero; higher terms are dropped.
    """
    data = _data(group)
    alpha = data.alpha[i]
    out = {}
    for (x, y), p in t.terms.items():
        ix = _length_additive_product(group, group.simple(i), x)
        iy = _length_additive_product(group, group.simple(i), y)
        sp = data.reflect(i, p)
        dp = data.divided_difference(i, p)
        # A_i p A_x (x) A_y
        if ix is not None:
            _add(out, (ix, y), sp)
        _add(out, (x, y), dp)
        # p A_x (x) A_i A_y
        if iy is not None:
            _add(out, (x, iy), p)
            # -alpha_i A_i p A_x (x) A_i A_y
            if ix is not None:
                _add(out, (ix, iy), -(alpha * sp))
            _add(out, (x, iy), -(alpha * dp))
    if budget is not None:
        out = {k: p.truncate(budget) for k, p in out.items()}
    return TensorElement(group, out)


def _delta_word(group, word, truncate=True):
    nvars = group.size + 1
    one = WeightPolynomial.constant(nvars, 1)
    t = TensorElement(group, {(group.identity, group.identity): one})
    for k in range(len(word) - 1, -1, -1):
        # k letters remain to the left; each lowers degree by at most one
        t = _left_multiply(group, word[k], t, k if truncate else None)
    return t


def _second_word(w):
    """A reduced word built by stripping the largest left descent first."""
    g = w.group
    word = []
    u = w
    while u.length:
        d = max(u.left_descents())
        word.append(d)
        u = g.lmul(d, u)
    return tuple(word)


def coproduct_basis(w, truncate=True, check=True):
    """Delta(A_w), checked against a second reduced word."""
    cache = getattr(w.group, "_coproduct_cache", None)
    if cache is None:
        cache = {}
        w.group._coproduct_cache = cache
    key = (w, truncate)
    got = cache.get(key)
    if got is None:
        got = _delta_word(w.group, w.canonical_word, truncate)
        if check:
            other = _second_word(w)
            if other != w.canonical_word:
                alt = _delta_word(w.group, other, truncate)
                if phi0_2(alt) != phi0_2(got) or (not truncate and alt != got):
                    raise InconsistencyError(f"coproduct of {w!r} depends on the reduced word")
        cache[key] = got
    return got


def coproduct(a, truncate=True):
    """Delta of a homogeneous nilCoxeter element."""
    if not a.is_homogeneous():
        raise ValueError("coproduct needs a homogeneous element")
    total = TensorElement(a.group)
    for w, c in a.items():
        total = total + coproduct_basis(w, truncate).scale(c)
    return total


def phi0_2(t):
    """Evaluate every coefficient at zero: dict (x, y) -> Fraction."""
    out = {}
    for k, p in t.terms.items():
        c = p.at_zero()
        if c:
            out[k] = c
    return out


def tensor_of(a, b, coeff=1):
    """a (x) b as a dict (x, y) -> Fraction."""
    coeff = Fraction(coeff)
    return {(x, y): coeff * c * d for x, c in a.items() for y, d in b.items()}


def _accumulate(target, source):
    for k, c in source.items():
        target[k] = target.get(k, 0) + c


def _clean(d):
    return {k: c for k, c in d.items() if c}


def expected_coproduct(family, n, r):
    """Right-hand side of the coproduct formula for the Pieri element P_r."""
    family = family.upper()
    g = weyl_group(family, n)
    one = NilCoxElement.one(g)
    p = pieri_element(family, n, r)
    out = {}
    _accumulate(out, tensor_of(one, p))
    _accumulate(out, tensor_of(p, one))
    top = pieri_range(family, n).stop - 1
    if family == "D" and r == top:
        for s in range(1, r):
            if s == n - 1:
                continue
            _accumulate(out, tensor_of(pieri_element(family, n, s),
                                       pieri_element(family, n, r - s)))
        mid = pieri_element(family, n, n - 1)
        _accumulate(out, tensor_of(mid, mid, 2))
        # the epsilon in this formula is the half-normalized one, for which
        # P_{n-1} +- epsilon are the k-Schur elements of the rho_{n-1} variants
        half = epsilon(n).scale(Fraction(1, 2))
        _accumulate(out, tensor_of(half, half, 2 * (-1) ** (n - 1)))
        return _clean(out)
    for s in range(1, r):
        expo = 1 if (r >= n > r - s and n > s) else 0
        if family == "A":
            expo = 0
        _accumulate(out, tensor_of(pieri_element(family, n, s),
                                   pieri_element(family, n, r - s), 2 ** expo))
    return _clean(out)


def check_coproduct_theorems(family, n):
    """Compare phi0_2(Delta(P_r)) with the closed formulas.

    Returns a dict from r (and ``"eps"`` in type D) to True/False.
    """
    family = family.upper()
    if family not in ("B", "D"):
        raise ValueError("coproduct formulas are stated for types B and D")
    report = {}
    for r in pieri_range(family, n):
        got = phi0_2(coproduct(pieri_element(family, n, r)))
        report[r] = got == expected_coproduct(family, n, r)
    if family == "D":
        eps = epsilon(n)
        one = NilCoxElement.one(eps.group)
        want = {}
        _accumulate(want, tensor_of(one, eps))
        _accumulate(want, tensor_of(eps, one))
        report["eps"] = phi0_2(coproduct(eps)) == _clean(want)
    return report
