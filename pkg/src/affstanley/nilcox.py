"""
The nilCoxeter algebra of an affine Weyl group over the rationals.

Basis elements ``A_w`` multiply by ``A_w A_v = A_{wv}`` when lengths add and
to zero otherwise.  The subalgebra of j-images of affine Grassmannian homology
classes is detected through cover coroots: ``a = sum c_w A_w`` lies in it iff
for every ``v`` the sum of ``c_w`` times the coroot of ``v^{-1} w`` over the
covers ``w`` of ``v`` is an integer multiple of the canonical central element K.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .cartan import AffineCoroot, coroot_of, is_multiple_of_K
from .errors import InconsistencyError, NotGrassmannianError
from .linalg import solve_linear
from .pieri import pieri_factors, rho, support_profile
from .weyl import weyl_group

__all__ = [
    "NilCoxElement", "KSchurElement", "MembershipCertificate", "nc_multiply",
    "pieri_element", "pieri_element_formula", "pieri_rho_element", "epsilon",
    "verify_in_B", "kschur_solver", "homology_product", "check_relations",
    "cover_coroot_sums", "epsilon_cover_sums", "pieri_range",
]


class NilCoxElement:
    """Immutable sparse combination of basis elements ``A_w``."""

    __slots__ = ("group", "_terms", "_degree")

    def __init__(self, group, terms=None):
        self.group = group
        clean = {}
        for w, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[w] = c
        self._terms = clean
        self._degree = None

    @classmethod
    def basis(cls, w, coeff=1):
        return cls(w.group, {w: coeff})

    @classmethod
    def one(cls, group):
        return cls(group, {group.identity: 1})

    @classmethod
    def zero(cls, group):
        return cls(group, {})

    # inspection ---------------------------------------------------------------

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self.items())

    def items(self):
        """Pairs ``(w, c)`` sorted by length then canonical word."""
        return sorted(self._terms.items(),
                      key=lambda t: (t[0].length, t[0].canonical_word))

    def support(self):
        return frozenset(self._terms)

    def coefficient(self, w):
        return self._terms.get(w, Fraction(0))

    def is_zero(self):
        return not self._terms

    @property
    def degree(self):
        """Common length of all keys, or None if not homogeneous (or zero)."""
        if self._degree is None and self._terms:
            lengths = {w.length for w in self._terms}
            self._degree = lengths.pop() if len(lengths) == 1 else -1
        return None if self._degree in (None, -1) else self._degree

    def is_homogeneous(self):
        return self.is_zero() or self.degree is not None

    # arithmetic ---------------------------------------------------------------

    def _check(self, other):
        if other.group is not self.group:
            raise ValueError("nilCoxeter elements from different groups")

    def __add__(self, other):
        self._check(other)
        terms = dict(self._terms)
        for w, c in other._terms.items():
            terms[w] = terms.get(w, 0) + c
        return NilCoxElement(self.group, terms)

    def __neg__(self):
        return NilCoxElement(self.group, {w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = Fraction(c)
        return NilCoxElement(self.group, {w: c * x for w, x in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, NilCoxElement):
            return nc_multiply(self, other)
        return self.scale(other)

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        if isinstance(other, NilCoxElement):
            return self.group is other.group and self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for w, c in self.items():
            word = "".join(map(str, w.canonical_word)) if w.group.size <= 10 else \
                ",".join(map(str, w.canonical_word))
            parts.append(f"{c}*A[{word}]" if c != 1 else f"A[{word}]")
        return " + ".join(parts)

    def to_tsv(self):
        """Lines ``coefficient<TAB>word`` with the word space separated."""
        return "\n".join(f"{c}\t{' '.join(map(str, w.canonical_word))}"
                         for w, c in self.items())


def _length_additive_product(g, w, v):
    """wv if lengths add, else None."""
    u = w
    for i in v.canonical_word:
        if u.has_right_descent(i):
            return None
        u = g.rmul(u, i)
    return u


def nc_multiply(a, b):
    """Product in the nilCoxeter algebra."""
    a._check(b)
    g = a.group
    out = {}
    for w, c in a._terms.items():
        for v, d in b._terms.items():
            u = _length_additive_product(g, w, v)
            if u is not None:
                out[u] = out.get(u, 0) + c * d
    return NilCoxElement(g, out)


# membership ---------------------------------------------------------------------

@dataclass(frozen=True)
class MembershipCertificate:
    status: bool
    element: NilCoxElement
    witness_v: object = None  # WeylElement or None
    coroot_sum: AffineCoroot = None

    def __bool__(self):
        return self.status

    def to_json(self):
        def word(w):
            return list(w.canonical_word)
        out = {
            "element": [{"word": word(w), "numerator": c.numerator,
                         "denominator": c.denominator}
                        for w, c in self.element.items()],
            "status": "pass" if self.status else "fail",
            "witness_v": None if self.witness_v is None else word(self.witness_v),
            "coroot_sum": None,
        }
        if self.coroot_sum is not None:
            out["coroot_sum"] = {
                "finite_part": [str(x) for x in self.coroot_sum.finite_part],
                "K_coeff": str(self.coroot_sum.K_coeff),
            }
        return out


def _coroot_cache(g):
    cache = getattr(g, "_coroot_cache", None)
    if cache is None:
        cache = {}
        g._coroot_cache = cache
    return cache


def _cover_coroot(g, vec):
    cache = _coroot_cache(g)
    got = cache.get(vec)
    if got is None:
        got = coroot_of(g.cartan, g.cartan.root_from_vector(vec))
        cache[vec] = got
    return got


def _covers(g, w):
    cache = getattr(g, "_cover_cache", None)
    if cache is None:
        cache = {}
        g._cover_cache = cache
    got = cache.get(w)
    if got is None:
        got = {v: _cover_coroot(g, vec) for v, vec in g.lower_covers_with_roots(w).items()}
        cache[w] = got
    return got


def coroot_sums(a):
    """Map each candidate v to the sum of c_w times the cover coroot of (v, w)."""
    g = a.group
    zero = AffineCoroot(tuple(Fraction(0) for _ in range(g.cartan.n)), Fraction(0))
    sums = {}
    for w, c in a.items():
        for v, cor in _covers(g, w).items():
            sums[v] = sums.get(v, zero) + cor.scale(c)
    return sums


def verify_in_B(a):
    """Check the cover-coroot criterion for membership of a homogeneous element."""
    if not a.is_homogeneous():
        raise ValueError("verify_in_B needs a homogeneous element")
    sums = coroot_sums(a)
    for v in sorted(sums, key=lambda x: x.canonical_word):
        ok, _k = is_multiple_of_K(sums[v])
        if not ok:
            return MembershipCertificate(False, a, v, sums[v])
    return MembershipCertificate(True, a)


# k-Schur elements via the linear system ------------------------------------------

@dataclass(frozen=True)
class KSchurElement:
    w: object
    value: NilCoxElement

    def __post_init__(self):
        if self.value.coefficient(self.w) != 1:
            raise InconsistencyError("k-Schur element must have coefficient 1 on A_w")
        for u, _c in self.value.items():
            if u != self.w and (u.is_grassmannian() or u.length != self.w.length):
                raise InconsistencyError(f"unexpected key {u!r} in k-Schur element")


@lru_cache(maxsize=None)
def _level(family, n, length):
    return tuple(weyl_group(family, n).elements_by_length(length)[length])


def _kschur_value(w):
    g = w.group
    cd = g.cartan
    ell = w.length
    if ell == 0:
        return NilCoxElement.one(g)
    level = _level(cd.family, cd.n, ell)
    unknowns = [u for u in level if not u.is_grassmannian()]
    rows = {}  # (v, i) -> coefficients
    rhs = {}
    for u in level:
        if u.is_grassmannian() and u != w:
            continue
        for v, cor in _covers(g, u).items():
            for i, x in enumerate(cor.finite_part):
                if not x:
                    continue
                key = (v, i)
                if u == w:
                    rhs[key] = rhs.get(key, 0) - x
                    rows.setdefault(key, {})
                else:
                    row = rows.setdefault(key, {})
                    row[u] = row.get(u, 0) + x
    equations = [(rows[k], rhs.get(k, 0)) for k in rows]
    solution = solve_linear(equations, unknowns)
    terms = {u: c for u, c in solution.items() if c}
    terms[w] = Fraction(1)
    value = NilCoxElement(g, terms)
    cert = verify_in_B(value)
    if not cert:
        raise InconsistencyError(
            f"solver output for {w!r} fails membership at {cert.witness_v!r}")
    return value


def kschur_solver(w):
    """The unique element of the j-image with leading term A_w (w Grassmannian)."""
    if not w.is_grassmannian():
        raise NotGrassmannianError(f"{w!r} is not 0-Grassmannian")
    cache = getattr(w.group, "_kschur_cache", None)
    if cache is None:
        cache = {}
        w.group._kschur_cache = cache
    value = cache.get(w)
    if value is None:
        value = _kschur_value(w)
        cache[w] = value
    if w.group.cartan.family == "B":
        bad = [c for _u, c in value.items() if c.denominator != 1]
        if bad:
            raise InconsistencyError(f"non-integral type B k-Schur element for {w!r}")
    return KSchurElement(w, value)


# Pieri elements ------------------------------------------------------------------

def pieri_range(family, n):
    """Valid indices r for pieri_element."""
    family = family.upper()
    if family == "B":
        return range(1, 2 * n)
    if family == "D":
        return range(1, 2 * n - 1)
    return range(1, pieri_factors(family, n).max_length + 1)


def _check_r(family, n, r):
    rng = pieri_range(family, n)
    if r not in rng:
        raise ValueError(f"Pieri index {r} outside {rng.start}..{rng.stop - 1} "
                         f"for type {family}{n}")


def _coefficient(family, n, r, w):
    if family == "A":
        return Fraction(1)
    prof = support_profile(w)
    if family == "C":
        return Fraction(2) ** (prof.c - 1)
    return Fraction(2) ** (prof.cc - (1 if r < n else 0))


def pieri_element_formula(family, n, r):
    """The closed-form sum over length-r Pieri factors, with the stat weights."""
    family = family.upper()
    _check_r(family, n, r)
    g = weyl_group(family, n)
    zs = pieri_factors(family, n)
    return NilCoxElement(g, {w: _coefficient(family, n, r, w) for w in zs.level(r)})


@lru_cache(maxsize=None)
def pieri_element(family, n, r):
    """Pieri element of index r; in type D at r = n-1 the average of the two
    k-Schur elements of the rho_{n-1} variants."""
    family = family.upper()
    _check_r(family, n, r)
    g = weyl_group(family, n)
    if family == "D" and r == n - 1:
        a = kschur_solver(g.from_word(rho("D", n, r, 1))).value
        b = kschur_solver(g.from_word(rho("D", n, r, 2))).value
        return (a + b).scale(Fraction(1, 2))
    return pieri_element_formula(family, n, r)


def pieri_rho_element(family, n, r, variant=None):
    """Element attached to rho_r (or rho_{n-1}^{(variant)} in type D)."""
    family = family.upper()
    if family == "D" and r == n - 1:
        if variant not in (1, 2):
            raise ValueError("type D index n-1 needs variant 1 or 2")
        half = epsilon(n).scale(Fraction(1, 2))
        base = pieri_element("D", n, r)
        return base + half if variant == 1 else base - half
    return pieri_element(family, n, r)


def pieri_or_zero(family, n, r):
    g = weyl_group(family, n)
    if r == 0:
        return NilCoxElement.one(g)
    return pieri_element(family, n, r)


# the type D element epsilon ---------------------------------------------------------

def _relabel(g, w, mapping):
    return g.from_word(tuple(mapping.get(i, i) for i in w.canonical_word))


def _rule_images(g, w, n):
    """Pairs (w', sign factor) derivable from w by one symmetry rule."""
    out = []
    # swaps of the two node pairs at the ends of the diagram
    for mapping in ({n - 1: n, n: n - 1}, {0: 1, 1: 0}):
        out.append((_relabel(g, w, mapping), -1))
    # moving s_n or s_{n-1} from one side to the other
    for i in (n, n - 1):
        if w.has_left_descent(i):
            v = g.lmul(i, w)
            if not v.has_right_descent(i):
                out.append((g.rmul(v, i), -1))
        if w.has_right_descent(i):
            v = g.rmul(w, i)
            if not v.has_left_descent(i):
                out.append((g.lmul(i, v), -1))
    # rearrangements around a middle node j
    ell = w.length
    for word in g.reduced_words(w):
        for j in range(2, n - 1):
            if word.count(j) != 1:
                continue
            k = word.index(j)
            left, right = word[:k], word[k + 1:]
            if (all(a < j for a in left) and all(b > j for b in right)) or \
                    (all(a > j for a in left) and all(b < j for b in right)):
                cand = right + (j,) + left
                if g.is_reduced(cand):
                    out.append((g.from_word(cand), 1))
            if k == ell - 1 or k == 0:
                rest = left if k == ell - 1 else right
                lows = [a for a in rest if a < j]
                split = len(lows)
                if all(a < j for a in rest[:split]) and all(a > j for a in rest[split:]):
                    cand = (j,) + rest if k == ell - 1 else rest + (j,)
                    if g.is_reduced(cand):
                        out.append((g.from_word(cand), 1))
    return out


@lru_cache(maxsize=None)
def epsilon_signs(n):
    """Sign table of epsilon built breadth first from the two anchors."""
    g = weyl_group("D", n)
    first = g.from_word(rho("D", n, n - 1, 1))
    second = g.from_word(rho("D", n, n - 1, 2))
    signs = {first: 1, second: -1}
    queue = [first, second]
    while queue:
        nxt = []
        for w in queue:
            for u, f in _rule_images(g, w, n):
                s = signs[w] * f
                old = signs.get(u)
                if old is None:
                    signs[u] = s
                    nxt.append(u)
                elif old != s:
                    raise InconsistencyError(
                        f"symmetry rules force both signs on {u!r}")
        queue = nxt
    return signs


@lru_cache(maxsize=None)
def epsilon(n):
    """The type D element epsilon, checked against the solver difference."""
    g = weyl_group("D", n)
    eps = NilCoxElement(g, epsilon_signs(n))
    full = frozenset(range(n + 1))
    expected = {w for w in pieri_factors("D", n).level(n - 1)
                if support_profile(w).support == full}
    if eps.support() != expected:
        raise InconsistencyError("epsilon support differs from full-support factors")
    # with coefficient +1 on A_{rho^(1)}, epsilon is the plain difference of
    # the two k-Schur elements (each has coefficient 1 on its own key)
    a = kschur_solver(g.from_word(rho("D", n, n - 1, 1))).value
    b = kschur_solver(g.from_word(rho("D", n, n - 1, 2))).value
    if a - b != eps:
        raise InconsistencyError("epsilon differs from the solver difference")
    return eps


# homology products ----------------------------------------------------------------

def homology_product(x, z, left=None):
    """Coefficients of xi_x * xi_z in the Schubert basis.

    ``left`` may supply the j-image of xi_x directly (for instance a Pieri
    element); otherwise it is computed by the solver.
    """
    for u in (x, z):
        if not u.is_grassmannian():
            raise NotGrassmannianError(f"{u!r} is not 0-Grassmannian")
    g = x.group
    value = left if left is not None else kschur_solver(x).value
    out = {}
    for y, c in value.items():
        u = _length_additive_product(g, y, z)
        if u is not None and u.is_grassmannian():
            out[u] = out.get(u, 0) + c
    return {u: c for u, c in out.items() if c}


# relations ------------------------------------------------------------------------

def _weight(n, r, s):
    return Fraction(-1) ** r / Fraction(2) ** ((r >= n) + (s >= n))


def relation_sum(family, n, m):
    """``sum_{r+s=2m} (-1)^r 2^{-[r>=n]-[s>=n]} P_r P_s`` with ``P_0 = 1``.

    In type D at m = n-1 the middle square is replaced by
    ``(P_{n-1} + e/2)(P_{n-1} - e/2)``, the product of the two k-Schur
    elements of the rho_{n-1} variants.
    """
    family = family.upper()
    top = pieri_range(family, n).stop - 1
    if not 1 <= m or 2 * m > top + (1 if family == "D" else 0):
        raise ValueError(f"relation index {m} out of range for type {family}{n}")
    total = NilCoxElement.zero(weyl_group(family, n))
    for r in range(0, 2 * m + 1):
        s = 2 * m - r
        if family == "D" and r == s == n - 1:
            half = epsilon(n).scale(Fraction(1, 2))
            p = pieri_element("D", n, r)
            term = (p + half) * (p - half)
        else:
            term = pieri_or_zero(family, n, r) * pieri_or_zero(family, n, s)
        total = total + term.scale(_weight(n, r, s))
    return total


def relation_range(family, n):
    """The m for which every P_r with r <= 2m exists: 2m <= top index."""
    family = family.upper()
    if family == "B":
        return range(1, n)
    if family == "D":
        return range(1, n)
    raise ValueError("quadratic Pieri relations are stated for types B and D")


def check_relations(family, n):
    """Map each m in relation_range to whether the relation sum vanishes.

    For m beyond this range the products P_r P_s are linearly independent, so
    no relation of this shape can hold there.  In type D the entry m = n-1 is
    the relation with the epsilon-corrected middle square.
    """
    return {m: relation_sum(family, n, m).is_zero() for m in relation_range(family, n)}


# cover identities -----------------------------------------------------------------

def cover_coroot_sums(family, n):
    """For each non-top Pieri factor v: (sum over Pieri covers w of
    2^{cc(w)} alpha_vw^vee, 2^{cc(v)})."""
    family = family.upper()
    g = weyl_group(family, n)
    zs = pieri_factors(family, n)
    top = zs.max_length
    out = {}
    for ell in range(top):
        for v in zs.level(ell):
            out[v] = None
        for w in zs.level(ell + 1):
            weight = 2 ** support_profile(w).cc
            for v, cor in _covers(g, w).items():
                if v in zs:
                    prev = out.get(v)
                    out[v] = cor.scale(weight) if prev is None else prev + cor.scale(weight)
    return {v: (s, 2 ** support_profile(v).cc) for v, s in out.items()}


def epsilon_cover_sums(n):
    """For v in Z^D of length n-2: sum of epsilon coefficients over Pieri covers."""
    g = weyl_group("D", n)
    zs = pieri_factors("D", n)
    eps = epsilon(n)
    out = {v: Fraction(0) for v in zs.level(n - 2)}
    for w in zs.level(n - 1):
        c = eps.coefficient(w)
        for v in g.lower_covers(w):
            if v in out:
                out[v] += c
    return out
