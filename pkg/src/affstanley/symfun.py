"""
Symmetric functions in the monomial basis, with Schur Q/P functions, the
q-functions q_r = Q_r, and the Hall-Littlewood pairing.

Everything is expanded in monomials m_lambda with exact rational
coefficients.  Products of monomials are computed by counting how a
partition splits into rearrangements of the two factors, so no variable
count enters.  A quotient bound ``k`` drops every m_lambda with
``lambda_1 > k``; this realizes the quotient of the dual side by the ideal
generated by ``y_i^{k+1}``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .linalg import Echelon, solve_linear

__all__ = [
    "SymFunc", "ShiftedTableau", "partitions", "strict_partitions",
    "odd_partitions", "m_product", "q_to_m", "q_lambda_to_m", "schurQ",
    "schurP", "hl_pairing", "expand_in_odd_q", "expand_in_schurQ",
    "expand_in_schurP", "gamma_partitions", "gamma_basis", "dual_q_basis",
    "kernel_pairs", "theta", "hall_pairing", "iota", "p_geq",
    "coproduct_m", "multiply", "h_lambda_to_m", "q_prime",
]


# partitions -----------------------------------------------------------------------

@lru_cache(maxsize=None)
def partitions(d, max_part=None):
    """Partitions of d (parts <= max_part), in reverse lexicographic order."""
    if max_part is None:
        max_part = d
    if d == 0:
        return ((),)
    out = []
    for first in range(min(d, max_part), 0, -1):
        for rest in partitions(d - first, first):
            out.append((first,) + rest)
    return tuple(out)


def strict_partitions(d, max_part=None):
    return tuple(p for p in partitions(d, max_part) if len(set(p)) == len(p))


def odd_partitions(d, max_part=None):
    return tuple(p for p in partitions(d, max_part) if all(x % 2 for x in p))


def p_geq(lam, n):
    """Number of parts >= n."""
    return sum(1 for p in lam if p >= n)


def _check_partition(lam):
    lam = tuple(lam)
    if any(a < b for a, b in zip(lam, lam[1:])) or any(p <= 0 for p in lam):
        raise ValueError(f"{lam} is not a partition")
    return lam


# the SymFunc value type ----------------------------------------------------------

class SymFunc:
    """Sparse combination of basis elements indexed by partitions.

    ``basis`` is one of "m", "q", "Q" (Schur Q) and "h".  ``bound``, when set,
    marks an element of the quotient in which m_lambda with lambda_1 > bound
    vanish; it is only meaningful in the m basis.
    """

    __slots__ = ("basis", "terms", "bound")

    BASES = ("m", "q", "Q", "h", "P")

    def __init__(self, terms=None, basis="m", bound=None):
        if basis not in self.BASES:
            raise ValueError(f"unknown basis {basis!r}")
        clean = {}
        for lam, c in (terms or {}).items():
            lam = _check_partition(lam)
            c = Fraction(c)
            if not c:
                continue
            if bound is not None and basis == "m" and lam and lam[0] > bound:
                continue
            clean[lam] = clean.get(lam, 0) + c
        self.terms = {k: v for k, v in clean.items() if v}
        self.basis = basis
        self.bound = bound

    @classmethod
    def one(cls, basis="m"):
        return cls({(): 1}, basis)

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(str(c) if not lam else
                          (f"{c}*" if c != 1 else "") + f"{self.basis}{list(lam)}"
                          for lam, c in self.items())

    def items(self):
        """Terms sorted by degree, then reverse lexicographically."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), tuple(-x for x in t[0])))

    def coefficient(self, lam):
        return self.terms.get(tuple(lam), Fraction(0))

    def is_zero(self):
        return not self.terms

    def degrees(self):
        return {sum(lam) for lam in self.terms}

    @property
    def degree(self):
        ds = self.degrees()
        return ds.pop() if len(ds) == 1 else None

    def _same(self, other):
        if self.basis != other.basis:
            raise ValueError(f"basis mismatch: {self.basis} vs {other.basis}")

    def __add__(self, other):
        self._same(other)
        terms = dict(self.terms)
        for lam, c in other.terms.items():
            terms[lam] = terms.get(lam, 0) + c
        bound = _merge_bound(self.bound, other.bound)
        return SymFunc(terms, self.basis, bound)

    def __neg__(self):
        return SymFunc({k: -v for k, v in self.terms.items()}, self.basis, self.bound)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return SymFunc({k: c * v for k, v in self.terms.items()}, self.basis, self.bound)

    def __mul__(self, other):
        if isinstance(other, SymFunc):
            return multiply(self, other)
        return self.scale(Fraction(other))

    def __rmul__(self, c):
        return self.scale(Fraction(c))

    def __eq__(self, other):
        if isinstance(other, SymFunc):
            return self.basis == other.basis and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.basis, frozenset(self.terms.items())))

    def truncate(self, bound):
        """Image in the quotient where m_lambda with lambda_1 > bound vanish."""
        if self.basis != "m":
            raise ValueError("truncation applies to the m basis")
        return SymFunc(self.terms, "m", bound)

    def to_m(self):
        """Expansion in monomials."""
        if self.basis == "m":
            return self
        out = SymFunc()
        for lam, c in self.terms.items():
            out = out + _basis_to_m(self.basis, lam).scale(c)
        return out

    def to_json(self):
        return {
            "basis": self.basis,
            "degree": self.degree,
            "terms": [{"partition": list(lam), "numerator": c.numerator,
                       "denominator": c.denominator} for lam, c in self.items()],
        }

    @classmethod
    def from_json(cls, data):
        return cls({tuple(t["partition"]): Fraction(t["numerator"], t["denominator"])
                    for t in data["terms"]}, data["basis"])


def _merge_bound(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _basis_to_m(basis, lam):
    if basis == "q":
        return q_lambda_to_m(lam)
    if basis == "Q":
        return schurQ(lam)
    if basis == "P":
        return schurP(lam)
    if basis == "h":
        return h_lambda_to_m(lam)
    return SymFunc({lam: 1})


# monomial products ---------------------------------------------------------------

def _distinct_arrangements(parts, length):
    """Distinct sequences of given length that rearrange ``parts`` padded by 0."""
    counts = Counter(parts)
    counts[0] += length - len(parts)

    def rec(k):
        if k == 0:
            yield ()
            return
        for v in sorted(counts):
            if counts[v]:
                counts[v] -= 1
                for rest in rec(k - 1):
                    yield (v,) + rest
                counts[v] += 1

    return list(rec(length))


@lru_cache(maxsize=None)
def _m_product(lam, mu):
    if not lam or not mu:
        return {lam or mu: 1}
    total = sum(lam) + sum(mu)
    out = {}
    for nu in partitions(total):
        if len(nu) < max(len(lam), len(mu)) or len(nu) > len(lam) + len(mu):
            continue
        count = 0
        target = Counter(mu)
        for alpha in _distinct_arrangements(lam, len(nu)):
            beta = [a - b for a, b in zip(nu, alpha)]
            if min(beta) < 0:
                continue
            if Counter(b for b in beta if b) == target:
                count += 1
        if count:
            out[nu] = count
    return out


def m_product(lam, mu):
    """m_lam * m_mu as a SymFunc in the m basis."""
    lam, mu = _check_partition(lam), _check_partition(mu)
    if lam > mu:
        lam, mu = mu, lam
    return SymFunc(_m_product(lam, mu))


def multiply(f, g):
    """Product of two symmetric functions; the result is in the m basis
    unless both factors are in the same multiplicative basis (q or h)."""
    if f.basis == g.basis and f.basis in ("q", "h"):
        out = {}
        for a, c in f.terms.items():
            for b, d in g.terms.items():
                lam = tuple(sorted(a + b, reverse=True))
                out[lam] = out.get(lam, 0) + c * d
        return SymFunc(out, f.basis)
    f, g = f.to_m(), g.to_m()
    bound = _merge_bound(f.bound, g.bound)
    out = {}
    for a, c in f.terms.items():
        for b, d in g.terms.items():
            if bound is not None and ((a and a[0] > bound) or (b and b[0] > bound)):
                continue
            for lam, k in m_product(a, b).terms.items():
                out[lam] = out.get(lam, 0) + c * d * k
    return SymFunc(out, "m", bound)


# q and Q functions ----------------------------------------------------------------

@lru_cache(maxsize=None)
def q_to_m(r):
    """q_r = Q_r = sum over mu |- r of 2^{l(mu)} m_mu; q_0 = 1."""
    if r < 0:
        raise ValueError("negative degree")
    return SymFunc({mu: 2 ** len(mu) for mu in partitions(r)})


@lru_cache(maxsize=None)
def q_lambda_to_m(lam):
    """q_lambda = q_{lambda_1} q_{lambda_2} ... expanded in monomials."""
    lam = _check_partition(lam)
    out = SymFunc.one()
    for part in lam:
        out = multiply(out, q_to_m(part))
    return out


@lru_cache(maxsize=None)
def h_lambda_to_m(lam):
    """h_lambda in monomials: h_r is the sum of all m_mu with mu |- r."""
    lam = _check_partition(lam)
    out = SymFunc.one()
    for part in lam:
        out = multiply(out, SymFunc({mu: 1 for mu in partitions(part)}))
    return out


def _shifted_boxes(shape):
    return {(r, r + c) for r, length in enumerate(shape) for c in range(length)}


@lru_cache(maxsize=None)
def _strip_fillings(inner, outer):
    """Number of ways to fill outer/inner with letters i' < i so that rows
    and columns weakly increase, i' is not repeated in a row and i is not
    repeated in a column."""
    boxes = sorted(_shifted_boxes(outer) - _shifted_boxes(inner))
    count = 0
    for marks in product((0, 1), repeat=len(boxes)):  # 0 = barred, 1 = unbarred
        fill = dict(zip(boxes, marks))
        ok = True
        for (r, c), v in fill.items():
            right = fill.get((r, c + 1))
            below = fill.get((r + 1, c))
            # weakly increasing: an unbarred letter cannot precede a barred one
            if right is not None and v > right:
                ok = False
            if below is not None and v > below:
                ok = False
            if right is not None and v == right == 0:
                ok = False  # repeated barred letter in a row
            if below is not None and v == below == 1:
                ok = False  # repeated unbarred letter in a column
            if not ok:
                break
        count += ok
    return count


def _strict_subshapes(inner, outer, size):
    """Strict partitions mu with inner <= mu <= outer and |mu| = size."""
    out = []
    rows = len(outer)
    inner = tuple(inner) + (0,) * (rows - len(inner))

    def rec(r, prefix, remaining):
        if r == rows:
            if remaining == 0:
                out.append(tuple(x for x in prefix if x))
            return
        hi = outer[r]
        if prefix:
            hi = min(hi, max(prefix[-1] - 1, 0))  # strict, and no row below an empty one
        for x in range(inner[r], hi + 1):
            if x - inner[r] > remaining:
                break
            rec(r + 1, prefix + [x], remaining - (x - inner[r]))

    rec(0, [], size - sum(inner))
    return out


@lru_cache(maxsize=None)
def _count_tableaux(shape, content):
    """Marked shifted tableaux of the given strict shape and content."""
    states = {(): 1}
    for k in content:
        nxt = {}
        for inner, ways in states.items():
            for mu in _strict_subshapes(inner, shape, sum(inner) + k):
                c = _strip_fillings(inner, mu)
                if c:
                    nxt[mu] = nxt.get(mu, 0) + ways * c
        states = nxt
    return states.get(tuple(shape), 0)


def _check_strict(lam):
    lam = _check_partition(lam)
    if len(set(lam)) != len(lam):
        raise ValueError(f"{lam} is not a strict partition")
    return lam


@lru_cache(maxsize=None)
def schurQ(lam):
    """Q_lambda in monomials, by counting marked shifted tableaux."""
    lam = _check_strict(lam)
    d = sum(lam)
    return SymFunc({mu: _count_tableaux(lam, mu) for mu in partitions(d)})


@lru_cache(maxsize=None)
def schurP(lam):
    lam = _check_strict(lam)
    return schurQ(lam).scale(Fraction(1, 2 ** len(lam)))


def _letter(text):
    text = text.strip()
    barred = text.endswith("'")
    value = int(text.rstrip("'"))
    return value, barred


@dataclass(frozen=True)
class ShiftedTableau:
    """Rows of a marked shifted tableau; entries are strings like "3" or "3'"."""
    rows: tuple

    @property
    def shape(self):
        return tuple(len(r) for r in self.rows)

    def _cells(self):
        return {(r, r + c): _letter(x) for r, row in enumerate(self.rows)
                for c, x in enumerate(row)}

    def is_valid(self):
        shape = self.shape
        if any(a <= b for a, b in zip(shape, shape[1:])):
            return False
        cells = self._cells()

        def key(letter):
            value, barred = letter
            return 2 * value - (1 if barred else 0)

        for (r, c), x in cells.items():
            for nb, axis in (((r, c + 1), "row"), ((r + 1, c), "col")):
                y = cells.get(nb)
                if y is None:
                    continue
                if key(x) > key(y):
                    return False
                if x == y and axis == "row" and x[1]:
                    return False
                if x == y and axis == "col" and not x[1]:
                    return False
        return True

    def weight(self):
        """Exponent vector as a dict letter -> count (barred and unbarred)."""
        out = Counter(v for v, _b in self._cells().values())
        return dict(sorted(out.items()))


# expansions and the pairing ------------------------------------------------------------

def _vector(f):
    return dict(f.to_m().terms)


@lru_cache(maxsize=None)
def _odd_q_echelon(d):
    ech = Echelon()
    for lam in odd_partitions(d):
        if not ech.add(_vector(q_lambda_to_m(lam)), lam):
            raise AssertionError("odd q functions are dependent")
    return ech


def expand_in_odd_q(f):
    """Coefficients of f in the basis q_lambda, lambda odd; f homogeneous."""
    f = f.to_m()
    out = {}
    for d in sorted(f.degrees()):
        part = SymFunc({k: v for k, v in f.terms.items() if sum(k) == d})
        got = _odd_q_echelon(d).express(_vector(part))
        if got is None:
            raise ValueError(f"degree {d} component is not in the span of the q functions")
        out.update(got)
    return out


@lru_cache(maxsize=None)
def _echelon(kind, d):
    ech = Echelon()
    fn = schurQ if kind == "Q" else schurP
    for lam in strict_partitions(d):
        ech.add(_vector(fn(lam)), lam)
    return ech


def _expand(kind, f):
    f = f.to_m()
    out = {}
    for d in sorted(f.degrees()):
        part = SymFunc({k: v for k, v in f.terms.items() if sum(k) == d})
        got = _echelon(kind, d).express(_vector(part))
        if got is None:
            raise ValueError(f"degree {d} component is not a Schur {kind} combination")
        out.update(got)
    return SymFunc(out, kind)


def expand_in_schurQ(f):
    return _expand("Q", f)


def expand_in_schurP(f):
    return _expand("P", f)


def hl_pairing(f, g):
    """[f, g] for f in the q-span and g a monomial expansion.

    f is written in odd q functions; then [q_lambda, g] is the coefficient of
    m_lambda in g.
    """
    g = g.to_m()
    total = Fraction(0)
    for lam, c in expand_in_odd_q(f).items():
        total += c * g.coefficient(lam)
    return total


# affine q bases and their duals -----------------------------------------------------------

def _top(family, n):
    family = family.upper()
    if family == "B":
        return 2 * n - 1
    if family == "D":
        return 2 * n - 2
    raise ValueError("affine q bases are defined for types B and D")


def gamma_partitions(family, n, d):
    """Partitions of d with parts <= top and distinct parts below n
    (the color b partitions in type D)."""
    top = _top(family, n)
    out = []
    for lam in partitions(d, top):
        small = [p for p in lam if p < n]
        if len(small) == len(set(small)):
            out.append(lam)
    return out


def q_prime(lam, n):
    """q'_lambda = 2^{p_{>=n}(lambda)} q_lambda."""
    return SymFunc({tuple(lam): 2 ** p_geq(lam, n)}, "q")


def gamma_basis(family, n, d):
    """Dict lambda -> q'_lambda (in the q basis) for the homology basis."""
    return {lam: q_prime(lam, n) for lam in gamma_partitions(family, n, d)}


@lru_cache(maxsize=None)
def dual_q_basis(family, n, d):
    """Dict lambda -> R_lambda, truncated monomial expansions dual to q'."""
    family = family.upper()
    top = _top(family, n)
    index = gamma_partitions(family, n, d)
    strict = strict_partitions(d)
    truncated = {nu: schurP(nu).truncate(top) for nu in strict}
    out = {}
    for lam in index:
        equations = []
        for mu in index:
            coeffs = {nu: truncated[nu].coefficient(mu) for nu in strict}
            rhs = Fraction(1, 2 ** p_geq(lam, n)) if mu == lam else 0
            equations.append((coeffs, rhs))
        sol = solve_linear(equations, list(strict), require_unique=False)
        total = SymFunc(bound=top)
        for nu, c in sol.items():
            if c:
                total = total + truncated[nu].scale(c)
        out[lam] = total
    return out


def kernel_pairs(family, n, d):
    """Check sum q'_lambda[X] R_lambda[Y] against the truncated kernel in degree d.

    Returns (ok, left, right) where the sides are dicts (mu, nu) -> coefficient
    of m_mu[X] m_nu[Y].
    """
    top = _top(family, n)
    left = {}
    duals = dual_q_basis(family, n, d)
    for lam, qp in gamma_basis(family, n, d).items():
        qx = qp.to_m()
        for mu, a in qx.terms.items():
            for nu, b in duals[lam].terms.items():
                left[(mu, nu)] = left.get((mu, nu), 0) + a * b
    right = {}
    for lam in partitions(d, top):
        for mu, a in q_lambda_to_m(lam).terms.items():
            right[(mu, lam)] = right.get((mu, lam), 0) + a
    left = {k: v for k, v in left.items() if v}
    right = {k: v for k, v in right.items() if v}
    return left == right, left, right


# theta and the Hall inner product ------------------------------------------------------

def theta(f):
    """The map h_lambda -> q_lambda from the h basis into the q basis."""
    if f.basis != "h":
        raise ValueError("theta takes an element in the h basis")
    return SymFunc(f.terms, "q")


def hall_pairing(f, g):
    """<f, g> with <h_lambda, m_mu> = delta; f in the h basis, g in monomials."""
    if f.basis != "h":
        raise ValueError("first argument must be in the h basis")
    g = g.to_m()
    return sum((c * g.coefficient(lam) for lam, c in f.terms.items()), Fraction(0))


def iota(f):
    """Inclusion of a Schur P combination into symmetric functions (monomials)."""
    return f.to_m()


def coproduct_m(f):
    """Delta(f) for f in monomials: m_mu[X+Y] = sum of m_a[X] m_b[Y] over
    the ways to split the multiset of parts of mu."""
    out = {}
    for mu, c in f.to_m().terms.items():
        counts = Counter(mu)
        values = sorted(counts)
        for split in product(*(range(counts[v] + 1) for v in values)):
            a = tuple(sorted((v for v, k in zip(values, split) for _ in range(k)),
                             reverse=True))
            b = tuple(sorted((v for v, k in zip(values, split)
                              for _ in range(counts[v] - k)), reverse=True))
            out[(a, b)] = out.get((a, b), 0) + c
    return {k: v for k, v in out.items() if v}
