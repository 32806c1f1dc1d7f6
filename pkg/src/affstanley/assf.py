"""
Affine Stanley symmetric functions, dual k-Schur functions and the checks
that tie them to the nilCoxeter side.

``assf(w)`` counts factorizations w = v^1 v^2 ... into Pieri factors with
additive lengths, each factor weighted by 2^{stat(v)-1}.  The coefficient of
m_lambda is the weighted count for the composition lambda.
``assf_via_kernel`` reads the same numbers off products of Pieri elements.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .errors import InconsistencyError, NotGrassmannianError
from .linalg import Echelon, rank, solve_linear
from .nilcox import (
    NilCoxElement, epsilon, homology_product, pieri_element,
    pieri_rho_element,
)
from .pieri import partition_of, pieri_factors, rho, stat
from .symfun import (
    SymFunc, dual_q_basis, expand_in_schurP, expand_in_schurQ, gamma_partitions,
    h_lambda_to_m, hl_pairing, p_geq, partitions,
)
from .weyl import weyl_group

__all__ = [
    "ASSF", "KSchurSym", "assf", "assf_via_kernel", "kschur_dual",
    "grassmannian_level", "positivity_checks", "typeD_checks",
    "homology_pieri_symcheck", "triangularity", "duality_matrix",
    "swap_partners", "type_a_kschur_expansion", "UndefinedDualError",
]


@dataclass(frozen=True)
class ASSF:
    w: object
    family: str
    n: int
    value: SymFunc

    def to_json(self):
        out = self.value.to_json()
        out.update(w=list(self.w.canonical_word), family=self.family, n=self.n)
        return out


@dataclass(frozen=True)
class KSchurSym:
    """Dual k-Schur function: coefficients in q'_lambda and in Schur Q."""
    w: object
    family: str
    n: int
    q_prime: dict
    value: SymFunc  # Schur Q basis
    conjectural: bool = False

    def q_expansion(self):
        """The same element in the q basis."""
        return SymFunc({lam: c * 2 ** p_geq(lam, self.n) for lam, c in self.q_prime.items()}, "q")

    def to_json(self):
        out = self.value.to_json()
        out.update(w=list(self.w.canonical_word), family=self.family, n=self.n,
                   conjectural=self.conjectural)
        return out


# factorization counts -------------------------------------------------------------

def _counter(g, factors_of):
    """Memoized weighted count of factorizations along a composition.

    ``factors_of(r)`` yields pairs (v, weight) with v of length r.
    """
    memo = {}

    def count(u, comp):
        if not comp:
            return Fraction(1) if u.length == 0 else Fraction(0)
        key = (u, comp)
        got = memo.get(key)
        if got is not None:
            return got
        total = Fraction(0)
        for v, weight in factors_of(comp[0]):
            rest = u.strip_left(v.canonical_word)
            if rest is not None:
                total += weight * count(rest, comp[1:])
        memo[key] = total
        return total

    return count


@lru_cache(maxsize=None)
def _stat_factors(family, n, r):
    zs = pieri_factors(family, n)
    return tuple((v, Fraction(2) ** (stat(v, family) - 1)) for v in zs.level(r))


@lru_cache(maxsize=None)
def _pieri_factors_weighted(family, n, r):
    top = pieri_factors(family, n).max_length
    if r > top:
        return ()
    scale = Fraction(1, 2) if family in ("B", "D") and r >= n else Fraction(1)
    return tuple((v, c * scale) for v, c in pieri_element(family, n, r).items())


def _counters(g):
    cache = getattr(g, "_assf_counters", None)
    if cache is None:
        cd = g.cartan
        fam, n = cd.family, cd.n
        cache = (_counter(g, lambda r: _stat_factors(fam, n, r)),
                 _counter(g, lambda r: _pieri_factors_weighted(fam, n, r)))
        g._assf_counters = cache
    return cache


def _resolve(w, family, n):
    if family is not None:
        family = family.upper()
        cd = w.group.cartan
        if (cd.family, cd.n) != (family, n):
            raise ValueError(f"element of {cd.family}{cd.n} used as type {family}{n}")
    cd = w.group.cartan
    return cd.family, cd.n


def _second_composition(lam):
    """A composition rearranging lam that differs from it, if one exists."""
    rev = tuple(reversed(lam))
    return rev if rev != lam else None


def _from_counts(w, count, check_symmetry):
    top = pieri_factors(w.group.cartan.family, w.group.cartan.n).max_length
    terms = {}
    for lam in partitions(w.length, top):
        c = count(w, lam)
        if check_symmetry:
            other = _second_composition(lam)
            if other is not None and count(w, other) != c:
                raise InconsistencyError(
                    f"factorization counts of {w!r} differ for {lam} and {other}")
        if c:
            terms[lam] = c
    return SymFunc(terms)


def assf(w, family=None, n=None, check_symmetry=True):
    """Affine Stanley symmetric function of w in the monomial basis."""
    family, n = _resolve(w, family, n)
    count = _counters(w.group)[0]
    return ASSF(w, family, n, _from_counts(w, count, check_symmetry))


def assf_via_kernel(w, family=None, n=None):
    """Coefficient of A_w in P_{lam_1} P_{lam_2} ... times 2^{-p_{>=n}(lam)} (types B, D)."""
    family, n = _resolve(w, family, n)
    count = _counters(w.group)[1]
    return ASSF(w, family, n, _from_counts(w, count, check_symmetry=False))


def triangularity(f, w):
    """True if every m_mu in f has mu <= lambda(w) lexicographically."""
    lam = partition_of(w).parts
    return all(mu <= lam for mu in f.value.terms)


# dual k-Schur functions ----------------------------------------------------------------

def grassmannian_level(family, n, d):
    return weyl_group(family, n).grassmannian_elements(d)[d]


def _pairing(lam, f, n):
    """[q'_lambda, f] for f an affine Stanley function (monomial basis)."""
    return 2 ** p_geq(lam, n) * f.coefficient(lam)


def duality_matrix(family, n, d):
    """Rows lambda (the q' index set), columns Grassmannian v of length d."""
    cols = grassmannian_level(family, n, d)
    rows = gamma_partitions(family, n, d)
    values = {v: assf(v).value for v in cols}
    return rows, cols, {(lam, v): _pairing(lam, values[v], n) for lam in rows for v in cols}


class UndefinedDualError(ValueError):
    """The dual basis element does not exist in this degree."""


@lru_cache(maxsize=None)
def _dual_level(family, n, d):
    """Map Grassmannian w of length d -> q' coefficients of its dual.

    In type D swap partners share one affine Stanley function, so one
    representative per class is kept.  Duals exist only in degrees where
    the classes are linearly independent and as many as the q' index set.
    """
    rows, cols, M = duality_matrix(family, n, d)
    reps = cols
    if family == "D":
        values = {v: assf(v).value for v in cols}
        reps = []
        for v in cols:
            if not any(values[u] == values[v] for u in reps):
                reps.append(v)
        independent = rank({lam: M[(lam, v)] for lam in rows if M[(lam, v)]} for v in reps)
        if independent != len(reps) or len(reps) != len(rows):
            raise UndefinedDualError(
                f"type D degree {d}: {len(reps)} classes of rank {independent} "
                f"against {len(rows)} basis elements; the dual basis is undefined")
    if len(reps) != len(rows):
        raise InconsistencyError(
            f"duality matrix in degree {d} is {len(rows)} x {len(reps)}")
    out = {}
    for w in reps:
        equations = [({lam: M[(lam, v)] for lam in rows}, 1 if v == w else 0) for v in reps]
        out[w] = solve_linear(equations, rows)
    for v in cols:
        if v not in out:
            out[v] = out[next(u for u in reps if assf(u).value == assf(v).value)]
    return out


def kschur_dual(w, family=None, n=None):
    """Dual k-Schur function of a Grassmannian w, in q' and in Schur Q."""
    family, n = _resolve(w, family, n)
    if family not in ("B", "D"):
        raise ValueError("dual k-Schur functions are computed for types B and D")
    if not w.is_grassmannian():
        raise NotGrassmannianError(f"{w!r} is not 0-Grassmannian")
    coeffs = _dual_level(family, n, w.length)[w]
    coeffs = {lam: c for lam, c in coeffs.items() if c}
    qexp = SymFunc({lam: c * 2 ** p_geq(lam, n) for lam, c in coeffs.items()}, "q")
    value = expand_in_schurQ(qexp) if coeffs else SymFunc({(): 1} if w.length == 0 else {}, "Q")
    return KSchurSym(w, family, n, coeffs, value, conjectural=family == "D")


# positivity -------------------------------------------------------------------------

def _nonneg(f):
    return all(c >= 0 for c in f.terms.values())


def type_a_kschur_expansion(f, k):
    """Coefficients of f in the type A k-Schur basis (k-bounded f).

    Uses the Hall duality between k-Schur functions and the affine Stanley
    functions of Grassmannian elements of the affine type A group with k+1
    nodes: the coefficient on the element v is <f, F_v>.
    """
    f = f.to_m()
    out = {}
    for d in sorted(f.degrees()):
        part = SymFunc({lam: c for lam, c in f.terms.items() if sum(lam) == d})
        ech = Echelon()
        for lam in partitions(d, k):
            ech.add(dict(h_lambda_to_m(lam).terms), lam)
        hexp = ech.express(dict(part.terms))
        if hexp is None:
            raise ValueError(f"degree {d} part is not {k}-bounded")
        for v in grassmannian_level("A", k, d):
            fv = assf(v).value
            c = sum((a * fv.coefficient(lam) for lam, a in hexp.items()), Fraction(0))
            if c:
                out[tuple(v.canonical_word)] = c
    return out


@dataclass
class Report:
    name: str
    passed: bool = True
    rows: list = field(default_factory=list)

    def add(self, ok, **row):
        row["ok"] = bool(ok)
        self.rows.append(row)
        self.passed = self.passed and bool(ok)

    def to_json(self):
        return {"name": self.name, "passed": self.passed, "rows": self.rows}


def _fmt(f):
    return repr(f) if not isinstance(f, dict) else \
        " + ".join(f"{c}*{k}" for k, c in sorted(f.items())) or "0"


def positivity_schurP(n, max_len):
    """Schur P expansion of F_w for all w of B_n with length < n, up to max_len."""
    rep = Report("schurP")
    g = weyl_group("B", n)
    levels = g.elements_by_length(min(max_len, n - 1))
    for level in levels[1:]:
        for w in level:
            p = expand_in_schurP(assf(w).value)
            rep.add(_nonneg(p), w=list(w.canonical_word), expansion=_fmt(p))
    return rep


def positivity_schurQ(n, max_len):
    rep = Report("schurQ")
    for d in range(1, max_len + 1):
        for w in grassmannian_level("B", n, d):
            q = kschur_dual(w).value
            rep.add(_nonneg(q), w=list(w.canonical_word), expansion=_fmt(q))
    return rep


def positivity_rank_step(n, max_len):
    """Dual k-Schur functions of B_n in the dual k-Schur basis of B_{n+1}."""
    rep = Report("rank-step")
    for d in range(1, max_len + 1):
        big = {v: kschur_dual(v).q_expansion().to_m() for v in grassmannian_level("B", n + 1, d)}
        ech = Echelon()
        for v, f in big.items():
            ech.add(dict(f.terms), tuple(v.canonical_word))
        for w in grassmannian_level("B", n, d):
            f = kschur_dual(w).q_expansion().to_m()
            coeffs = ech.express(dict(f.terms))
            ok = coeffs is not None and all(c >= 0 for c in coeffs.values())
            rep.add(ok, w=list(w.canonical_word), expansion=_fmt(coeffs or {}))
    return rep


def positivity_type_a(n, max_len):
    """Dual k-Schur functions of B_n in the type A k-Schur basis, k = 2n."""
    rep = Report("type-A k-Schur")
    for d in range(1, max_len + 1):
        for w in grassmannian_level("B", n, d):
            f = kschur_dual(w).q_expansion().to_m()
            coeffs = type_a_kschur_expansion(f, 2 * n)
            rep.add(all(c >= 0 for c in coeffs.values()), w=list(w.canonical_word),
                    expansion=_fmt(coeffs))
    return rep


def positivity_checks(n, max_len, parts=("schurP", "schurQ", "rank-step", "type-A")):
    """Run the positivity checks; violations are reported, not raised."""
    runners = {
        "schurP": positivity_schurP, "schurQ": positivity_schurQ,
        "rank-step": positivity_rank_step, "type-A": positivity_type_a,
    }
    return [runners[p](n, max_len) for p in parts]


# type D ----------------------------------------------------------------------------

def swap_partners(w):
    """Grassmannian elements reached by swapping a nonempty subset of the
    occurrences of n-1 and n in the canonical word of w."""
    g = w.group
    n = g.cartan.n
    word = w.canonical_word
    spots = [k for k, i in enumerate(word) if i in (n - 1, n)]
    out = set()
    for size in range(1, len(spots) + 1):
        for chosen in combinations(spots, size):
            new = list(word)
            for k in chosen:
                new[k] = n if word[k] == n - 1 else n - 1
            u = g.from_word(new)
            if u.length == w.length and u != w and u.is_grassmannian():
                out.add(u)
    return sorted(out, key=lambda u: u.canonical_word)


def _monomials(gens, d):
    """Multisets of generator keys with degrees summing to d (gens: key -> degree)."""
    keys = sorted(gens)
    out = []

    def rec(start, remaining, prefix):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for k in range(start, len(keys)):
            if gens[keys[k]] <= remaining:
                rec(k, remaining - gens[keys[k]], prefix + [keys[k]])

    rec(0, d, [])
    return out


def quotient_dimensions(n, max_len):
    """Per degree: dim of the span of Pieri monomials in the type D algebra
    modulo the ideal generated by epsilon."""
    g = weyl_group("D", n)
    gens = {r: r for r in range(1, 2 * n - 1)}
    eps_key = 2 * n - 1  # epsilon sits after the Pieri generators
    gens[eps_key] = n - 1
    value = {r: pieri_element("D", n, r) for r in range(1, 2 * n - 1)}
    value[eps_key] = epsilon(n)
    memo = {(): NilCoxElement.one(g)}

    def product(mono):
        got = memo.get(mono)
        if got is None:
            got = product(mono[:-1]) * value[mono[-1]]
            memo[mono] = got
        return got

    dims = {}
    for d in range(1, max_len + 1):
        monos = _monomials(gens, d)
        vec = {m: {u: c for u, c in product(m).items()} for m in monos}
        whole = rank(vec.values())
        ideal = rank(v for m, v in vec.items() if eps_key in m)
        dims[d] = whole - ideal
    return dims


def typeD_checks(n, max_len):
    """Swap equality, independence, graded dimensions and the epsilon kernel."""
    reports = []
    swap = Report("swap-equality")
    indep = Report("independence")
    dims_rep = Report("graded-dimensions")
    span = Report("dual-span")
    for d in range(1, max_len + 1):
        level = grassmannian_level("D", n, d)
        values = {w: assf(w).value for w in level}
        classes = []
        for w in level:
            for u in swap_partners(w):
                swap.add(values[u] == values[w], w=list(w.canonical_word),
                         partner=list(u.canonical_word))
            if not any(values[w] == values[c] for c in classes):
                classes.append(w)
        r = rank(dict(values[c].terms) for c in classes)
        indep.add(r == len(classes), degree=d, classes=len(classes), rank=r)
        # every affine Stanley function lies in the dual span of the q' basis
        ech = Echelon()
        for lam, f in dual_q_basis("D", n, d).items():
            ech.add(dict(f.terms), lam)
        inside = all(ech.express(dict(values[c].terms)) is not None for c in classes)
        span.add(inside and len(classes) == len(gamma_partitions("D", n, d)),
                 degree=d, classes=len(classes))
    dims = quotient_dimensions(n, max_len)
    for d, dim in dims.items():
        expected = len(gamma_partitions("D", n, d))
        dims_rep.add(dim == expected, degree=d, quotient=dim, color_b=expected)
    kernel = Report("epsilon-kernel")
    eps = epsilon(n)
    total = SymFunc()
    for u, c in eps.items():
        total = total + assf(u).value.scale(c)
    kernel.add(total.is_zero(), image=repr(total))
    reports += [swap, indep, span, dims_rep, kernel]
    return reports


# homology Pieri rule against symmetric functions ------------------------------------------

def homology_pieri_symcheck(i, w, family=None, n=None, variant=None):
    """Compare xi_{rho_i} xi_w in the Schubert basis with the product of the
    dual k-Schur functions re-expanded by duality."""
    family, n = _resolve(w, family, n)
    g = w.group
    x = g.from_word(rho(family, n, i, variant))
    left = pieri_rho_element(family, n, i, variant)
    nil = homology_product(x, w, left=left)
    rep = Report("homology-pieri")
    if family != "B":
        rep.add(True, nilcoxeter={str(list(u.canonical_word)): str(c) for u, c in nil.items()})
        return rep
    prod = SymFunc(_q_product(kschur_dual(x).q_expansion(), kschur_dual(w).q_expansion()), "q")
    sym = {}
    for v in grassmannian_level(family, n, x.length + w.length):
        c = hl_pairing(prod, assf(v).value)
        if c:
            sym[v] = c
    ok = sym == nil
    rep.add(ok, nilcoxeter={str(list(u.canonical_word)): str(c) for u, c in nil.items()},
            symmetric={str(list(u.canonical_word)): str(c) for u, c in sym.items()})
    return rep


def _q_product(a, b):
    out = {}
    for la, ca in a.terms.items():
        for lb, cb in b.terms.items():
            lam = tuple(sorted(la + lb, reverse=True))
            out[lam] = out.get(lam, 0) + ca * cb
    return out
