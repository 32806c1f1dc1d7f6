"""
Pieri factors, support statistics, segments and affine partitions.

Pieri factors are built two ways: from explicit maximal reduced words, and
from the finite-Weyl orbit of nu(omega_1^vee) through the translation
factorization t_mu = w * tau.  Both produce the Bruhat order ideal generated
by the maximal elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .cartan import build_cartan
from .errors import InconsistencyError, NotGrassmannianError
from .weyl import diagram_automorphisms, finite_orbit, weyl_group

__all__ = [
    "PieriFactorSet", "SupportProfile", "AffinePartition", "Segment",
    "pieri_generators_words", "pieri_factors", "pieri_factors_typefree",
    "support_profile", "stat", "segments", "segment_factorization",
    "partition_of", "element_of", "bijection_B", "bijection_D",
    "affine_partitions", "rho", "rho_elements",
]


@dataclass(frozen=True)
class PieriFactorSet:
    family: str
    n: int
    graded: tuple  # graded[i] = sorted tuple of length-i Pieri factors
    generators: tuple

    def __contains__(self, w):
        return w.length < len(self.graded) and w in self._sets[w.length]

    @property
    def _sets(self):
        cache = self.__dict__.get("_set_cache")
        if cache is None:
            cache = [frozenset(level) for level in self.graded]
            object.__setattr__(self, "_set_cache", cache)
        return cache

    def level(self, i):
        return self.graded[i] if 0 <= i < len(self.graded) else ()

    def all(self):
        return [w for level in self.graded for w in level]

    def as_set(self):
        return frozenset(self.all())

    @property
    def max_length(self):
        return len(self.graded) - 1


# generators -------------------------------------------------------------------

def _rotations(word):
    return [word[k:] + word[:k] for k in range(len(word))]


def _adjacent(word, a, b):
    if a not in word or b not in word:
        return True
    pa = [k for k, x in enumerate(word) if x == a]
    pb = [k for k, x in enumerate(word) if x == b]
    return any(abs(i - j) == 1 for i in pa for j in pb)


def _cyclically_decreasing_maximal(n):
    size = n + 1
    words = []
    for omit in range(size):
        words.append(tuple((omit - 1 - k) % size for k in range(n)))
    return words


def pieri_generators_words(family, n):
    """Reduced words of the maximal Pieri factors of the given type."""
    family = family.upper()
    cd = build_cartan(family, n)
    g = weyl_group(family, n)
    if family == "A":
        words = _cyclically_decreasing_maximal(n)
    elif family == "B":
        mid = list(range(2, n + 1)) + list(range(n - 1, 1, -1))
        words = [tuple([0] + mid + [0]), tuple([1] + mid + [1])]
        base = tuple(list(range(2, n + 1)) + list(range(n - 1, 1, -1)) + [1, 0])
        words += [r for r in _rotations(base) if _adjacent(r, 0, 1)]
    elif family == "D":
        down = list(range(n - 2, 1, -1))
        up = list(range(2, n - 1))
        first = tuple([0] + up + [n, n - 1] + down + [0])
        second = tuple([0, 1] + up + [n, n - 1] + down)
        base = [first] + [r for r in _rotations(second)
                          if _adjacent(r, 0, 1) and _adjacent(r, n - 1, n)]
        words = []
        # the automorphisms present for every n; D4's extra triality is excluded
        generic = [t for t in diagram_automorphisms(cd)
                   if {t[0], t[1]} in ({0, 1}, {n - 1, n})]
        for tau in generic:
            words += [tuple(tau[i] for i in word) for word in base]
    elif family == "C":
        words = [w.canonical_word for w in _typefree_bodies(family, n)]
    else:  # pragma: no cover
        raise ValueError(family)
    out = []
    seen = set()
    for word in words:
        if not g.is_reduced(word):
            raise InconsistencyError(f"generator word {word} is not reduced")
        w = g.from_word(word)
        if w not in seen:
            seen.add(w)
            out.append(tuple(word))
    return out


def _ideal(family, n, generators):
    g = weyl_group(family, n)
    top = max((w.length for w in generators), default=0)
    levels = [set() for _ in range(top + 1)]
    for w in generators:
        levels[w.length].add(w)
    for k in range(top, 0, -1):
        for w in levels[k]:
            levels[k - 1].update(g.lower_covers(w))
    graded = tuple(tuple(sorted(level, key=lambda x: x.canonical_word)) for level in levels)
    gens = tuple(sorted(set(generators), key=lambda x: x.canonical_word))
    return PieriFactorSet(family, n, graded, gens)


@lru_cache(maxsize=None)
def pieri_factors(family, n):
    """Bruhat ideal generated by the explicit maximal words."""
    family = family.upper()
    g = weyl_group(family, n)
    gens = [g.from_word(w) for w in pieri_generators_words(family, n)]
    return _ideal(family, n, gens)


def _typefree_bodies(family, n):
    cd = build_cartan(family, n)
    g = weyl_group(family, n)
    bodies = []
    for mu in finite_orbit(cd, cd.coweight(1)):
        body, _tau = g.translation(mu).factor()
        bodies.append(body)
    return bodies


@lru_cache(maxsize=None)
def pieri_factors_typefree(family, n):
    """Bruhat ideal generated by the translation alcoves of the orbit of
    nu(omega_1^vee)."""
    family = family.upper()
    return _ideal(family, n, _typefree_bodies(family, n))


def conjugate_generators_C(n):
    """Maximal type C factors as length-preserving finite conjugates of
    s_1 ... s_n ... s_1 s_0."""
    g = weyl_group("C", n)
    word = list(range(1, n + 1)) + list(range(n - 1, 0, -1)) + [0]
    x = g.from_word(word)
    finite = {g.identity}
    todo = [g.identity]
    while todo:
        u = todo.pop()
        for i in range(1, n + 1):
            v = g.lmul(i, u)
            if v not in finite:
                finite.add(v)
                todo.append(v)
    return {u * x * u.inverse() for u in finite if (u * x * u.inverse()).length == x.length}


# supports ---------------------------------------------------------------------

@dataclass(frozen=True)
class SupportProfile:
    presupport: frozenset
    support: frozenset
    components: tuple  # maximal intervals of the support, as node tuples
    complement_components: tuple
    c: int
    cc: int


def _positions(family, n):
    if family == "B":
        return {i: (1 if i <= 1 else i) for i in range(n + 1)}
    if family == "D":
        return {i: (1 if i <= 1 else (n - 1 if i >= n - 1 else i)) for i in range(n + 1)}
    return {i: i for i in range(n + 1)}


def _runs(positions, universe, cyclic):
    """Maximal runs of consecutive members of ``positions`` within ``universe``."""
    ordered = sorted(universe)
    if not positions:
        return []
    if cyclic and set(positions) == set(universe):
        return [tuple(ordered)]
    runs = []
    current = []
    for p in ordered:
        if p in positions:
            current.append(p)
        elif current:
            runs.append(current)
            current = []
    if current:
        runs.append(current)
    if cyclic and len(runs) > 1 and ordered[0] in positions and ordered[-1] in positions:
        runs[0] = runs[-1] + runs[0]
        runs.pop()
    return [tuple(r) for r in runs]


def support_profile(w, family=None, n=None, word=None):
    """supp, Supp, the interval decompositions and the counts c(w), cc(w).

    ``word`` may be any reduced word of ``w``; the result does not depend on it.
    """
    cd = w.group.cartan
    family = family or cd.family
    n = n or cd.n
    letters = frozenset(word if word is not None else w.canonical_word)
    pos = _positions(family, n)
    universe = set(pos.values())
    cyclic = family == "A"
    occupied = {pos[i] for i in letters}
    supp_runs = _runs(occupied, universe, cyclic)
    comp_runs = _runs(universe - occupied, universe, cyclic)

    def nodes(run):
        return tuple(i for p in run for i in sorted(pos) if pos[i] == p)

    support = frozenset(i for i in pos if pos[i] in occupied)
    return SupportProfile(letters, support, tuple(nodes(r) for r in supp_runs),
                          tuple(nodes(r) for r in comp_runs),
                          len(supp_runs), len(comp_runs))


def stat(w, family=None):
    family = family or w.group.cartan.family
    if family == "A":
        return 1
    prof = support_profile(w)
    return prof.c if family == "C" else prof.cc


# rho elements -------------------------------------------------------------------

def rho(family, n, i, variant=None):
    """Reduced word of rho_i; in type D, ``variant`` 1 or 2 selects rho_{n-1}^{(1|2)}."""
    family = family.upper()
    if family == "B":
        if not 1 <= i <= 2 * n - 1:
            raise ValueError(f"rho index {i} outside 1..{2 * n - 1}")
        return segments_word(family, n, 0, i)
    if family == "D":
        if not 1 <= i <= 2 * n - 2:
            raise ValueError(f"rho index {i} outside 1..{2 * n - 2}")
        if i == n - 1:
            if variant not in (1, 2):
                raise ValueError("rho_{n-1} in type D needs variant 1 or 2")
            return tuple([n] + list(range(n - 2, 1, -1)) + [0]) if variant == 1 else \
                tuple([n - 1] + list(range(n - 2, 1, -1)) + [0])
        return segments_word(family, n, 0, i)
    # types A and C: the unique Grassmannian Pieri factor of length i
    zs = pieri_factors(family, n)
    grass = [w for w in zs.level(i) if w.is_grassmannian()]
    if len(grass) != 1:
        raise ValueError(f"no unique Grassmannian Pieri factor of length {i}")
    return grass[0].canonical_word


def rho_elements(family, n):
    """Map from index (or ``(n-1, variant)`` in type D) to rho elements."""
    g = weyl_group(family, n)
    top = pieri_factors(family, n).max_length
    out = {}
    for i in range(1, top + 1):
        if family == "D" and i == n - 1:
            out[(i, 1)] = g.from_word(rho(family, n, i, 1))
            out[(i, 2)] = g.from_word(rho(family, n, i, 2))
        else:
            out[i] = g.from_word(rho(family, n, i))
    return out


# segments ---------------------------------------------------------------------

@dataclass(frozen=True)
class Segment:
    kind: int  # 0 or 1
    length: int
    color: str | None
    word: tuple

    def element(self, family, n):
        return weyl_group(family, n).from_word(self.word)


def segments_word(family, n, kind, j, color=None):
    """Reduced word of the segment Sigma_kind^color(j)."""
    if family == "B":
        if not 1 <= j <= 2 * n - 1:
            raise ValueError(f"segment length {j} outside 1..{2 * n - 1}")
        if j <= n:
            word = list(range(j, 1, -1)) + [1]
        else:
            word = list(range(2 * n - j, n)) + [n] + list(range(n - 1, 1, -1)) + [1]
        swap = {0: 1, 1: 0}
    elif family == "D":
        if not 1 <= j <= 2 * n - 2:
            raise ValueError(f"segment length {j} outside 1..{2 * n - 2}")
        if j <= n - 2:
            word = list(range(j, 1, -1)) + [1]
        elif j == n - 1:
            if color not in ("b", "c"):
                raise ValueError("length n-1 segments need color 'b' or 'c'")
            word = [n - 1 if color == "b" else n] + list(range(n - 2, 1, -1)) + [1]
        else:
            word = list(range(2 * n - j - 1, n - 1)) + [n, n - 1] + \
                list(range(n - 2, 1, -1)) + [1]
        swap = {0: 1, 1: 0, n - 1: n, n: n - 1}
    else:
        raise ValueError("segments are defined for types B and D")
    if kind == 0:
        word = [swap.get(i, i) for i in word]
    return tuple(word)


def segments(family, n):
    family = family.upper()
    top = 2 * n - 1 if family == "B" else 2 * n - 2
    out = []
    for kind in (0, 1):
        for j in range(1, top + 1):
            colors = ("b", "c") if family == "D" and j == n - 1 else (None,)
            for color in colors:
                out.append(Segment(kind, j, color, segments_word(family, n, kind, j, color)))
    return out


def segment_factorization(w):
    """Length-decreasing factorization of a Grassmannian element into
    alternating 0- and 1-segments, listed right to left."""
    cd = w.group.cartan
    family, n = cd.family, cd.n
    if family not in ("B", "D"):
        raise ValueError("segment factorization is defined for types B and D")
    if not w.is_grassmannian():
        raise NotGrassmannianError(f"{w!r} is not 0-Grassmannian")
    by_kind = {0: {}, 1: {}}
    for seg in segments(family, n):
        by_kind[seg.kind].setdefault(seg.length, []).append(seg)
    out = []
    u = w
    kind = 0
    bound = 2 * n
    while u.length:
        found = None
        for j in range(min(bound, u.length), 0, -1):
            for seg in by_kind[kind].get(j, ()):
                rest = u.strip_right(seg.word)
                if rest is not None:
                    found = seg, rest
                    break
            if found:
                break
        if found is None:
            raise InconsistencyError(f"no segment factorization for {w!r}")
        seg, u = found
        out.append(seg)
        bound = seg.length
        kind = 1 - kind
    g = w.group
    prod = g.identity
    for seg in reversed(out):
        prod = g.multiply(prod, g.from_word(seg.word))
    if prod != w or sum(s.length for s in out) != w.length:
        raise InconsistencyError(f"segment factorization of {w!r} does not multiply back")
    return out


# affine partitions --------------------------------------------------------------

@dataclass(frozen=True)
class AffinePartition:
    parts: tuple
    color: str | None = None

    def __post_init__(self):
        if any(a < b for a, b in zip(self.parts, self.parts[1:])):
            raise ValueError(f"{self.parts} is not weakly decreasing")
        if any(p <= 0 for p in self.parts):
            raise ValueError("parts must be positive")

    @property
    def size(self):
        return sum(self.parts)

    def validate(self, family, n):
        family = family.upper()
        bound = 2 * n - 1 if family == "B" else 2 * n - 2
        # in type D the colored part n-1 may repeat (adjacent n-1 segments
        # of opposite kinds share a color)
        distinct_below = n if family == "B" else n - 1
        small = [p for p in self.parts if p < distinct_below]
        if self.parts and self.parts[0] > bound:
            raise ValueError(f"{self.parts}: parts must be <= {bound}")
        if len(small) != len(set(small)):
            raise ValueError(f"{self.parts}: parts smaller than {distinct_below} must be distinct")
        if family == "D" and self.color not in ("b", "c"):
            raise ValueError("type D partitions carry a color 'b' or 'c'")
        if family == "B" and self.color is not None:
            raise ValueError("type B partitions carry no color")
        return self


def partition_of(w):
    cd = w.group.cartan
    segs = segment_factorization(w)
    parts = tuple(s.length for s in segs)
    if cd.family == "B":
        return AffinePartition(parts)
    colors = [s.color for s in segs if s.color is not None]
    return AffinePartition(parts, colors[0] if colors else _default_color(w, segs))


def _default_color(w, segs):
    # without an (n-1)-segment both colorings name the same element; "b" is canonical
    return "b"


def element_of(lam, family, n):
    family = family.upper()
    lam.validate(family, n)
    g = weyl_group(family, n)
    prod = g.identity
    for idx in range(len(lam.parts) - 1, -1, -1):
        j = lam.parts[idx]
        kind = idx % 2
        color = lam.color if family == "D" and j == n - 1 else None
        prod = g.multiply(prod, g.from_word(segments_word(family, n, kind, j, color)))
    if prod.length != lam.size:
        raise InconsistencyError(f"segment product for {lam} is not length-additive")
    return prod


def affine_partitions(family, n, size, color=None):
    """Partitions of ``size`` labelling the Grassmannian elements of type B or D.

    In type D a partition with a part n-1 comes in both colors; any other
    partition names one element and is listed once, with color "b".
    """
    family = family.upper()
    bound = 2 * n - 1 if family == "B" else 2 * n - 2
    distinct_below = n if family == "B" else n - 1
    out = []

    def rec(remaining, maximum, prefix):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for p in range(min(remaining, maximum), 0, -1):
            if p < distinct_below and p in prefix:
                continue
            rec(remaining - p, p, prefix + [p])

    rec(size, bound, [])
    if family == "B":
        return [AffinePartition(p) for p in out]
    result = []
    for p in out:
        colors = ("b", "c") if n - 1 in p else ("b",)
        result += [AffinePartition(p, c) for c in colors if color in (None, c)]
    return result


def _split_even(parts, keep=()):
    out = []
    todo = list(parts)
    while todo:
        p = todo.pop()
        if p % 2 == 0 and p not in keep:
            todo += [p // 2, p // 2]
        else:
            out.append(p)
    return tuple(sorted(out, reverse=True))


def bijection_B(lam, n):
    """Affine type B partition -> odd partition with parts <= 2n-1."""
    lam.validate("B", n)
    return _split_even(lam.parts)


def bijection_D(lam, n):
    """Color b: split every even part; color c: keep parts equal to n-1."""
    lam.validate("D", n)
    return _split_even(lam.parts, keep=(n - 1,) if lam.color == "c" else ())
