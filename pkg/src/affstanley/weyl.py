"""
Affine Weyl group elements as exact integer matrices.

An element ``w`` is stored by the images ``w(alpha_0), ..., w(alpha_n)`` in the
affine root basis, together with the images under ``w^{-1}``.  The action on
the root lattice is faithful, so equality and hashing are O(1) in the word
length.  Right descents of ``w`` are the ``i`` with ``w(alpha_i)`` negative,
left descents the ``i`` with ``w^{-1}(alpha_i)`` negative.

The affine-map view ``x -> linear_part(x) + translation_part`` on the finite
real span is derived from the root action: ``w(alpha + k delta) =
u(alpha) + (k - (mu | u(alpha))) delta``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

from .cartan import AffineRoot, CartanData, build_cartan, _solve
from .errors import NotGrassmannianError, WordError

__all__ = [
    "WeylElement", "WeylGroup", "ExtendedElement", "Reflection",
    "weyl_group", "diagram_automorphisms",
    "write_grassmannian_cache", "read_grassmannian_cache",
]


def _neg(v):
    return any(x < 0 for x in v)


class WeylElement:
    __slots__ = ("group", "cols", "icols", "_word")

    def __init__(self, group, cols, icols, word=None):
        self.group = group
        self.cols = cols
        self.icols = icols
        self._word = word

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.cols == other.cols \
            and self.group is other.group

    def __hash__(self):
        return hash(self.cols)

    def __repr__(self):
        cd = self.group.cartan
        return f"WeylElement({cd.family}{cd.n}, {list(self.canonical_word)})"

    def __mul__(self, other):
        return self.group.multiply(self, other)

    # descents -----------------------------------------------------------

    def right_descents(self):
        return frozenset(i for i, c in enumerate(self.cols) if _neg(c))

    def left_descents(self):
        return frozenset(i for i, c in enumerate(self.icols) if _neg(c))

    def has_right_descent(self, i):
        return _neg(self.cols[i])

    def has_left_descent(self, i):
        return _neg(self.icols[i])

    def is_grassmannian(self):
        return self.right_descents() <= {0}

    # words ----------------------------------------------------------------

    @property
    def canonical_word(self):
        """Reduced word obtained by repeatedly stripping the smallest left descent."""
        if self._word is None:
            g = self.group
            word = []
            u = self
            while True:
                d = next((i for i, c in enumerate(u.icols) if _neg(c)), None)
                if d is None:
                    break
                word.append(d)
                u = g.lmul(d, u)
            self._word = tuple(word)
        return self._word

    @property
    def length(self):
        return len(self.canonical_word)

    def inverse(self):
        return WeylElement(self.group, self.icols, self.cols)

    def strip_left(self, word):
        """``s_{word}^{-1} * self`` if every letter peels off a left descent, else None."""
        g = self.group
        u = self
        for i in word:
            if not _neg(u.icols[i]):
                return None
            u = g.lmul(i, u)
        return u

    def strip_right(self, word):
        """``self * s_{word}^{-1}`` if the letters of ``word`` peel off as right
        descents (last letter first), else None."""
        g = self.group
        u = self
        for i in reversed(word):
            if not _neg(u.cols[i]):
                return None
            u = g.rmul(u, i)
        return u

    def support(self):
        return frozenset(self.canonical_word)

    # affine-map view ------------------------------------------------------

    @property
    def linear_part(self):
        cd = self.group.cartan
        roots = [cd.root_from_vector(self.cols[j]) for j in range(1, cd.n + 1)]
        return tuple(tuple(roots[j].finite_part[i] for j in range(cd.n))
                     for i in range(cd.n))

    @property
    def translation_part(self):
        cd = self.group.cartan
        images = [cd.root_from_vector(self.cols[j]) for j in range(1, cd.n + 1)]
        # (mu | u(alpha_j)) = -k_j
        matrix = [[sum(cd.gram[a + 1][b + 1] * images[j].finite_part[a]
                       for a in range(cd.n)) for b in range(cd.n)]
                  for j in range(cd.n)]
        rhs = [-r.delta_coeff for r in images]
        return tuple(_solve(matrix, rhs))

    def act_on_root(self, vec):
        """Image of an affine root vector (alpha-basis coordinates)."""
        return self.group.apply(self.cols, vec)


@dataclass(frozen=True)
class Reflection:
    element: WeylElement
    root: AffineRoot


class WeylGroup:
    """Arithmetic for one affine Weyl group; caches live on the instance."""

    def __init__(self, cartan: CartanData):
        self.cartan = cartan
        self.size = cartan.n + 1
        A = cartan.cartan_matrix
        self._rows = A
        size = self.size
        ident = tuple(tuple(1 if i == j else 0 for i in range(size)) for j in range(size))
        self.identity = WeylElement(self, ident, ident, ())
        self._simple = []
        for i in range(size):
            cols = tuple(self._reflect(i, ident[j]) for j in range(size))
            self._simple.append(WeylElement(self, cols, cols, (i,)))
        self._grass = {}

    # low-level linear algebra ----------------------------------------------

    def _reflect(self, i, v):
        c = sum(a * b for a, b in zip(self._rows[i], v))
        if not c:
            return v
        out = list(v)
        out[i] -= c
        return tuple(out)

    def apply(self, cols, v):
        size = self.size
        out = [0] * size
        for k in range(size):
            x = v[k]
            if x:
                col = cols[k]
                for r in range(size):
                    out[r] += x * col[r]
        return tuple(out)

    def _compose(self, a, b):
        return tuple(self.apply(a, col) for col in b)

    # group operations -----------------------------------------------------

    def _check(self, i):
        if not 0 <= i < self.size:
            raise WordError(f"node {i} outside 0..{self.size - 1}")

    def simple(self, i):
        self._check(i)
        return self._simple[i]

    def rmul(self, w, i):
        """w * s_i"""
        row = self._rows[i]
        cols = w.cols
        ci = cols[i]
        new = []
        for j, c in enumerate(cols):
            a = row[j]
            if j == i:
                new.append(tuple(-x for x in ci))
            elif a:
                new.append(tuple(x - a * y for x, y in zip(c, ci)))
            else:
                new.append(c)
        icols = tuple(self._reflect(i, c) for c in w.icols)
        return WeylElement(self, tuple(new), icols)

    def lmul(self, i, w):
        """s_i * w"""
        inv = self.rmul(w.inverse(), i)
        return WeylElement(self, inv.icols, inv.cols)

    def multiply(self, a, b):
        return WeylElement(self, self._compose(a.cols, b.cols), self._compose(b.icols, a.icols))

    def inverse(self, a):
        return a.inverse()

    def from_word(self, word):
        w = self.identity
        for i in word:
            self._check(i)
            w = self.rmul(w, i)
        return w

    def element(self, word):
        """Element for ``word``; the word need not be reduced."""
        return self.from_word(word)

    def is_reduced(self, word):
        w = self.identity
        for i in word:
            if w.has_right_descent(i):
                return False
            w = self.rmul(w, i)
        return True

    def reduced_words(self, w):
        """All reduced words of ``w``, sorted lexicographically."""
        memo = {}

        def rec(x):
            if x.length == 0:
                return [()]
            got = memo.get(x)
            if got is None:
                got = [(i,) + rest for i in sorted(x.left_descents())
                       for rest in rec(self.lmul(i, x))]
                memo[x] = got
            return got

        return sorted(rec(w))

    # Bruhat order -----------------------------------------------------------

    def bruhat_leq(self, v, w):
        """Subword criterion, unrolled along the canonical word of ``w``."""
        return self._bruhat(v, w)

    def _bruhat(self, v, w):
        lv, lw = v.length, w.length
        if lv > lw:
            return False
        if lv == lw:
            return v == w
        if lv == 0:
            return True
        s = w.canonical_word[0]
        sw = self.lmul(s, w)
        if v.has_left_descent(s):
            return self._bruhat(self.lmul(s, v), sw)
        return self._bruhat(v, sw)

    def lower_covers_with_roots(self, w):
        """Map each v covered by w to the positive root beta with w = v s_beta."""
        word = w.canonical_word
        k = len(word)
        prefixes = [self.identity]
        for i in word:
            prefixes.append(self.rmul(prefixes[-1], i))
        suffixes = [self.identity] * (k + 1)
        for j in range(k - 1, -1, -1):
            suffixes[j] = self.lmul(word[j], suffixes[j + 1])
        out = {}
        for j in range(k):
            v = self.multiply(prefixes[j], suffixes[j + 1])
            if v in out or v.length != k - 1:
                continue
            # beta = s_{i_k} ... s_{i_{j+1}} (alpha_{i_j})
            root = tuple(1 if t == word[j] else 0 for t in range(self.size))
            root = self.apply(suffixes[j + 1].icols, root)
            out[v] = root
        return out

    def lower_covers(self, w):
        return set(self.lower_covers_with_roots(w))

    def reflection_of_root(self, vec):
        """s_beta as an element, for a real root vector ``vec``."""
        cd = self.cartan
        norm = cd.form(vec, vec)
        size = self.size
        cols = []
        for j in range(size):
            coeff = 2 * cd.form(vec, tuple(1 if t == j else 0 for t in range(size))) / norm
            assert Fraction(coeff).denominator == 1
            coeff = int(coeff)
            cols.append(tuple((1 if t == j else 0) - coeff * vec[t] for t in range(size)))
        cols = tuple(cols)
        return WeylElement(self, cols, cols)

    def cover_root(self, v, w):
        """The reflection t = v^{-1} w and its positive root, for v covered by w."""
        covers = self.lower_covers_with_roots(w)
        if v not in covers:
            raise ValueError(f"{v!r} is not covered by {w!r}")
        vec = covers[v]
        t = self.multiply(v.inverse(), w)
        root = self.cartan.root_from_vector(vec)
        assert root.is_positive()
        assert self.reflection_of_root(vec) == t
        return Reflection(t, root)

    # enumeration ------------------------------------------------------------

    def elements_by_length(self, max_length):
        """All elements graded by length, each level sorted by canonical word."""
        levels = [[self.identity]]
        for _ in range(max_length):
            nxt = set()
            for w in levels[-1]:
                for i in range(self.size):
                    if not w.has_left_descent(i):
                        nxt.add(self.lmul(i, w))
            levels.append(sorted(nxt, key=lambda x: x.canonical_word))
        return levels

    def grassmannian_elements(self, max_length):
        levels = self._grass.get("levels")
        if levels is None:
            levels = [[self.identity]]
            self._grass["levels"] = levels
        while len(levels) <= max_length:
            nxt = set()
            for w in levels[-1]:
                for i in range(self.size):
                    if not w.has_left_descent(i):
                        u = self.lmul(i, w)
                        if u.is_grassmannian():
                            nxt.add(u)
            levels.append(sorted(nxt, key=lambda x: x.canonical_word))
        return [list(l) for l in levels[:max_length + 1]]

    def require_grassmannian(self, w):
        if not w.is_grassmannian():
            raise NotGrassmannianError(f"{w!r} is not 0-Grassmannian")

    # extended group -------------------------------------------------------

    def translation(self, mu):
        """t_mu for mu in the coweight lattice image, factored as tau * w."""
        cd = self.cartan
        mu = tuple(Fraction(x) for x in mu)
        theta = cd.theta
        size = self.size
        cols = []
        for j in range(size):
            finite = tuple(-t for t in theta) if j == 0 else \
                tuple(1 if t == j - 1 else 0 for t in range(cd.n))
            k = 1 if j == 0 else 0
            shift = cd.finite_form(mu, finite)
            if Fraction(shift).denominator != 1:
                raise ValueError(f"{mu} is not in the coweight lattice")
            root = AffineRoot(finite, k - int(shift))
            cols.append(cd.vector_from_root(root))
        return ExtendedElement(self, tuple(cols))

    def extended(self, tau, w):
        """The extended element w * tau for a diagram automorphism ``tau``."""
        size = self.size
        perm_cols = tuple(tuple(1 if r == tau[j] else 0 for r in range(size))
                          for j in range(size))
        return ExtendedElement(self, self._compose(w.cols, perm_cols))


class ExtendedElement:
    """Element of the extended affine Weyl group, stored by its root action."""

    __slots__ = ("group", "cols")

    def __init__(self, group, cols):
        self.group = group
        self.cols = cols

    def __eq__(self, other):
        return isinstance(other, ExtendedElement) and self.cols == other.cols

    def __hash__(self):
        return hash(self.cols)

    def __mul__(self, other):
        return ExtendedElement(self.group, self.group._compose(self.cols, other.cols))

    def factor(self):
        """Return ``(w, tau)`` with ``self = w * tau``.

        ``tau`` is a tuple with ``tau(alpha_j) = alpha_{tau[j]}``.  Descents are
        peeled off on the right; the length-zero residue sigma is moved to the
        right by relabelling, ``sigma * v = (sigma v sigma^{-1}) * sigma``.
        """
        g = self.group
        cols = list(self.cols)
        letters = []
        while True:
            i = next((j for j, c in enumerate(cols) if _neg(c)), None)
            if i is None:
                break
            letters.append(i)
            row = g._rows[i]
            ci = cols[i]
            cols = [tuple(-x for x in ci) if j == i else
                    (tuple(x - row[j] * y for x, y in zip(c, ci)) if row[j] else c)
                    for j, c in enumerate(cols)]
        tau = []
        for c in cols:
            nz = [r for r, x in enumerate(c) if x]
            if len(nz) != 1 or c[nz[0]] != 1:
                raise AssertionError("length-zero residue is not a node permutation")
            tau.append(nz[0])
        word = [tau[i] for i in reversed(letters)]
        body = g.from_word(word)
        assert body.length == len(letters)
        return body, tuple(tau)


@lru_cache(maxsize=None)
def weyl_group(family, n):
    return WeylGroup(build_cartan(family, n))


def diagram_automorphisms(cd):
    """All node permutations preserving the affine Cartan matrix."""
    A = cd.cartan_matrix
    size = cd.n + 1
    out = []

    def extend(partial):
        k = len(partial)
        if k == size:
            out.append(tuple(partial))
            return
        for t in range(size):
            if t in partial:
                continue
            if all(A[k][j] == A[t][partial[j]] and A[j][k] == A[partial[j]][t]
                   for j in range(k)):
                extend(partial + [t])

    extend([])
    return out


# on-disk cache of graded Grassmannian elements --------------------------------

CACHE_VERSION = 1


def _cache_path(directory, family, n, max_length):
    return Path(directory) / f"grassmannian-v{CACHE_VERSION}-{family}{n}-{max_length}.txt"


def write_grassmannian_cache(directory, family, n, max_length):
    g = weyl_group(family, n)
    path = _cache_path(directory, family, n, max_length)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [f"{family} {n} {max_length}"]
    for level in g.grassmannian_elements(max_length):
        for w in level:
            lines.append(" ".join(map(str, w.canonical_word)))
    path.write_text("\n".join(lines) + "\n")
    return path


def read_grassmannian_cache(path):
    """Parse a cache file into ``(family, n, max_length, levels)``."""
    text = Path(path).read_text().splitlines()
    family, n, max_length = text[0].split()
    n, max_length = int(n), int(max_length)
    g = weyl_group(family, n)
    levels = [[] for _ in range(max_length + 1)]
    for line in text[1:]:
        word = tuple(int(x) for x in line.split())
        w = g.from_word(word)
        if w.length != len(word):
            raise ValueError(f"cache entry {line!r} is not reduced")
        levels[len(word)].append(w)
    return family, n, max_length, levels


def load_grassmannian(directory, family, n, max_length):
    path = _cache_path(directory, family, n, max_length)
    if not path.exists():
        write_grassmannian_cache(directory, family, n, max_length)
    return read_grassmannian_cache(path)[3]


def parse_word(text, cd=None):
    """Parse ``"0 2 3"``, ``"0,2,3"`` or ``"023"`` (single-digit ranks only)."""
    text = text.strip()
    if not text:
        return ()
    if any(ch in text for ch in " ,"):
        tokens = [t for t in text.replace(",", " ").split()]
    else:
        tokens = list(text)
    out = []
    pos = 0
    for tok in tokens:
        pos = text.find(tok, pos)
        if not tok.isdigit():
            raise WordError(f"bad letter {tok!r}", pos)
        i = int(tok)
        if cd is not None and i > cd.n:
            raise WordError(f"node {i} outside 0..{cd.n}", pos)
        out.append(i)
        pos += len(tok)
    if cd is not None and cd.n > 9 and not any(ch in text for ch in " ,"):
        raise WordError("separators are required when n > 9", 0)
    return tuple(out)


def finite_orbit(cd, vec):
    """Orbit of a finite vector under the finite Weyl group."""
    start = tuple(Fraction(x) for x in vec)
    seen = {start}
    todo = [start]
    while todo:
        v = todo.pop()
        for i in range(1, cd.n + 1):
            u = cd.reflect_finite(i, v)
            if u not in seen:
                seen.add(u)
                todo.append(u)
    return sorted(seen)

