import pytest
from hypothesis import given, strategies as st

from affstanley.cartan import build_cartan
from affstanley.errors import NotGrassmannianError, WordError
from affstanley.weyl import (
    diagram_automorphisms, load_grassmannian, parse_word, read_grassmannian_cache,
    weyl_group, write_grassmannian_cache,
)

B3 = weyl_group("B", 3)
TYPES = [("A", 3), ("B", 3), ("C", 3), ("D", 4)]


def words(size, max_len=8):
    return st.lists(st.integers(0, size - 1), max_size=max_len)


def test_commuting_generators():
    assert B3.from_word([0, 1]) == B3.from_word([1, 0])


@pytest.mark.parametrize("i", range(4))
def test_involution(i):
    assert B3.from_word([i, i]) == B3.identity


def test_braid_order_three():
    assert B3.from_word([0, 2] * 3) == B3.identity
    assert B3.from_word([0, 2]) != B3.identity


def test_identity():
    assert B3.identity.length == 0
    assert B3.identity.canonical_word == ()


def test_rho_top_length():
    for n in (3, 4, 5):
        g = weyl_group("B", n)
        word = [0] + list(range(2, n + 1)) + list(range(n - 1, 1, -1)) + [0]
        assert g.from_word(word).length == 2 * n - 1


def test_canonical_word_commuting():
    assert B3.from_word([3, 0]).canonical_word == (0, 3)


def test_descents():
    assert B3.identity.right_descents() == frozenset()
    s0 = B3.simple(0)
    assert s0.right_descents() == s0.left_descents() == frozenset({0})
    assert B3.from_word([2, 0]).right_descents() == frozenset({0})


def test_lower_covers_and_bruhat():
    w = B3.from_word([2, 0])
    assert B3.lower_covers(w) == {B3.simple(2), B3.simple(0)}
    assert B3.bruhat_leq(B3.identity, w)
    assert not B3.bruhat_leq(B3.simple(1), B3.simple(0))


def test_cover_root():
    w = B3.from_word([2, 0])
    ref = B3.cover_root(B3.simple(0), w)
    assert ref.element == B3.from_word([0, 2, 0])
    assert ref.root.is_positive() and ref.root.delta_coeff == 1
    ref = B3.cover_root(B3.simple(2), w)
    assert ref.element == B3.simple(0)
    cd = B3.cartan
    assert ref.root == cd.root_from_vector((1, 0, 0, 0))
    ref = B3.cover_root(B3.identity, B3.simple(1))
    assert ref.root == cd.root_from_vector((0, 1, 0, 0))


def test_grassmannian_counts_b3():
    levels = B3.grassmannian_elements(5)
    assert [len(level) for level in levels] == [1, 1, 1, 2, 2, 3]
    assert {w.canonical_word for w in levels[3]} == {(1, 2, 0), (3, 2, 0)}
    assert weyl_group("D", 4).grassmannian_elements(0) == [[weyl_group("D", 4).identity]]


def test_translation_type_b():
    for n in (3, 4):
        g = weyl_group("B", n)
        body, tau = g.translation(g.cartan.coweight(1)).factor()
        assert body.canonical_word == g.from_word(
            [0] + list(range(2, n + 1)) + list(range(n - 1, 1, -1)) + [0]).canonical_word
        assert tau[0] == 1 and tau[1] == 0


def test_translation_type_a():
    for n in (2, 3, 4):
        g = weyl_group("A", n)
        body, _tau = g.translation(g.cartan.coweight(1)).factor()
        assert body == g.from_word([0] + list(range(n, 1, -1)))


def test_translation_zero():
    body, tau = B3.translation((0, 0, 0)).factor()
    assert body == B3.identity
    assert tau == (0, 1, 2, 3)


def test_diagram_automorphisms_d4():
    auts = diagram_automorphisms(build_cartan("D", 4))
    assert len(auts) == 24


def test_parse_word():
    assert parse_word("3 2 0") == (3, 2, 0)
    assert parse_word("3,2,0") == (3, 2, 0)
    assert parse_word("320") == (3, 2, 0)
    assert parse_word("") == ()
    with pytest.raises(WordError) as err:
        parse_word("3 x 0")
    assert err.value.position == 2
    with pytest.raises(WordError):
        parse_word("5", build_cartan("B", 3))


def test_require_grassmannian():
    with pytest.raises(NotGrassmannianError):
        B3.require_grassmannian(B3.simple(2))


def test_grassmannian_cache_roundtrip(tmp_path):
    path = write_grassmannian_cache(tmp_path, "B", 3, 5)
    family, n, top, levels = read_grassmannian_cache(path)
    assert (family, n, top) == ("B", 3, 5)
    assert [sorted(w.canonical_word for w in level) for level in levels] == \
        [sorted(w.canonical_word for w in level) for level in B3.grassmannian_elements(5)]
    assert load_grassmannian(tmp_path, "B", 3, 5) == levels


def test_reduced_words():
    w = B3.from_word([0, 2, 0])
    assert B3.reduced_words(w) == [(0, 2, 0), (2, 0, 2)]


@pytest.mark.parametrize("family,n", TYPES)
@given(data=st.data())
def test_canonical_word_reproduces(family, n, data):
    g = weyl_group(family, n)
    word = data.draw(words(n + 1))
    w = g.from_word(word)
    assert w.length <= len(word) and (len(word) - w.length) % 2 == 0
    assert g.is_reduced(w.canonical_word)
    assert g.from_word(w.canonical_word) == w
    assert len(w.canonical_word) == w.length
    assert g.multiply(w, w.inverse()) == g.identity


@pytest.mark.parametrize("family,n", TYPES)
@given(data=st.data())
def test_length_changes_by_one(family, n, data):
    g = weyl_group(family, n)
    w = g.from_word(data.draw(words(n + 1)))
    for i in range(n + 1):
        u = g.rmul(w, i)
        assert abs(u.length - w.length) == 1
        assert (u.length < w.length) == w.has_right_descent(i)


@pytest.mark.parametrize("family,n", [("B", 3), ("D", 4)])
@given(data=st.data())
def test_covers_are_below(family, n, data):
    g = weyl_group(family, n)
    w = g.from_word(data.draw(words(n + 1, 6)))
    for v in g.lower_covers(w):
        assert v.length == w.length - 1
        assert g.bruhat_leq(v, w)
        ref = g.cover_root(v, w)
        assert ref.root.is_positive()
        assert g.multiply(v, ref.element) == w


@given(words(4, 6))
def test_reduced_words_all_agree(word):
    w = B3.from_word(word)
    found = B3.reduced_words(w)
    assert w.canonical_word in found
    assert all(B3.from_word(x) == w and len(x) == w.length for x in found)


@given(words(4, 6), words(4, 6))
def test_strip_left(a, b):
    u, v = B3.from_word(a), B3.from_word(b)
    prod = B3.multiply(u, v)
    rest = prod.strip_left(u.canonical_word)
    if prod.length == u.length + v.length:
        assert rest == v
    else:
        assert rest is None
