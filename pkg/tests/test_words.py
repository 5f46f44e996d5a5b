import pytest
from hypothesis import given

from conftest import W, nontrivial_words, words
from fqcert.errors import IndexOutOfRange, RankMismatch, TrivialWord
from fqcert.words import (
    Word,
    all_reduced_words,
    are_independent,
    concat,
    conjugate,
    conjugator,
    cyclic_reduce,
    dependent_pair,
    invert,
    is_cyclically_reduced,
    oracle_conjugate,
    parse,
    power,
    primitive_root,
    reduce,
    to_text,
)


@pytest.mark.parametrize(
    "raw, expected",
    [([1, -1], ()), ([1, 2, -2, -1, 1], (1,)), ([1, 2, 1, -1, -2, 1], (1, 1))],
)
def test_reduce_examples(raw, expected):
    assert reduce(raw, 2).letters == expected


def test_reduce_rejects_out_of_range():
    with pytest.raises(IndexOutOfRange):
        reduce([3], 2)
    with pytest.raises(IndexOutOfRange):
        reduce([0], 2)


def test_word_must_be_reduced():
    with pytest.raises(ValueError):
        Word(2, (1, -1))


def test_algebra_examples():
    assert invert(Word(2, (1, 2))).letters == (-2, -1)
    assert power(Word(2, (1,)), 3).letters == (1, 1, 1)
    assert conjugate(Word(2, (1,)), Word(2, (2,))).letters == (-2, 1, 2)
    assert power(W("ab"), -2) == W("BABA")
    assert power(W("ab"), 0) == W("1")


def test_rank_mismatch():
    with pytest.raises(RankMismatch):
        concat(W("a", 1), W("a", 2))


def test_text_round_trip():
    assert to_text(W("abAB")) == "abAB"
    assert to_text(W("1")) == "1"
    assert W("aA") == W("1")
    with pytest.raises(ValueError):
        parse("a?", 2)


def test_cyclic_reduce_examples():
    cw = cyclic_reduce(Word(2, (-2, 1, 2)))
    assert cw.letters == (1,)
    # the witness satisfies conjugator^-1 · w · conjugator = cyclic form
    assert conjugate(Word(2, (-2, 1, 2)), cw.conjugator).letters == (1,)
    comm = Word(2, (1, 2, -1, -2))
    cw = cyclic_reduce(comm)
    rotations = [comm.letters[i:] + comm.letters[:i] for i in range(4)]
    assert cw.letters == min(rotations)
    assert conjugate(comm, cw.conjugator).letters == cw.letters
    assert cyclic_reduce(W("1")).letters == ()


@pytest.mark.parametrize("u, v, expected", [("ab", "ba", True), ("abAB", "baBA", False), ("a", "A", False)])
def test_oracle_examples(u, v, expected):
    assert oracle_conjugate(W(u), W(v)) is expected


def test_conjugator_witness():
    assert conjugator(W("ab"), W("ba")) == W("a")
    assert conjugator(W("abAB"), W("baBA")) is None


@pytest.mark.parametrize("w, root, e", [("aa", "a", 2), ("abab", "ab", 2), ("abAB", "abAB", 1), ("baaB", "baB", 2)])
def test_primitive_root_examples(w, root, e):
    assert primitive_root(W(w)) == (W(root), e)


def test_primitive_root_trivial():
    with pytest.raises(TrivialWord):
        primitive_root(W("1"))


def test_independence_examples():
    assert are_independent([W("a"), W("b")])
    assert dependent_pair([W("a"), W("A")]) == (0, 1)
    assert not are_independent([W("abAB"), conjugate(W("abAB"), W("B"))])
    assert not are_independent([W("a"), W("aa")])
    with pytest.raises(TrivialWord):
        are_independent([W("a"), W("1")])


def test_all_reduced_words_counts():
    # 4·3^(n-1) reduced words of length n in rank 2
    assert [len(all_reduced_words(2, n)) for n in range(4)] == [1, 4, 12, 36]


@given(words(max_len=12))
def test_reduce_idempotent(w):
    assert reduce(w.letters, 2) == w


@given(words(), words(), words())
def test_group_laws(u, v, x):
    assert (u * v) * x == u * (v * x)
    assert u * ~u == W("1")
    assert ~(u * v) == ~v * ~u
    assert conjugate(u, v) == ~v * u * v


@given(words(), words())
def test_oracle_sees_conjugates(w, h):
    assert oracle_conjugate(w, conjugate(w, h))
    assert cyclic_reduce(conjugate(w, h)).letters == cyclic_reduce(w).letters


@given(words())
def test_cyclic_reduce_witness(w):
    cw = cyclic_reduce(w)
    assert conjugate(w, cw.conjugator) == cw.as_word()
    assert is_cyclically_reduced(cw.as_word())


@given(words(max_len=6), words(max_len=6))
def test_conjugator_is_a_witness(u, v):
    h = conjugator(u, v)
    assert (h is not None) == oracle_conjugate(u, v)
    if h is not None:
        assert conjugate(u, h) == v


@given(nontrivial_words(max_len=10))
def test_primitive_root_is_maximal(w):
    root, e = primitive_root(w)
    assert power(root, e) == w
    core = cyclic_reduce(root).letters
    for d in range(1, len(core)):
        if len(core) % d == 0:
            assert core[:d] * (len(core) // d) != core


@given(nontrivial_words(max_len=5), nontrivial_words(max_len=5))
def test_powers_are_dependent(w, h):
    assert not are_independent([w, conjugate(w * w, h)])


def test_oracle_is_equivalence_on_sample():
    sample = [w for n in range(4) for w in all_reduced_words(2, n)]
    for u in sample:
        assert oracle_conjugate(u, u)
        for v in sample:
            assert oracle_conjugate(u, v) == oracle_conjugate(v, u)
