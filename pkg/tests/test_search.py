import pytest

from conftest import W
from fqcert.covers import is_normal, rose
from fqcert.errors import NotIndependent, SearchExhausted, TrivialWord
from fqcert.homology import evaluate, homology_basis, loop_class, path_class
from fqcert.covers import degree_of, elevation_vertices
from fqcert.search import (
    WEAK,
    SearchConfig,
    independence_search,
    joint_search,
    primes_upto,
    residue_vectors,
)


def _check(res, a, bs, strong=True):
    c = res.cover
    assert is_normal(c)
    basis = homology_basis(c)
    assert res.m == degree_of(c, a)
    assert evaluate(res.functional, loop_class(basis, a**res.m)) == 1
    for b in bs:
        n = degree_of(c, b)
        for v in elevation_vertices(c, b):
            value = evaluate(res.functional, path_class(basis, v, b**n)[0])
            if strong:
                assert value == 0
            else:
                assert res.m * value != n


def test_rose_suffices_for_generators():
    res = independence_search(W("a"), [W("b")])
    assert res.cover == rose(2) and res.functional == (1, 0)
    _check(res, W("a"), [W("b")])


def test_commutator_needs_a_proper_cover():
    res = independence_search(W("abAB"), [W("a"), W("b")])
    assert res.cover.degree > 1
    _check(res, W("abAB"), [W("a"), W("b")])


def test_dependent_inputs():
    with pytest.raises(NotIndependent):
        independence_search(W("a"), [W("a")])
    with pytest.raises(TrivialWord):
        independence_search(W("1"), [W("a")])


def test_weak_mode_for_inverse_pair():
    res = independence_search(W("abAB"), [W("baBA")], modes=(WEAK,))
    _check(res, W("abAB"), [W("baBA")], strong=False)


def test_caps_are_reported():
    cfg = SearchConfig(max_index=2, max_prime=2, max_rounds=1)
    with pytest.raises(SearchExhausted) as info:
        independence_search(W("abAB"), [W("a"), W("b")], cfg)
    assert "cap" in str(info.value) or info.value.obstruction is not None


def test_joint_search_shares_one_cover():
    els = [W("abAB"), W("a")]
    results = joint_search(els)
    assert len({r.cover for r in results}) == 1
    for i, r in enumerate(results):
        _check(r, els[i], els[:i] + els[i + 1 :])


def test_search_is_deterministic():
    a, bs = W("aabAB"), [W("ab")]
    assert independence_search(a, bs) == independence_search(a, bs)


def test_parallel_search_agrees():
    a, bs = W("abAB"), [W("a"), W("b")]
    seq = independence_search(a, bs)
    par = independence_search(a, bs, SearchConfig(jobs=2))
    assert (seq.cover, seq.functional) == (par.cover, par.functional)


def test_helpers():
    assert primes_upto(13) == [2, 3, 5, 7, 11, 13]
    assert residue_vectors(2, 3) == [(0, 1), (1, 0), (1, 1), (1, 2)]
