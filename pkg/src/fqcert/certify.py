"""Pipelines that build non-conjugacy and omnipotence certificates."""

from __future__ import annotations

import logging
from itertools import count
from typing import Sequence

from .certificate import NonconjugacyCertificate, OmnipotenceCertificate
from .covers import degree_of, elevation_vertices, intersect_all, regular_closure
from .errors import ClosureTooLarge, ElementsConjugate, NotIndependent, RankMismatch, TrivialWord
from .homology import evaluate, homology_basis, path_class
from .search import STRONG, WEAK, SearchConfig, independence_search, joint_search
from .words import Word, are_independent, conjugator, dependent_pair

log = logging.getLogger(__name__)


def _check_inputs(words: Sequence[Word]) -> int:
    ranks = {w.rank for w in words}
    if len(ranks) != 1:
        raise RankMismatch(f"words of ranks {sorted(ranks)}")
    for w in words:
        if not w.letters:
            raise TrivialWord("certificates need nontrivial words")
    return ranks.pop()


def elevation_values(cover, functional, b: Word) -> tuple[int, list[int]]:
    """deg(b) and the functional on each elevation class of b."""
    basis = homology_basis(cover)
    n = degree_of(cover, b)
    bn = b**n
    return n, [evaluate(functional, path_class(basis, v, bn)[0]) for v in elevation_vertices(cover, b)]


def least_modulus(m: int, n: int, values: Sequence[int]) -> int:
    """Smallest N >= 2 with m·x != n (mod N) for every x in values."""
    gaps = [m * x - n for x in values]
    if any(g == 0 for g in gaps):
        raise ValueError("an elevation meets the target value exactly")
    return next(N for N in count(2) if all(g % N for g in gaps))


def certify_nonconjugate(
    a: Word, b: Word, config: SearchConfig = SearchConfig(), mode: str | None = None
) -> NonconjugacyCertificate:
    """Certify that a and b are not conjugate.

    ``mode`` restricts the functional to the strong or weak form; by default
    strong is preferred on each candidate cover and weak is the fallback.
    Dependent pairs (such as a word and its inverse) can only be handled in
    weak form.
    """
    rank = _check_inputs([a, b])
    h = conjugator(a, b)
    if h is not None:
        raise ElementsConjugate(h)
    if mode == STRONG:
        modes = (STRONG,)
    elif mode == WEAK:
        modes = (WEAK,)
    elif mode is None:
        modes = (STRONG, WEAK) if are_independent([a, b]) else (WEAK,)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    res = independence_search(a, [b], config, modes)
    log.info("found %s cover of degree %d after %d candidates", res.source, res.cover.degree, res.tried)
    n, values = elevation_values(res.cover, res.functional, b)
    return NonconjugacyCertificate(
        rank=rank,
        a=a,
        b=b,
        cover=res.cover,
        m=res.m,
        n=n,
        functional=tuple(res.functional),
        modulus=least_modulus(res.m, n, values),
        mode=STRONG if not any(values) else WEAK,
    )


def certify_omnipotence(
    elements: Sequence[Word], ps: Sequence[int], config: SearchConfig = SearchConfig()
) -> OmnipotenceCertificate:
    """Certify that the images of the elements can have orders p_i·K for one K.

    Each element gets its own strong search against the others.  The
    resulting covers are intersected and normalised, and every functional
    is recomputed on that shared cover; if one of them no longer exists the
    shared cover seeds a joint search.
    """
    elements = list(elements)
    if not elements:
        raise ValueError("need at least one element")
    if len(ps) != len(elements):
        raise ValueError(f"{len(elements)} elements but {len(ps)} targets")
    if any(p < 1 for p in ps):
        raise ValueError("targets must be positive")
    rank = _check_inputs(elements)
    pair = dependent_pair(elements)
    if pair is not None:
        raise NotIndependent(pair)

    own = []
    for i, a in enumerate(elements):
        own.append(independence_search(a, elements[:i] + elements[i + 1 :], config, (STRONG,)).cover)
    try:
        shared = regular_closure(intersect_all(own), config.max_index)
    except ClosureTooLarge:
        shared = None
    results = joint_search(elements, config, start=shared)
    cover = results[0].cover
    ms = tuple(r.m for r in results)
    moduli = []
    for i, p in enumerate(ps):
        others = 1
        for j, m in enumerate(ms):
            if j != i:
                others *= m
        moduli.append(p * others)
    return OmnipotenceCertificate(
        rank=rank,
        elements=tuple(elements),
        targets=tuple(ps),
        cover=cover,
        ms=ms,
        functionals=tuple(tuple(r.functional) for r in results),
        moduli=tuple(moduli),
    )
