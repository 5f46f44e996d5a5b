"""Search for a normal cover carrying a retraction functional.

Given a target word a and a list of words bs, look for a normal cover K and
an integer functional φ on H_1(K) with φ(x_a) = 1, where x_a is the class of
the basepoint lift of a^m (m = deg_K a), and

* strong form: φ vanishes on every elevation class of every b;
* weak form: m·φ(x) != n_b for every elevation class x of b (n_b = deg_K b).

Candidates are tried in tiers of increasing cost:

0. the rose;
1. cyclic covers w -> Σ r_i·ab(w) mod p for primes p <= max_prime, residue
   vectors killing a's abelianised image first;
2. intersections of two small cyclic covers (abelian covers of degree p·q);
3. the regular closure of the Marshall Hall cover of a, then a chain of
   refinements: intersect with the regular closure of the Marshall Hall
   cover of an obstructing b, or with a cyclic cover, and re-normalise.

The first success in this order wins; within a tier candidates are ordered
by (degree, perms).  Caps are reported through :class:`SearchExhausted`.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .covers import (
    CoverGraph,
    degree_of,
    elevation_vertices,
    intersect,
    marshall_hall_cover,
    regular_closure,
    relabel_bfs,
    rose,
)
from .errors import ClosureTooLarge, NotIndependent, SearchExhausted, TrivialWord
from .homology import (
    ClassVector,
    Functional,
    WeakConstraint,
    cyclic_cover,
    find_functional,
    find_functional_weak,
    homology_basis,
    loop_class,
    path_class,
)
from .words import Word, abelianize, cyclic_reduce, dependent_pair

STRONG = "strong"
WEAK = "weak"


@dataclass(frozen=True)
class SearchConfig:
    max_index: int = 10_000
    max_prime: int = 13
    max_rounds: int = 50
    weak_bound: int = 5
    jobs: int = 1
    small_prime: int = 5  # largest prime used in tier-2 products


@dataclass(frozen=True)
class SearchResult:
    cover: CoverGraph
    functional: Functional
    m: int
    target: ClassVector
    mode: str
    source: str
    tried: int = 0


@dataclass
class Obstruction:
    source: str
    reason: str
    blocking: list[int] = field(default_factory=list)  # indices into bs

    def __str__(self):
        return f"{self.source}: {self.reason}"


def primes_upto(n: int) -> list[int]:
    return [p for p in range(2, n + 1) if all(p % q for q in range(2, int(p**0.5) + 1))]


def residue_vectors(rank: int, p: int) -> list[tuple[int, ...]]:
    """Nonzero vectors mod p up to scaling (first nonzero entry 1)."""
    out = []
    for v in itertools.product(range(p), repeat=rank):
        nz = [x for x in v if x]
        if nz and nz[0] == 1:
            out.append(v)
    return out


def _elevation_classes(basis, c: CoverGraph, b: Word) -> tuple[int, list[ClassVector]]:
    n = degree_of(c, b)
    bn = b**n
    classes = []
    for v in elevation_vertices(c, b):
        vec, end = path_class(basis, v, bn)
        assert end == v
        classes.append(vec)
    return n, classes


def evaluate_cover(
    c: CoverGraph, a: Word, bs: Sequence[Word], modes: Sequence[str], weak_bound: int = 5
) -> SearchResult | Obstruction:
    """Try to build the functional on one (normal) cover."""
    basis = homology_basis(c)
    m = degree_of(c, a)
    target = loop_class(basis, a**m)
    if not any(target):
        return Obstruction("", "target class vanishes in homology")
    per_b = [_elevation_classes(basis, c, b) for b in bs]
    for mode in modes:
        if mode == STRONG:
            kill = [x for _, classes in per_b for x in classes]
            phi = find_functional(target, kill)
        else:
            cons = [WeakConstraint(x, m, n) for n, classes in per_b for x in classes]
            phi = find_functional_weak(target, cons, weak_bound)
        if phi is not None:
            return SearchResult(c, phi, m, target, mode, "")
    blocking = []
    for j, (n, classes) in enumerate(per_b):
        if find_functional(target, classes) is None:
            blocking.append(j)
    return Obstruction("", f"no {'/'.join(modes)} functional", blocking)


@dataclass(frozen=True)
class _Single:
    a: Word
    bs: tuple[Word, ...]
    modes: tuple[str, ...]
    weak_bound: int

    def __call__(self, c: CoverGraph):
        return evaluate_cover(c, self.a, self.bs, self.modes, self.weak_bound)


@dataclass(frozen=True)
class _Joint:
    """Strong form for every element against all the others, on one cover."""

    elements: tuple[Word, ...]

    def __call__(self, c: CoverGraph):
        results = []
        for i, a in enumerate(self.elements):
            others = self.elements[:i] + self.elements[i + 1 :]
            res = evaluate_cover(c, a, others, (STRONG,))
            if isinstance(res, Obstruction):
                res.reason = f"element {i}: {res.reason}"
                res.blocking = [j if j < i else j + 1 for j in res.blocking]
                return res
            results.append(res)
        return results


def _evaluate_job(args):
    label, c, evaluate = args
    res = evaluate(c)
    if isinstance(res, Obstruction):
        res.source = label
        return label, res
    return label, res


def _closure(c: CoverGraph, cap: int) -> CoverGraph | None:
    try:
        return regular_closure(c, cap)
    except ClosureTooLarge:
        return None


def _mh_closure(w: Word, cap: int) -> CoverGraph | None:
    core = cyclic_reduce(w).as_word()
    if not core.letters:
        return None
    mh = marshall_hall_cover(core)
    if mh.degree > cap:
        return None
    return _closure(mh, cap)


class _Search:
    def __init__(self, evaluate, config: SearchConfig):
        self.evaluate = evaluate
        self.config = config
        self.seen: set[CoverGraph] = set()
        self.tried = 0
        self.last: Obstruction | None = None
        self.pool = ProcessPoolExecutor(config.jobs) if config.jobs > 1 else None

    def close(self):
        if self.pool is not None:
            self.pool.shutdown()

    def _fresh(self, batch):
        out = []
        for label, c in batch:
            if c is None or c.degree > self.config.max_index:
                continue
            key = relabel_bfs(c)
            if key in self.seen:
                continue
            self.seen.add(key)
            out.append((label, c))
        out.sort(key=lambda lc: (lc[1].degree, lc[1].perms))
        return out

    def run_batch(self, batch):
        """Evaluate fresh candidates in order; return (label, result) of the first success."""
        jobs = [(label, c, self.evaluate) for label, c in self._fresh(batch)]
        chunk = max(1, self.config.jobs)
        for start in range(0, len(jobs), chunk):
            part = jobs[start : start + chunk]
            if self.pool is not None and len(part) > 1:
                results = list(self.pool.map(_evaluate_job, part))
            else:
                results = [_evaluate_job(job) for job in part]
            for label, res in results:
                self.tried += 1
                if not isinstance(res, Obstruction):
                    return label, res
                self.last = res
        return None


def _cyclic_candidates(a: Word, primes: Sequence[int]) -> list[tuple[str, CoverGraph]]:
    ab = abelianize(a)
    out = []
    for p in primes:
        vecs = residue_vectors(a.rank, p)
        vecs.sort(key=lambda r: (sum(x * y for x, y in zip(r, ab)) % p != 0, r))
        out.extend((f"cyclic p={p} r={list(r)}", cyclic_cover(a.rank, r, p)) for r in vecs)
    return out


def independence_search(
    a: Word,
    bs: Sequence[Word],
    config: SearchConfig = SearchConfig(),
    modes: Sequence[str] = (STRONG,),
) -> SearchResult:
    """Find a normal cover and functional for target a against the words bs.

    ``modes`` lists the acceptable forms in order of preference; each
    candidate cover is tried in every mode before moving on.
    """
    if not a.letters or any(not b.letters for b in bs):
        raise TrivialWord("search inputs must be nontrivial")
    if WEAK not in modes:
        for j, b in enumerate(bs):
            if dependent_pair([a, b]) is not None:
                raise NotIndependent((0, 1 + j))
    search = _Search(_Single(a, tuple(bs), tuple(modes), config.weak_bound), config)
    try:
        label, res = _run(search, a, bs, config)
    finally:
        search.close()
    return SearchResult(res.cover, res.functional, res.m, res.target, res.mode, label, search.tried)


def joint_search(
    elements: Sequence[Word], config: SearchConfig = SearchConfig(), start: CoverGraph | None = None
) -> list[SearchResult]:
    """One normal cover on which every element has a strong functional against the rest."""
    if any(not a.letters for a in elements):
        raise TrivialWord("search inputs must be nontrivial")
    pair = dependent_pair(elements)
    if pair is not None:
        raise NotIndependent(pair)
    search = _Search(_Joint(tuple(elements)), config)
    try:
        if start is not None:
            found = search.run_batch([("shared", start)])
            if found:
                return found[1]
        label, res = _run(search, elements[0], elements[1:], config, seed=start)
    finally:
        search.close()
    return res


def _run(search: _Search, a: Word, bs: Sequence[Word], config: SearchConfig, seed=None):
    rank = a.rank
    primes = primes_upto(config.max_prime)
    cyclics = _cyclic_candidates(a, primes)
    small = [(l, c) for l, c in cyclics if c.degree <= config.small_prime]

    if seed is None:
        tiers = [
            [("rose", rose(rank))],
            cyclics,
            [
                (f"{l1} & {l2}", intersect(c1, c2))
                for (l1, c1), (l2, c2) in itertools.combinations(small, 2)
            ],
        ]
        for batch in tiers:
            found = search.run_batch(batch)
            if found:
                return found
        start = _mh_closure(a, config.max_index)
        if start is None:
            raise SearchExhausted(
                "regular closure of the Marshall Hall cover of the target exceeds the cap",
                search.last,
            )
        current, label = start, "closure(MH(a))"
        found = search.run_batch([(label, current)])
        if found:
            return found
    else:
        current, label = seed, "shared"

    b_closures: dict[int, CoverGraph | None] = {}
    for _ in range(config.max_rounds):
        blocking = search.last.blocking if search.last else []
        batch = []
        for j in blocking or range(len(bs)):
            if j not in b_closures:
                b_closures[j] = _mh_closure(bs[j], config.max_index)
            if b_closures[j] is not None:
                batch.append((f"{label} & closure(MH(b{j}))", _capped_intersect(current, b_closures[j], config)))
        for l, c in small:
            batch.append((f"{label} & {l}", _capped_intersect(current, c, config)))
        found = search.run_batch(batch)
        if found:
            return found
        grown = [(l, c) for l, c in batch if c is not None and c.degree > current.degree]
        if not grown:
            break
        label, current = min(grown, key=lambda lc: (lc[1].degree, lc[1].perms))
    raise SearchExhausted(f"no suitable cover after {search.tried} candidates", search.last)


def _capped_intersect(c1: CoverGraph, c2: CoverGraph, config: SearchConfig) -> CoverGraph | None:
    c = intersect(c1, c2)
    return c if c.degree <= config.max_index else None
