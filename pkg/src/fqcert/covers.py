"""Finite covers of the rose, stored as one vertex permutation per generator.

A cover of degree d has vertices ``0..d-1`` with basepoint 0.  ``perms[i][v]``
is the far end of the positively oriented edge labelled by generator ``i+1``
leaving ``v``.  Words act on vertices on the right by path lifting, so the
subgroup K of the cover is the stabiliser of the basepoint.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from math import lcm
from typing import Iterable, Sequence

from .errors import (
    ClosureTooLarge,
    NotAPermutation,
    NotConnected,
    NotCyclicallyReduced,
    NotNormal,
    RankMismatch,
    TrivialWord,
    VertexOutOfRange,
)
from .words import Word, invert, is_cyclically_reduced, primitive_root, reduce

DEFAULT_MAX_INDEX = 10_000


@dataclass(frozen=True)
class CoverGraph:
    rank: int
    perms: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "perms", tuple(tuple(int(x) for x in p) for p in self.perms))

    @property
    def degree(self) -> int:
        return len(self.perms[0]) if self.perms else 0

    @cached_property
    def inverse_perms(self) -> tuple[tuple[int, ...], ...]:
        out = []
        for p in self.perms:
            inv = [0] * len(p)
            for v, w in enumerate(p):
                inv[w] = v
            out.append(tuple(inv))
        return tuple(out)

    def step(self, v: int, x: int) -> int:
        if x > 0:
            return self.perms[x - 1][v]
        return self.inverse_perms[-x - 1][v]

    def to_json(self) -> dict:
        return {"rank": self.rank, "degree": self.degree, "perms": [list(p) for p in self.perms]}

    @classmethod
    def from_json(cls, data: dict) -> "CoverGraph":
        rank = int(data["rank"])
        perms = data["perms"]
        if len(perms) != rank:
            raise NotAPermutation(f"expected {rank} permutations, got {len(perms)}")
        if int(data.get("degree", len(perms[0]) if perms else 0)) != (len(perms[0]) if perms else 0):
            raise NotAPermutation("declared degree disagrees with permutation length")
        return cls(rank, tuple(tuple(p) for p in perms))

    @cached_property
    def _tree(self) -> tuple[tuple[Word, ...], frozenset[tuple[int, int]]]:
        return _bfs_tree(self)


def rose(rank: int) -> CoverGraph:
    return CoverGraph(rank, tuple((0,) for _ in range(rank)))


def validate(c: CoverGraph) -> None:
    """Raise unless every perm is a bijection and the action is transitive."""
    if c.rank < 1 or len(c.perms) != c.rank:
        raise NotAPermutation(f"need exactly {c.rank} permutations")
    d = c.degree
    if d < 1:
        raise NotAPermutation("degree must be positive")
    for i, p in enumerate(c.perms):
        if len(p) != d or sorted(p) != list(range(d)):
            raise NotAPermutation(f"perms[{i}] is not a permutation of 0..{d - 1}")
    seen = {0}
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for i in range(c.rank):
            for w in (c.perms[i][v], c.inverse_perms[i][v]):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    if len(seen) != d:
        raise NotConnected(f"basepoint orbit has size {len(seen)} < {d}")


def _check_rank(c: CoverGraph, w: Word) -> None:
    if c.rank != w.rank:
        raise RankMismatch(f"cover rank {c.rank} != word rank {w.rank}")


def act(c: CoverGraph, v: int, w: Word) -> int:
    """End vertex of the lift of w starting at v."""
    _check_rank(c, w)
    if not 0 <= v < c.degree:
        raise VertexOutOfRange(f"vertex {v} not in 0..{c.degree - 1}")
    for x in w.letters:
        v = c.step(v, x)
    return v


def word_permutation(c: CoverGraph, w: Word) -> tuple[int, ...]:
    """The vertex permutation v -> act(c, v, w)."""
    _check_rank(c, w)
    arr = list(range(c.degree))
    for x in w.letters:
        p = c.perms[x - 1] if x > 0 else c.inverse_perms[-x - 1]
        arr = [p[v] for v in arr]
    return tuple(arr)


def contains(c: CoverGraph, w: Word) -> bool:
    return act(c, 0, w) == 0


def cycle_length(c: CoverGraph, v: int, w: Word) -> int:
    n, u = 1, act(c, v, w)
    while u != v:
        u = act(c, u, w)
        n += 1
    return n


def degree_of(c: CoverGraph, w: Word) -> int:
    """Least n >= 1 with w^n in K."""
    return cycle_length(c, 0, w)


def _bfs_tree(c: CoverGraph):
    # explore in discovery order; generators ascending, positive before negative
    reps: list[tuple[int, ...] | None] = [None] * c.degree
    reps[0] = ()
    tree: set[tuple[int, int]] = set()
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for i in range(1, c.rank + 1):
            for x in (i, -i):
                u = c.step(v, x)
                if reps[u] is None:
                    reps[u] = reps[v] + (x,)
                    tree.add((v, i - 1) if x > 0 else (u, i - 1))
                    queue.append(u)
    if any(r is None for r in reps):
        raise NotConnected("cover is not connected")
    return tuple(Word(c.rank, r) for r in reps), frozenset(tree)


def coset_reps(c: CoverGraph) -> tuple[Word, ...]:
    """Spanning-tree path word from the basepoint to each vertex."""
    return c._tree[0]


def tree_edges(c: CoverGraph) -> frozenset[tuple[int, int]]:
    """Edges (vertex, 0-based generator) of the BFS spanning tree."""
    return c._tree[1]


def relabel_bfs(c: CoverGraph) -> CoverGraph:
    """Relabel vertices in BFS discovery order (a canonical form for based covers)."""
    order = [0]
    index = {0: 0}
    k = 0
    while k < len(order):
        v = order[k]
        k += 1
        for i in range(1, c.rank + 1):
            for x in (i, -i):
                u = c.step(v, x)
                if u not in index:
                    index[u] = len(order)
                    order.append(u)
    perms = tuple(tuple(index[p[v]] for v in order) for p in c.perms)
    return CoverGraph(c.rank, perms)


def _complete(partial: dict[int, int], d: int) -> tuple[int, ...]:
    sources = sorted(set(range(d)) - set(partial))
    targets = sorted(set(range(d)) - set(partial.values()))
    full = dict(partial)
    full.update(zip(sources, targets))
    return tuple(full[v] for v in range(d))


def marshall_hall_cover(w: Word) -> CoverGraph:
    """Cover in which the lift of w at the basepoint is an embedded cycle.

    Vertices 0..|w|-1 are laid out along w, then every generator's partial
    injection is completed by matching unmatched sources to unmatched
    targets in ascending order.
    """
    if not w.letters:
        raise TrivialWord("cannot build a cover for the trivial word")
    if not is_cyclically_reduced(w):
        raise NotCyclicallyReduced(f"{w} is not cyclically reduced")
    d = len(w)
    partial: list[dict[int, int]] = [{} for _ in range(w.rank)]
    for j, x in enumerate(w.letters):
        src, dst = (j, (j + 1) % d) if x > 0 else ((j + 1) % d, j)
        p = partial[abs(x) - 1]
        # cyclic reduction makes the layout an immersion
        assert p.get(src, dst) == dst
        p[src] = dst
    return CoverGraph(w.rank, tuple(_complete(p, d) for p in partial))


def intersect(c1: CoverGraph, c2: CoverGraph) -> CoverGraph:
    """Basepoint component of the fibre product: the cover of K1 ∩ K2."""
    if c1.rank != c2.rank:
        raise RankMismatch(f"rank {c1.rank} != {c2.rank}")
    index = {(0, 0): 0}
    order = [(0, 0)]
    k = 0
    while k < len(order):
        v1, v2 = order[k]
        k += 1
        for i in range(1, c1.rank + 1):
            for x in (i, -i):
                u = (c1.step(v1, x), c2.step(v2, x))
                if u not in index:
                    index[u] = len(order)
                    order.append(u)
    perms = tuple(
        tuple(index[(p1[v1], p2[v2])] for v1, v2 in order) for p1, p2 in zip(c1.perms, c2.perms)
    )
    return CoverGraph(c1.rank, perms)


def regular_closure(c: CoverGraph, max_index: int = DEFAULT_MAX_INDEX) -> CoverGraph:
    """Cover of the kernel of the action F -> Sym(d).

    Vertices are the elements of the permutation group generated by the
    perms, enumerated in BFS order from the identity; generator i sends g to
    g followed by perms[i].
    """
    d = c.degree
    ident = tuple(range(d))
    index = {ident: 0}
    order = [ident]
    k = 0
    while k < len(order):
        g = order[k]
        k += 1
        for i in range(1, c.rank + 1):
            for x in (i, -i):
                p = c.perms[x - 1] if x > 0 else c.inverse_perms[-x - 1]
                h = tuple(p[v] for v in g)
                if h not in index:
                    if len(order) >= max_index:
                        raise ClosureTooLarge(f"regular closure exceeds {max_index} vertices")
                    index[h] = len(order)
                    order.append(h)
    perms = tuple(tuple(index[tuple(p[v] for v in g)] for g in order) for p in c.perms)
    return CoverGraph(c.rank, perms)


def deck_map(c: CoverGraph, target: int) -> tuple[int, ...] | None:
    """The automorphism of the cover sending the basepoint to ``target``, if any."""
    reps = coset_reps(c)
    phi = [act(c, target, r) for r in reps]
    if len(set(phi)) != c.degree:
        return None
    for p in c.perms:
        for v in range(c.degree):
            if phi[p[v]] != p[phi[v]]:
                return None
    return tuple(phi)


def is_normal(c: CoverGraph) -> bool:
    """K is normal iff deck transformations reach every neighbour of the basepoint."""
    targets = {c.step(0, x) for i in range(1, c.rank + 1) for x in (i, -i)}
    return all(deck_map(c, t) is not None for t in sorted(targets))


def elevation_vertices(c: CoverGraph, b: Word) -> list[int]:
    """Least vertex of each orbit of the primitive root of b acting on vertices."""
    if not b.letters:
        raise TrivialWord("elevations of the trivial word are undefined")
    root, _ = primitive_root(b)
    perm = word_permutation(c, root)
    seen = [False] * c.degree
    out = []
    for v in range(c.degree):
        if not seen[v]:
            out.append(v)
            u = v
            while not seen[u]:
                seen[u] = True
                u = perm[u]
    return out


def double_coset_reps(c: CoverGraph, b: Word, check_normal: bool = True) -> list[Word]:
    """One coset representative per orbit of the centraliser of b on vertices.

    The elevation of b attached to a returned word g is the closed lift of
    b^n starting at ``act(c, 0, g)``; as a based loop this is g b^n g^-1.
    """
    if check_normal and not is_normal(c):
        raise NotNormal("double coset representatives need a normal cover")
    reps = coset_reps(c)
    return [reps[v] for v in elevation_vertices(c, b)]


@dataclass(frozen=True)
class Elevation:
    base: Word
    vertex: int
    degree: int
    rep_conjugator: Word

    def as_loop(self) -> Word:
        """The based loop rep · base^degree · rep^-1 in K."""
        r = self.rep_conjugator
        return reduce(r.letters + (self.base ** self.degree).letters + invert(r).letters, r.rank)


def elevation_at(c: CoverGraph, b: Word, v: int) -> Elevation:
    return Elevation(b, v, cycle_length(c, v, b), coset_reps(c)[v])


def elevations(c: CoverGraph, b: Word) -> list[Elevation]:
    """One elevation of b per orbit of its centraliser."""
    return [elevation_at(c, b, v) for v in elevation_vertices(c, b)]


def permutation_order(p: Sequence[int]) -> int:
    seen = [False] * len(p)
    order = 1
    for v in range(len(p)):
        if not seen[v]:
            n, u = 0, v
            while not seen[u]:
                seen[u] = True
                u = p[u]
                n += 1
            order = lcm(order, n)
    return order


def covers_equal(c1: CoverGraph, c2: CoverGraph) -> bool:
    """Same based cover up to relabelling of non-basepoint vertices."""
    return relabel_bfs(c1) == relabel_bfs(c2)


def intersect_all(covers: Iterable[CoverGraph]) -> CoverGraph:
    it = iter(covers)
    out = next(it)
    for c in it:
        out = intersect(out, c)
    return out
