"""Wreath products (Z/N) wr Q and the extension of a functional to all of F.

Q is realised as the right-regular permutation group of a normal cover: the
group element carried by a word g acts on vertices by ``v -> act(v, g)``.
A :class:`WreathElement` is a pair (base, top) with base a function from
vertices to Z/N and top a vertex permutation.  Multiplication is

    (f1, p1) (f2, p2) = (v -> f1(v) + f2(p1(v)), p1 then p2)

which is the left-translation wreath product with the base re-indexed by
``q -> q^-1``.  Under that identification the extension of σ takes the value
``σ(reps[v] · g · reps[act(v, g)]^-1)`` at vertex v; for k in K this is
``σ(k^h)`` with ``h = reps[v]^-1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd, lcm
from typing import Iterable, Iterator, Sequence

from .covers import (
    CoverGraph,
    coset_reps,
    degree_of,
    elevation_vertices,
    is_normal,
    permutation_order,
    word_permutation,
)
from .errors import DimensionMismatch, NotNormal, RankMismatch, ShapeMismatch, TrivialWord
from .homology import HomologyBasis, gcd_of, homology_basis
from .words import Word


@dataclass(frozen=True)
class WreathElement:
    base: tuple[int, ...]
    top: tuple[int, ...]
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        if len(self.base) != len(self.top):
            raise ShapeMismatch("base and top have different sizes")
        object.__setattr__(self, "base", tuple(int(x) % self.modulus for x in self.base))
        object.__setattr__(self, "top", tuple(self.top))

    @property
    def size(self) -> int:
        return len(self.top)

    def is_base(self) -> bool:
        return all(v == u for u, v in enumerate(self.top))

    def __mul__(self, other: "WreathElement") -> "WreathElement":
        return wreath_multiply(self, other)


def wreath_identity(size: int, modulus: int) -> WreathElement:
    return WreathElement((0,) * size, tuple(range(size)), modulus)


def _check_shape(x: WreathElement, y: WreathElement) -> None:
    if x.modulus != y.modulus or x.size != y.size:
        raise ShapeMismatch(f"({x.size}, Z/{x.modulus}) vs ({y.size}, Z/{y.modulus})")


def wreath_multiply(x: WreathElement, y: WreathElement) -> WreathElement:
    _check_shape(x, y)
    N = x.modulus
    base = tuple((a + y.base[p]) % N for a, p in zip(x.base, x.top))
    top = tuple(y.top[p] for p in x.top)
    return WreathElement(base, top, N)


def wreath_inverse(x: WreathElement) -> WreathElement:
    inv = [0] * x.size
    for u, p in enumerate(x.top):
        inv[p] = u
    base = tuple(-x.base[inv[u]] % x.modulus for u in range(x.size))
    return WreathElement(base, tuple(inv), x.modulus)


def wreath_power(x: WreathElement, k: int) -> WreathElement:
    if k < 0:
        x, k = wreath_inverse(x), -k
    result = wreath_identity(x.size, x.modulus)
    while k:
        if k & 1:
            result = wreath_multiply(result, x)
        x = wreath_multiply(x, x)
        k >>= 1
    return result


def additive_order(values: Iterable[int], modulus: int) -> int:
    g = modulus
    for v in values:
        g = gcd(g, v % modulus)
    return modulus // g


def wreath_order(x: WreathElement) -> int:
    r = permutation_order(x.top)
    xr = wreath_power(x, r)
    assert xr.is_base()
    return r * additive_order(xr.base, x.modulus)


def base_conjugate_test(
    x: WreathElement, y: WreathElement, tops: Iterable[Sequence[int]]
) -> bool:
    """Whether base elements x, y are conjugate, given the elements of the top group.

    Conjugating a base element f by (g, p) gives f composed with p^-1; the
    base part g drops out because the base is abelian.
    """
    _check_shape(x, y)
    if not (x.is_base() and y.is_base()):
        raise ShapeMismatch("base_conjugate_test takes base elements only")
    fx, fy = x.base, y.base
    return any(all(fx[p[u]] == fy[u] for u in range(x.size)) for p in tops)


@dataclass(frozen=True)
class FiniteQuotient:
    """Q = F/K for a normal cover, with the vertex set standing in for Q."""

    cover: CoverGraph

    def __post_init__(self):
        if not is_normal(self.cover):
            raise NotNormal("a finite quotient needs a normal cover")

    @property
    def order(self) -> int:
        return self.cover.degree

    @cached_property
    def reps(self) -> tuple[Word, ...]:
        return coset_reps(self.cover)

    @property
    def top_perms(self) -> tuple[tuple[int, ...], ...]:
        return self.cover.perms

    def translations(self) -> Iterator[tuple[int, ...]]:
        """The right-regular permutation of every element of Q (one per vertex)."""
        c = self.cover
        yield tuple(range(c.degree))
        for w in self.reps[1:]:
            yield word_permutation(c, w)


@dataclass(frozen=True)
class ExtendedHom:
    quotient: FiniteQuotient
    functional: tuple[int, ...]
    modulus: int

    def __post_init__(self):
        object.__setattr__(self, "functional", tuple(int(x) for x in self.functional))
        if len(self.functional) != self.basis.betti:
            raise DimensionMismatch(
                f"functional has length {len(self.functional)}, homology has rank {self.basis.betti}"
            )

    @cached_property
    def basis(self) -> HomologyBasis:
        return homology_basis(self.quotient.cover)

    @cached_property
    def edge_weights(self) -> list[list[int]]:
        """weights[gen][v]: functional value of edge (v, gen); tree edges weigh 0."""
        c = self.quotient.cover
        w = [[0] * c.degree for _ in range(c.rank)]
        for k, (v, i) in enumerate(self.basis.basis_edges):
            w[i][v] = self.functional[k]
        return w

    def rho(self, v: int, g: Word) -> tuple[int, int]:
        """Integer functional value of the lift of g from v, and its end vertex."""
        c = self.quotient.cover
        wt = self.edge_weights
        total = 0
        for x in g.letters:
            if x > 0:
                total += wt[x - 1][v]
                v = c.perms[x - 1][v]
            else:
                v = c.inverse_perms[-x - 1][v]
                total -= wt[-x - 1][v]
        return total, v

    def sigma(self, k: Word) -> int:
        """σ(k) = ρ(k) mod N for k in K."""
        value, end = self.rho(0, k)
        if end != 0:
            raise ValueError(f"{k} is not in K")
        return value % self.modulus


def eval_hom(h: ExtendedHom, g: Word) -> WreathElement:
    c = h.quotient.cover
    if g.rank != c.rank:
        raise RankMismatch(f"word rank {g.rank} != cover rank {c.rank}")
    base = []
    top = []
    for v in range(c.degree):
        value, end = h.rho(v, g)
        base.append(value)
        top.append(end)
    return WreathElement(tuple(base), tuple(top), h.modulus)


def elevation_values(h: ExtendedHom, b: Word) -> list[int]:
    """Integer ρ-values of b^n at one vertex per centraliser orbit."""
    c = h.quotient.cover
    n = degree_of(c, b)
    bn = b**n
    out = []
    for v in elevation_vertices(c, b):
        value, end = h.rho(v, bn)
        assert end == v
        out.append(value)
    return out


def d_value(h: ExtendedHom, b: Word) -> int:
    """gcd of ρ over all conjugates of b^n, n = deg_K(b); 0 if they all vanish."""
    if not b.letters:
        raise TrivialWord("d_value needs a nontrivial word")
    return gcd_of(elevation_values(h, b))


def predicted_order(n: int, N: int, d: int) -> int:
    """n · lcm(N, d) / d, reading lcm(N, 0)/0 as 1."""
    if d == 0:
        return n
    return n * lcm(N, d) // d
