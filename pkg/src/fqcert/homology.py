"""First homology of cover graphs and retraction functionals.

H_1 of a cover graph is free on its non-tree edges (relative to the BFS
spanning tree of :func:`covers.coset_reps`).  The class of a closed path has,
on each non-tree edge, the number of positive minus negative crossings.
A functional is an integer covector on that basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Sequence

from .covers import CoverGraph, Elevation, tree_edges
from .errors import AllZeroResidues, DimensionMismatch, NotPrime, VertexOutOfRange
from .intlin import dot, solve
from .words import Word

ClassVector = tuple[int, ...]
Functional = tuple[int, ...]

DEFAULT_WEAK_BOUND = 5


@dataclass(frozen=True)
class HomologyBasis:
    cover: CoverGraph
    tree_edges: frozenset[tuple[int, int]]
    basis_edges: tuple[tuple[int, int], ...]

    @property
    def betti(self) -> int:
        return len(self.basis_edges)

    @cached_property
    def edge_index(self) -> list[list[int]]:
        """edge_index[gen][v] is the basis position of edge (v, gen), or -1."""
        idx = [[-1] * self.cover.degree for _ in range(self.cover.rank)]
        for k, (v, i) in enumerate(self.basis_edges):
            idx[i][v] = k
        return idx


def homology_basis(c: CoverGraph) -> HomologyBasis:
    tree = tree_edges(c)
    edges = sorted((v, i) for v in range(c.degree) for i in range(c.rank) if (v, i) not in tree)
    return HomologyBasis(c, tree, tuple(edges))


def path_class(basis: HomologyBasis, v: int, w: Word) -> tuple[ClassVector, int]:
    """Signed crossing counts of the lift of w from v, and its end vertex."""
    c = basis.cover
    if not 0 <= v < c.degree:
        raise VertexOutOfRange(f"vertex {v} not in 0..{c.degree - 1}")
    idx = basis.edge_index
    vec = [0] * basis.betti
    for x in w.letters:
        if x > 0:
            k = idx[x - 1][v]
            if k >= 0:
                vec[k] += 1
            v = c.perms[x - 1][v]
        else:
            v = c.inverse_perms[-x - 1][v]
            k = idx[-x - 1][v]
            if k >= 0:
                vec[k] -= 1
    return tuple(vec), v


def homology_class(basis: HomologyBasis, e: Elevation) -> ClassVector:
    """Class of the closed lift of base^degree starting at the elevation's vertex."""
    vec, end = path_class(basis, e.vertex, e.base ** e.degree)
    if end != e.vertex:
        raise ValueError("elevation does not close up")
    return vec


def loop_class(basis: HomologyBasis, w: Word) -> ClassVector:
    """Class of a loop w in K, lifted at the basepoint."""
    vec, end = path_class(basis, 0, w)
    if end != 0:
        raise ValueError(f"{w} is not in the subgroup of the cover")
    return vec


def evaluate(phi: Sequence[int], x: Sequence[int]) -> int:
    if len(phi) != len(x):
        raise DimensionMismatch(f"functional has length {len(phi)}, class has {len(x)}")
    return dot(phi, x)


def _check_dims(target: Sequence[int], others: Sequence[Sequence[int]]) -> int:
    n = len(target)
    for k in others:
        if len(k) != n:
            raise DimensionMismatch(f"vector of length {len(k)} against {n}")
    return n


def _compress(target, kill):
    # drop coordinates that vanish everywhere and duplicate rows
    n = len(target)
    cols = [j for j in range(n) if target[j] or any(k[j] for k in kill)]
    rows = [tuple(target[j] for j in cols)]
    seen = set()
    for k in kill:
        r = tuple(k[j] for j in cols)
        if any(r) and r not in seen:
            seen.add(r)
            rows.append(r)
    return cols, rows


def _expand(cols, n, y):
    phi = [0] * n
    for j, v in zip(cols, y):
        phi[j] = v
    return tuple(phi)


def find_functional(target: Sequence[int], kill: Sequence[Sequence[int]]) -> Functional | None:
    """Integer φ with φ·target = 1 and φ·k = 0 for every k in kill, or None.

    >>> find_functional((1, 0), [(0, 1)])
    (1, 0)
    >>> find_functional((2, 0), []) is None
    True
    """
    n = _check_dims(target, kill)
    cols, rows = _compress(target, kill)
    if not cols:
        return None
    sol = solve(rows, [1] + [0] * (len(rows) - 1), len(cols))
    if sol is None:
        return None
    return _expand(cols, n, sol[0])


@dataclass(frozen=True)
class WeakConstraint:
    """Require ``m * φ(cls) != n``."""

    cls: ClassVector
    m: int
    n: int

    def holds(self, phi: Sequence[int]) -> bool:
        return self.m * dot(phi, self.cls) != self.n


def _generic_direction(kernel, bad):
    # combination of kernel generators with nonzero pairing against every row in bad
    if not bad:
        return kernel[0] if kernel else None
    if not kernel:
        return None
    pairings = [[dot(nu, y) for nu in kernel] for y in bad]
    if any(not any(p) for p in pairings):
        return None
    t = 2
    while True:
        coeffs = [t**j for j in range(len(kernel))]
        if all(dot(coeffs, p) for p in pairings):
            break
        t += 1
    n = len(kernel[0])
    return tuple(sum(c * nu[i] for c, nu in zip(coeffs, kernel)) for i in range(n))


def find_functional_weak(
    target: Sequence[int],
    constraints: Sequence[WeakConstraint | tuple],
    bound: int = DEFAULT_WEAK_BOUND,
) -> Functional | None:
    """Integer φ with φ·target = 1 and m·φ(cls) != n for each constraint.

    Tries the strong solution (all constraint classes killed) first.  Then
    it moves along a line ``φ0 + s·ν`` inside the affine lattice
    ``φ·target = 1``, where ν pairs nontrivially with every constraint class
    not proportional to the target.  Each such constraint rules out at most
    one value of s, so scanning |s| up to ``max(bound, len(constraints))``
    is exhaustive; constraints proportional to the target are decided
    outright.
    """
    cons = [c if isinstance(c, WeakConstraint) else WeakConstraint(*c) for c in constraints]
    n = _check_dims(target, [c.cls for c in cons])
    strong = find_functional(target, [c.cls for c in cons])
    if strong is not None:
        return strong
    # work on the coordinates some class actually uses; φ is zero elsewhere
    cols = [j for j in range(n) if target[j] or any(c.cls[j] for c in cons)]
    t = [target[j] for j in cols]
    cons = [WeakConstraint(tuple(c.cls[j] for j in cols), c.m, c.n) for c in cons]
    sol = solve([t], [1], len(cols))
    if sol is None:
        return None
    phi0, kernel = sol
    # a class y with ν·y = 0 for all kernel ν is a rational multiple of target;
    # its value on the affine lattice is then fixed
    moving = []
    for c in cons:
        if any(dot(nu, c.cls) for nu in kernel):
            moving.append(c)
        elif not c.holds(phi0):
            return None
    nu = _generic_direction(kernel, [c.cls for c in moving])
    if nu is None:
        return _expand(cols, n, phi0) if all(c.holds(phi0) for c in cons) else None
    limit = max(bound, len(moving) + 1)
    for s in _signed_range(limit):
        phi = tuple(p + s * v for p, v in zip(phi0, nu))
        if all(c.holds(phi) for c in moving):
            return _expand(cols, n, phi)
    return None


def _signed_range(limit: int):
    yield 0
    for s in range(1, limit + 1):
        yield s
        yield -s


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, int(p**0.5) + 1))


def cyclic_cover(rank: int, residues: Sequence[int], p: int) -> CoverGraph:
    """Degree-p cover of the kernel of w -> Σ residues·ab(w) mod p."""
    if not _is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if len(residues) != rank:
        raise DimensionMismatch(f"need {rank} residues, got {len(residues)}")
    if all(r % p == 0 for r in residues):
        raise AllZeroResidues("residue vector is zero mod p")
    return CoverGraph(rank, tuple(tuple((v + r) % p for v in range(p)) for r in residues))


def gcd_of(values) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g
