"""Randomised property checks behind ``fqcert selftest``."""

from __future__ import annotations

import itertools
import random

from .certify import certify_nonconjugate
from .covers import CoverGraph, coset_reps, degree_of, regular_closure, validate
from .errors import ClosureTooLarge, ElementsConjugate, NotConnected
from .homology import find_functional, homology_basis
from .verify import verify
from .words import Word, conjugate, invert, oracle_conjugate, reduce
from .wreath import (
    ExtendedHom,
    FiniteQuotient,
    d_value,
    eval_hom,
    predicted_order,
    wreath_multiply,
    wreath_order,
)


def random_word(rng: random.Random, rank: int, max_len: int) -> Word:
    raw = [rng.choice([1, -1]) * rng.randint(1, rank) for _ in range(rng.randint(0, max_len))]
    return reduce(raw, rank)


def random_normal_cover(rng: random.Random, rank: int, max_index: int) -> CoverGraph:
    """Regular closure of a random connected cover, retried until it fits."""
    while True:
        d = rng.randint(1, 4)
        perms = []
        for _ in range(rank):
            p = list(range(d))
            rng.shuffle(p)
            perms.append(tuple(p))
        c = CoverGraph(rank, tuple(perms))
        try:
            validate(c)
            return regular_closure(c, max_index)
        except (NotConnected, ClosureTooLarge):
            continue


def random_functional(rng: random.Random, c: CoverGraph) -> tuple[int, ...]:
    return tuple(rng.randint(-3, 3) for _ in range(homology_basis(c).betti))


def check_homomorphism(rng: random.Random, trials: int) -> int:
    failures = 0
    covers = [random_normal_cover(rng, 2, 12) for _ in range(10)]
    for t in range(trials):
        c = covers[t % len(covers)]
        h = ExtendedHom(FiniteQuotient(c), random_functional(rng, c), rng.randint(2, 7))
        g, g2 = random_word(rng, 2, 8), random_word(rng, 2, 8)
        if eval_hom(h, g * g2) != wreath_multiply(eval_hom(h, g), eval_hom(h, g2)):
            failures += 1
        # an element of K, and its values at each vertex
        k = g ** degree_of(c, g) if g.letters else g
        img = eval_hom(h, k)
        reps = coset_reps(c)
        if not img.is_base():
            failures += 1
            continue
        for v in range(c.degree):
            if img.base[v] != h.sigma(conjugate(k, invert(reps[v]))):
                failures += 1
                break
    return failures


def check_order_formula(rng: random.Random, trials: int) -> int:
    failures = 0
    for _ in range(trials):
        a, b = random_word(rng, 2, 6), random_word(rng, 2, 6)
        if not a.letters or not b.letters:
            continue
        try:
            cert = certify_nonconjugate(a, b)
        except ElementsConjugate:
            continue
        h = ExtendedHom(FiniteQuotient(cert.cover), cert.functional, cert.modulus)
        for w in (a, b, random_word(rng, 2, 8)):
            if not w.letters:
                continue
            want = predicted_order(degree_of(cert.cover, w), cert.modulus, d_value(h, w))
            if wreath_order(eval_hom(h, w)) != want:
                failures += 1
    return failures


def check_certificates(rng: random.Random, trials: int) -> int:
    failures = 0
    for _ in range(trials):
        a, b = random_word(rng, 2, 6), random_word(rng, 2, 6)
        if not a.letters or not b.letters:
            continue
        try:
            cert = certify_nonconjugate(a, b)
        except ElementsConjugate:
            failures += not oracle_conjugate(a, b)
            continue
        failures += oracle_conjugate(a, b) or not verify(cert).accepted
    return failures


def check_solver(rng: random.Random, trials: int) -> int:
    failures = 0
    for _ in range(trials):
        n = rng.randint(1, 4)
        target = tuple(rng.randint(-2, 2) for _ in range(n))
        kill = [tuple(rng.randint(-2, 2) for _ in range(n)) for _ in range(rng.randint(0, n))]
        phi = find_functional(target, kill)
        brute = any(
            sum(p * t for p, t in zip(v, target)) == 1
            and all(sum(p * x for p, x in zip(v, k)) == 0 for k in kill)
            for v in itertools.product(range(-3, 4), repeat=n)
        )
        if phi is None:
            failures += brute
        else:
            ok = sum(p * t for p, t in zip(phi, target)) == 1 and all(
                sum(p * x for p, x in zip(phi, k)) == 0 for k in kill
            )
            failures += not ok
    return failures


CHECKS = [
    ("extension homomorphism law", check_homomorphism),
    ("order formula", check_order_formula),
    ("certify/verify agree with the oracle", check_certificates),
    ("integer solver", check_solver),
]


def run_selftest(seed: int, trials: int = 200) -> bool:
    print(f"seed {seed}")
    ok = True
    for name, check in CHECKS:
        failures = check(random.Random(f"{seed}:{name}"), trials)
        print(f"{'PASS' if not failures else 'FAIL'} {name}: {failures} failures in {trials} trials")
        ok = ok and not failures
    return ok
