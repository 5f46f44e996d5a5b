"""Words in a free group of rank at most 26.

Letters are signed generator indices: ``k`` is the k-th generator and ``-k``
its inverse, 1-based.  Text syntax uses ``a``..``z`` for generators and
``A``..``Z`` for their inverses; ``"1"`` is the empty word.

Conjugation follows the convention ``conjugate(w, h) = h^-1 w h``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import IndexOutOfRange, RankMismatch, TrivialWord

MAX_RANK = 26


@dataclass(frozen=True)
class Word:
    rank: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if not 1 <= self.rank <= MAX_RANK:
            raise IndexOutOfRange(f"rank must lie in [1, {MAX_RANK}], got {self.rank}")
        letters = tuple(self.letters)
        object.__setattr__(self, "letters", letters)
        for x in letters:
            if x == 0 or abs(x) > self.rank:
                raise IndexOutOfRange(f"letter {x} out of range for rank {self.rank}")
        for x, y in zip(letters, letters[1:]):
            if x == -y:
                raise ValueError(f"word {letters} is not freely reduced")

    @classmethod
    def parse(cls, text: str, rank: int) -> "Word":
        return parse(text, rank)

    def __len__(self):
        return len(self.letters)

    def __bool__(self):
        return bool(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __str__(self):
        return to_text(self)

    def __repr__(self):
        return f"Word({to_text(self)!r}, rank={self.rank})"

    def __mul__(self, other: "Word") -> "Word":
        return concat(self, other)

    def __invert__(self) -> "Word":
        return invert(self)

    def __pow__(self, k: int) -> "Word":
        return power(self, k)


def reduce(raw: Iterable[int], rank: int) -> Word:
    """Freely reduce a sequence of signed indices.

    >>> reduce([1, 2, 1, -1, -2, 1], 2).letters
    (1, 1)
    """
    stack: list[int] = []
    for x in raw:
        if x == 0 or abs(x) > rank:
            raise IndexOutOfRange(f"letter {x} out of range for rank {rank}")
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    return Word(rank, tuple(stack))


def identity(rank: int) -> Word:
    return Word(rank, ())


def generator(i: int, rank: int) -> Word:
    return Word(rank, (i,))


def parse(text: str, rank: int) -> Word:
    text = text.strip()
    if text == "1":
        return Word(rank, ())
    if not text or not text.isascii() or not text.isalpha():
        raise ValueError(f"invalid word syntax: {text!r}")
    raw = []
    for ch in text:
        if ch.islower():
            raw.append(ord(ch) - ord("a") + 1)
        else:
            raw.append(-(ord(ch) - ord("A") + 1))
    return reduce(raw, rank)


def to_text(w: Word) -> str:
    if not w.letters:
        return "1"
    return "".join(chr(ord("a") + x - 1) if x > 0 else chr(ord("A") - x - 1) for x in w.letters)


def _check_rank(*ws: Word) -> int:
    rank = ws[0].rank
    for w in ws[1:]:
        if w.rank != rank:
            raise RankMismatch(f"rank {w.rank} != {rank}")
    return rank


def invert(w: Word) -> Word:
    return Word(w.rank, tuple(-x for x in reversed(w.letters)))


def concat(u: Word, v: Word) -> Word:
    rank = _check_rank(u, v)
    a, b = u.letters, v.letters
    k = 0
    while k < min(len(a), len(b)) and a[len(a) - 1 - k] == -b[k]:
        k += 1
    return Word(rank, a[: len(a) - k] + b[k:])


def power(w: Word, k: int) -> Word:
    if k < 0:
        w, k = invert(w), -k
    result = identity(w.rank)
    base = w
    while k:
        if k & 1:
            result = concat(result, base)
        base = concat(base, base)
        k >>= 1
    return result


def conjugate(w: Word, h: Word) -> Word:
    """Return ``h^-1 w h``."""
    return concat(concat(invert(h), w), h)


@dataclass(frozen=True)
class CyclicWord:
    """Canonical cyclic form of a conjugacy class.

    ``conjugate(original, conjugator)`` equals ``Word(rank, letters)``.
    """

    rank: int
    letters: tuple[int, ...]
    conjugator: Word

    def as_word(self) -> Word:
        return Word(self.rank, self.letters)


def _strip(w: Word) -> tuple[tuple[int, ...], tuple[int, ...]]:
    # w = x core x^-1 with core cyclically reduced
    s = w.letters
    k = 0
    while len(s) - 2 * k >= 2 and s[k] == -s[len(s) - 1 - k]:
        k += 1
    return s[:k], s[k : len(s) - k]


def _least_rotation(core: tuple[int, ...]) -> int:
    best = 0
    for s in range(1, len(core)):
        if core[s:] + core[:s] < core[best:] + core[:best]:
            best = s
    return best


def cyclic_reduce(w: Word) -> CyclicWord:
    prefix, core = _strip(w)
    s = _least_rotation(core)
    conj = reduce(prefix + core[:s], w.rank)
    return CyclicWord(w.rank, core[s:] + core[:s], conj)


def is_cyclically_reduced(w: Word) -> bool:
    s = w.letters
    return len(s) < 2 or s[0] != -s[-1]


def oracle_conjugate(u: Word, v: Word) -> bool:
    _check_rank(u, v)
    return cyclic_reduce(u).letters == cyclic_reduce(v).letters


def conjugator(u: Word, v: Word) -> Word | None:
    """Return h with ``conjugate(u, h) == v``, or None if none exists.

    >>> str(conjugator(parse("ab", 2), parse("ba", 2)))
    'a'
    """
    rank = _check_rank(u, v)
    pu, cu = _strip(u)
    pv, cv = _strip(v)
    if len(cu) != len(cv):
        return None
    for s in range(max(len(cu), 1)):
        if cu[s:] + cu[:s] == cv:
            return reduce(pu + cu[:s] + tuple(-x for x in reversed(pv)), rank)
    return None


def primitive_root(w: Word) -> tuple[Word, int]:
    """Return ``(root, k)`` with ``w == root**k`` and k maximal."""
    if not w.letters:
        raise TrivialWord("the trivial word has no primitive root")
    prefix, core = _strip(w)
    n = len(core)
    for p in range(1, n + 1):
        if n % p == 0 and core[p:] + core[:p] == core:
            break
    inv_prefix = tuple(-x for x in reversed(prefix))
    return reduce(prefix + core[:p] + inv_prefix, w.rank), n // p


def dependent_pair(ws: Sequence[Word]) -> tuple[int, int] | None:
    """First pair (i, j), 0-based, such that some conjugate of ws[i] commutes with ws[j].

    In a free group this happens exactly when the primitive roots are
    conjugate up to inversion.
    """
    if ws:
        _check_rank(*ws)
    roots = []
    for w in ws:
        if not w.letters:
            raise TrivialWord("independence is only defined for nontrivial words")
        roots.append(cyclic_reduce(primitive_root(w)[0]).letters)
    inv_roots = [cyclic_reduce(invert(Word(ws[0].rank, r))).letters for r in roots]
    for i in range(len(ws)):
        for j in range(i + 1, len(ws)):
            if roots[i] == roots[j] or roots[i] == inv_roots[j]:
                return (i, j)
    return None


def are_independent(ws: Sequence[Word]) -> bool:
    return dependent_pair(ws) is None


def abelianize(w: Word) -> tuple[int, ...]:
    """Exponent-sum vector of w."""
    counts = [0] * w.rank
    for x in w.letters:
        counts[abs(x) - 1] += 1 if x > 0 else -1
    return tuple(counts)


def all_reduced_words(rank: int, length: int) -> list[Word]:
    """Every freely reduced word of exactly the given length."""
    letters = [i for k in range(1, rank + 1) for i in (k, -k)]
    out: list[tuple[int, ...]] = [()]
    for _ in range(length):
        out = [s + (x,) for s in out for x in letters if not s or s[-1] != -x]
    return [Word(rank, s) for s in out]
