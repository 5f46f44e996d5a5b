"""Certificate records and their canonical JSON form.

Both kinds share one layout::

    {"cover": {...}, "functional": [[...]], "kind": ..., "m": [...],
     "mode": ..., "modulus": [...], "rank": r, "targets": [...],
     "version": 1, "words": [...]}

For a non-conjugacy certificate ``words`` is ``[a, b]``, ``m`` is
``[deg a, deg b]``, there is one functional and one modulus, and ``targets``
is empty.  For an omnipotence certificate there is one functional and
modulus per element and ``targets`` holds the requested multipliers.

Loading only checks shape.  Whether the numbers mean anything is the
verifier's business, so a loaded certificate may describe a bogus cover.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import prod

from .covers import CoverGraph
from .errors import MalformedCertificate
from .words import Word, parse, to_text

VERSION = 1
NONCONJUGACY = "nonconjugacy"
OMNIPOTENCE = "omnipotence"


@dataclass(frozen=True)
class NonconjugacyCertificate:
    rank: int
    a: Word
    b: Word
    cover: CoverGraph
    m: int
    n: int
    functional: tuple[int, ...]
    modulus: int
    mode: str
    version: int = VERSION

    def to_json(self) -> dict:
        return {
            "version": self.version,
            "kind": NONCONJUGACY,
            "rank": self.rank,
            "words": [to_text(self.a), to_text(self.b)],
            "cover": self.cover.to_json(),
            "m": [self.m, self.n],
            "functional": [list(self.functional)],
            "modulus": [self.modulus],
            "mode": self.mode,
            "targets": [],
        }


@dataclass(frozen=True)
class OmnipotenceCertificate:
    rank: int
    elements: tuple[Word, ...]
    targets: tuple[int, ...]
    cover: CoverGraph
    ms: tuple[int, ...]
    functionals: tuple[tuple[int, ...], ...]
    moduli: tuple[int, ...]
    mode: str = "strong"
    version: int = VERSION

    @property
    def k_const(self) -> int:
        return prod(self.ms)

    @property
    def orders(self) -> list[int]:
        """Orders the certificate claims for the images of the elements."""
        return [p * self.k_const for p in self.targets]

    def to_json(self) -> dict:
        return {
            "version": self.version,
            "kind": OMNIPOTENCE,
            "rank": self.rank,
            "words": [to_text(w) for w in self.elements],
            "cover": self.cover.to_json(),
            "m": list(self.ms),
            "functional": [list(f) for f in self.functionals],
            "modulus": list(self.moduli),
            "mode": self.mode,
            "targets": list(self.targets),
        }


Certificate = NonconjugacyCertificate | OmnipotenceCertificate


def dumps(cert: Certificate) -> str:
    """Canonical text: sorted keys, no spaces, trailing newline."""
    return json.dumps(cert.to_json(), sort_keys=True, separators=(",", ":")) + "\n"


def _int(x, what: str) -> int:
    # bool is an int subclass; JSON true/false is not a number here
    if not isinstance(x, int) or isinstance(x, bool):
        raise MalformedCertificate(f"{what} must be an integer")
    return x


def _int_list(x, what: str) -> tuple[int, ...]:
    if not isinstance(x, list):
        raise MalformedCertificate(f"{what} must be a list")
    return tuple(_int(v, what) for v in x)


def _str(x, what: str) -> str:
    if not isinstance(x, str):
        raise MalformedCertificate(f"{what} must be a string")
    return x


def from_json(data) -> Certificate:
    if not isinstance(data, dict):
        raise MalformedCertificate("certificate must be a JSON object")
    keys = {"version", "kind", "rank", "words", "cover", "m", "functional", "modulus", "mode", "targets"}
    missing = keys - data.keys()
    if missing:
        raise MalformedCertificate(f"missing fields: {sorted(missing)}")
    version = _int(data["version"], "version")
    kind = _str(data["kind"], "kind")
    rank = _int(data["rank"], "rank")
    if not 1 <= rank <= 26:
        raise MalformedCertificate("rank must be in 1..26")
    if not isinstance(data["words"], list):
        raise MalformedCertificate("words must be a list")
    try:
        words = tuple(parse(_str(w, "word"), rank) for w in data["words"])
    except (ValueError, IndexError) as e:
        raise MalformedCertificate(f"bad word: {e}") from e
    cover = _cover(data["cover"], rank)
    ms = _int_list(data["m"], "m")
    if not isinstance(data["functional"], list):
        raise MalformedCertificate("functional must be a list of lists")
    functionals = tuple(_int_list(f, "functional") for f in data["functional"])
    moduli = _int_list(data["modulus"], "modulus")
    mode = _str(data["mode"], "mode")
    targets = _int_list(data["targets"], "targets")

    if kind == NONCONJUGACY:
        if len(words) != 2 or len(ms) != 2 or len(functionals) != 1 or len(moduli) != 1:
            raise MalformedCertificate("non-conjugacy certificate needs two words, two degrees, one functional, one modulus")
        if targets:
            raise MalformedCertificate("non-conjugacy certificate has no targets")
        return NonconjugacyCertificate(
            rank, words[0], words[1], cover, ms[0], ms[1], functionals[0], moduli[0], mode, version
        )
    if kind == OMNIPOTENCE:
        size = len(words)
        if size == 0 or not (len(ms) == len(functionals) == len(moduli) == len(targets) == size):
            raise MalformedCertificate("omnipotence certificate needs one degree, functional, modulus and target per word")
        return OmnipotenceCertificate(rank, words, targets, cover, ms, functionals, moduli, mode, version)
    raise MalformedCertificate(f"unknown kind {kind!r}")


def _cover(data, rank: int) -> CoverGraph:
    if not isinstance(data, dict) or "perms" not in data or "rank" not in data:
        raise MalformedCertificate("cover must be an object with rank and perms")
    if _int(data["rank"], "cover rank") != rank:
        raise MalformedCertificate("cover rank differs from certificate rank")
    perms = data["perms"]
    if not isinstance(perms, list) or len(perms) != rank:
        raise MalformedCertificate(f"cover needs {rank} permutations")
    perms = [_int_list(p, "permutation") for p in perms]
    if "degree" in data and any(len(p) != _int(data["degree"], "degree") for p in perms):
        raise MalformedCertificate("declared degree disagrees with permutation length")
    return CoverGraph(rank, tuple(perms))


def loads(text: str) -> Certificate:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedCertificate(f"not valid JSON: {e}") from e
    return from_json(data)
