"""Independent checking of certificates.

Nothing here trusts the search or the pipelines: every fact is recomputed
from the words, the cover and the functionals using the word, cover,
homology and wreath primitives.  Hostile input is expected, so a failure is
recorded as a fact and never raised.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm

from .certificate import VERSION, Certificate, NonconjugacyCertificate, OmnipotenceCertificate
from .covers import degree_of, elevation_vertices, is_normal, validate
from .errors import FqcertError
from .homology import homology_basis, path_class
from .wreath import (
    ExtendedHom,
    FiniteQuotient,
    base_conjugate_test,
    eval_hom,
    wreath_order,
    wreath_power,
)
from .words import Word, dependent_pair, oracle_conjugate, to_text


@dataclass
class VerificationReport:
    facts: list[tuple[str, bool]] = field(default_factory=list)
    orders: dict[str, int] = field(default_factory=dict)

    @property
    def accepted(self) -> bool:
        return bool(self.facts) and all(ok for _, ok in self.facts)

    @property
    def verdict(self) -> str:
        return "accept" if self.accepted else "reject"

    def failures(self) -> list[str]:
        return [d for d, ok in self.facts if not ok]

    def check(self, description: str, ok: bool) -> bool:
        self.facts.append((description, bool(ok)))
        return bool(ok)

    def lines(self) -> list[str]:
        out = [f"[{'pass' if ok else 'FAIL'}] {d}" for d, ok in self.facts]
        out.extend(f"order {k} = {v}" for k, v in self.orders.items())
        out.append(f"verdict: {self.verdict}")
        return out


class _Stop(Exception):
    pass


def _require(report: VerificationReport, description: str, ok: bool) -> None:
    # later facts depend on this one; stop the run when it fails
    if not report.check(description, ok):
        raise _Stop


def _elevation_values(basis, functional, b: Word, n: int) -> list[int]:
    c = basis.cover
    bn = b**n
    out = []
    for v in elevation_vertices(c, b):
        vec, end = path_class(basis, v, bn)
        if end != v:
            raise _Stop
        out.append(sum(f * x for f, x in zip(functional, vec)))
    return out


def _cover_facts(report: VerificationReport, cert: Certificate, words) -> None:
    _require(report, "version is 1", cert.version == VERSION)
    _require(
        report,
        "words are nontrivial and of the declared rank",
        all(w.letters and w.rank == cert.rank for w in words),
    )
    try:
        validate(cert.cover)
        valid = True
    except FqcertError:
        valid = False
    _require(report, "cover is a connected cover of the rose", valid)
    _require(report, "cover is normal", is_normal(cert.cover))


def verify_nonconjugate(cert: NonconjugacyCertificate) -> VerificationReport:
    report = VerificationReport()
    try:
        _verify_nonconjugate(cert, report)
    except _Stop:
        pass
    except (FqcertError, ValueError, IndexError) as e:
        report.check(f"certificate data can be evaluated ({e})", False)
    return report


def _verify_nonconjugate(cert: NonconjugacyCertificate, report: VerificationReport) -> None:
    a, b = cert.a, cert.b
    _cover_facts(report, cert, [a, b])
    _require(report, f"{to_text(a)} and {to_text(b)} are not conjugate (cyclic-word oracle)", not oracle_conjugate(a, b))
    c = cert.cover
    m, n = degree_of(c, a), degree_of(c, b)
    report.check(f"m = degree of a in the cover = {m}", cert.m == m)
    report.check(f"n = degree of b in the cover = {n}", cert.n == n)
    basis = homology_basis(c)
    phi = cert.functional
    _require(report, f"functional length equals first Betti number {basis.betti}", len(phi) == basis.betti)
    N = cert.modulus
    _require(report, "modulus is at least 2", N >= 2)

    vec, end = path_class(basis, 0, a**m)
    report.check("functional is 1 on the basepoint class of a^m", end == 0 and sum(f * x for f, x in zip(phi, vec)) == 1)

    values = _elevation_values(basis, phi, b, n)
    used = set(j for j, x in enumerate(vec) if x)
    for u in elevation_vertices(c, b):
        used.update(j for j, x in enumerate(path_class(basis, u, b**n)[0]) if x)
    report.check(
        "functional vanishes off the coordinates used by a and the elevations of b",
        all(f == 0 for j, f in enumerate(phi) if j not in used),
    )
    bad = [v for v, x in zip(elevation_vertices(c, b), values) if (m * x - n) % N == 0]
    report.check(
        f"m·φ(x) != n mod {N} at every elevation of b" + (f" (fails at vertices {bad})" if bad else ""),
        not bad,
    )
    report.check(
        f"mode {cert.mode!r} matches the elevation values",
        cert.mode == ("strong" if not any(values) else "weak"),
    )
    gaps = [m * x - n for x in values]
    if all(gaps):
        # any k beyond the largest gap is admissible, so the scan is short
        least = next(k for k in range(2, max(map(abs, gaps)) + 2) if all(g % k for g in gaps))
        report.check(f"modulus {N} is the least admissible one ({least})", N == least)

    # the wreath-product consequence, computed directly
    h = ExtendedHom(FiniteQuotient(c), phi, N)
    ta, tb = eval_hom(h, a), eval_hom(h, b)
    report.orders["tau(a)"] = wreath_order(ta)
    report.orders["tau(b)"] = wreath_order(tb)
    xa, xb = wreath_power(ta, m * n), wreath_power(tb, m * n)
    _require(report, "tau(a^mn) and tau(b^mn) lie in the base", xa.is_base() and xb.is_base())
    report.check(
        "tau(a^mn) is not a translate of tau(b^mn)",
        not base_conjugate_test(xa, xb, FiniteQuotient(c).translations()),
    )


def verify_omnipotence(cert: OmnipotenceCertificate) -> VerificationReport:
    report = VerificationReport()
    try:
        _verify_omnipotence(cert, report)
    except _Stop:
        pass
    except (FqcertError, ValueError, IndexError) as e:
        report.check(f"certificate data can be evaluated ({e})", False)
    return report


def _verify_omnipotence(cert: OmnipotenceCertificate, report: VerificationReport) -> None:
    els = list(cert.elements)
    size = len(els)
    _cover_facts(report, cert, els)
    _require(report, "targets are positive", all(p >= 1 for p in cert.targets))
    _require(report, "mode is strong", cert.mode == "strong")
    pair = dependent_pair(els)
    _require(report, "elements are independent" + (f" (pair {pair} is not)" if pair else ""), pair is None)

    c = cert.cover
    ms = [degree_of(c, w) for w in els]
    _require(report, f"degrees of the elements in the cover are {ms}", list(cert.ms) == ms)
    basis = homology_basis(c)
    for i, phi in enumerate(cert.functionals):
        _require(report, f"functional {i} has length {basis.betti}", len(phi) == basis.betti)

    for i in range(size):
        others = 1
        for j in range(size):
            if j != i:
                others *= ms[j]
        report.check(f"modulus {i} = p_{i}·prod of the other degrees = {cert.targets[i] * others}", cert.moduli[i] == cert.targets[i] * others)
    _require(report, "moduli are positive", all(N >= 1 for N in cert.moduli))

    for i, phi in enumerate(cert.functionals):
        vec, end = path_class(basis, 0, els[i] ** ms[i])
        report.check(f"functional {i} is 1 on the basepoint class of element {i}", end == 0 and sum(f * x for f, x in zip(phi, vec)) == 1)
        used = set(k for k, x in enumerate(vec) if x)
        for j in range(size):
            if j != i:
                values = _elevation_values(basis, phi, els[j], ms[j])
                report.check(f"functional {i} vanishes on every elevation of element {j} (d = 0)", not any(values))
                for u in elevation_vertices(c, els[j]):
                    used.update(k for k, x in enumerate(path_class(basis, u, els[j] ** ms[j])[0]) if x)
        report.check(
            f"functional {i} vanishes off the coordinates used by the elements",
            all(f == 0 for k, f in enumerate(phi) if k not in used),
        )

    q = FiniteQuotient(c)
    homs = [ExtendedHom(q, phi, N) for phi, N in zip(cert.functionals, cert.moduli)]
    images = [[eval_hom(h, w) for w in els] for h in homs]
    for i in range(size):
        for j in range(size):
            o = wreath_order(images[i][j])
            report.orders[f"sigma_{i}(a_{j})"] = o
            want = cert.moduli[i] * ms[i] if i == j else ms[j]
            report.check(f"order of sigma_{i}(a_{j}) is {want}", o == want)
    k_const = 1
    for m in ms:
        k_const *= m
    for j in range(size):
        # the product of the sigma_i is a homomorphism to the direct product,
        # whose element orders are lcms of the component orders
        o = lcm(*(wreath_order(images[i][j]) for i in range(size)))
        report.orders[f"eta(a_{j})"] = o
        report.check(f"order of eta(a_{j}) is p_{j}·K = {cert.targets[j] * k_const}", o == cert.targets[j] * k_const)


def verify(cert: Certificate) -> VerificationReport:
    if isinstance(cert, NonconjugacyCertificate):
        return verify_nonconjugate(cert)
    return verify_omnipotence(cert)
