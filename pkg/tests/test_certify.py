import copy
import json

import pytest

from conftest import W
from fqcert.certificate import (
    NonconjugacyCertificate,
    dumps,
    from_json,
    loads,
)
from fqcert.certify import certify_nonconjugate, certify_omnipotence, least_modulus
from fqcert.covers import rose
from fqcert.errors import ElementsConjugate, MalformedCertificate, NotIndependent, TrivialWord
from fqcert.verify import verify, verify_nonconjugate, verify_omnipotence


def test_generators_certificate():
    cert = certify_nonconjugate(W("a"), W("b"))
    assert cert.cover == rose(2)
    assert (cert.m, cert.n, cert.functional, cert.modulus, cert.mode) == (1, 1, (1, 0), 2, "strong")
    assert verify_nonconjugate(cert).accepted


def test_conjugate_inputs_raise_with_witness():
    with pytest.raises(ElementsConjugate) as info:
        certify_nonconjugate(W("ab"), W("ba"))
    assert info.value.conjugator == W("a")
    with pytest.raises(ElementsConjugate):
        certify_nonconjugate(W("a"), W("a"))
    with pytest.raises(TrivialWord):
        certify_nonconjugate(W("1"), W("a"))


def test_commutator_certificate():
    cert = certify_nonconjugate(W("abAB"), W("baBA"))
    assert cert.cover.degree > 1
    report = verify_nonconjugate(cert)
    assert report.accepted, report.failures()


def test_least_modulus():
    assert least_modulus(1, 1, [0]) == 2
    assert least_modulus(1, 1, [3, -1]) == 3
    assert least_modulus(2, 1, [1, 2]) == 2
    with pytest.raises(ValueError):
        least_modulus(1, 1, [1])


def test_canonical_json_is_stable():
    cert = certify_nonconjugate(W("aab"), W("abb"))
    text = dumps(cert)
    assert text == dumps(certify_nonconjugate(W("aab"), W("abb")))
    assert loads(text) == cert
    data = json.loads(text)
    assert list(data) == sorted(data)
    assert " " not in text.strip()


def test_bumped_modulus_is_rejected():
    cert = certify_nonconjugate(W("a"), W("b"))
    bad = NonconjugacyCertificate(**{**cert.__dict__, "modulus": 3})
    report = verify(bad)
    assert not report.accepted
    assert any("least admissible" in f for f in report.failures())


def test_broken_inequality_is_rejected():
    cert = certify_nonconjugate(W("abAB"), W("baBA"))
    data = cert.to_json()
    data["modulus"] = [1]
    report = verify(from_json(data))
    assert report.failures() == ["modulus is at least 2"]


def test_conjugate_claim_is_rejected():
    cert = certify_nonconjugate(W("aab"), W("abb"))
    data = cert.to_json()
    data["words"] = ["aab", "aba"]
    report = verify(from_json(data))
    assert any("oracle" in f for f in report.failures())


def test_hostile_cover_is_rejected_not_raised():
    data = certify_nonconjugate(W("a"), W("b")).to_json()
    for perms in ([[0, 0], [0, 1]], [[0, 1], [0, 1]], [[5], [0]]):
        d = copy.deepcopy(data)
        d["cover"] = {"rank": 2, "degree": len(perms[0]), "perms": perms}
        assert not verify(from_json(d)).accepted


@pytest.mark.parametrize(
    "text",
    ["", "{", "[]", '{"version": 1}', json.dumps({"version": 1, "kind": "other"})],
)
def test_malformed_text(text):
    with pytest.raises(MalformedCertificate):
        loads(text)


def test_malformed_fields():
    good = certify_nonconjugate(W("a"), W("b")).to_json()
    for key, value in [("words", ["a", "q?"]), ("modulus", ["2"]), ("rank", True), ("functional", [1, 0])]:
        d = dict(good)
        d[key] = value
        with pytest.raises(MalformedCertificate):
            from_json(d)


def test_omnipotence_generators():
    cert = certify_omnipotence([W("a"), W("b")], [2, 3])
    assert cert.cover == rose(2)
    assert cert.ms == (1, 1) and cert.k_const == 1
    assert cert.functionals == ((1, 0), (0, 1))
    assert cert.moduli == (2, 3)
    report = verify_omnipotence(cert)
    assert report.accepted
    assert (report.orders["eta(a_0)"], report.orders["eta(a_1)"]) == (2, 3)


def test_omnipotence_single_element():
    cert = certify_omnipotence([W("a")], [5])
    report = verify(cert)
    assert report.accepted and report.orders["eta(a_0)"] == 5


def test_omnipotence_dependent():
    with pytest.raises(NotIndependent) as info:
        certify_omnipotence([W("a"), W("aa")], [1, 1])
    assert info.value.pair == (0, 1)


def test_omnipotence_tampering():
    cert = certify_omnipotence([W("abAB"), W("a")], [1, 2])
    assert verify(cert).accepted
    d = cert.to_json()
    d["modulus"][0] += 1
    failures = verify(from_json(d)).failures()
    assert any("order" in f for f in failures) and any("modulus 0" in f for f in failures)
    d = cert.to_json()
    d["functional"][0] = [x + y for x, y in zip(d["functional"][0], d["functional"][1])]
    failures = verify(from_json(d)).failures()
    assert any("d = 0" in f for f in failures)
