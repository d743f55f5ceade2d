import json
import time

import pytest

from ringlock.fppoly import FpPoly
from ringlock.proofkit import Certificate, UnsupportedCertificate, verify_certificate
from ringlock.proofkit.bn import NoTermination, b_sequence, bn_certificate, make_enumeration
from ringlock.proofkit.commutator import commutator_certificate, intro_identity, three_ring_identity
from ringlock.proofkit.crt import crt_glue_certificate
from ringlock.proofkit.idempotent import (
    _fq_poly_mul,
    _linear_power,
    eg_system,
    idempotent_certificate,
)
from ringlock.proofkit.p2 import p2_trace, vandermonde, vandermonde_inverse
from ringlock.proofkit.render import RenderRefused, render_certificate
from ringlock.fppoly import FqElement
from ringlock.reduction import characteristic_certificate, reduction_certificate

P = FpPoly.parse


def roundtrip(rec):
    text = rec.to_certificate().to_json()
    report = verify_certificate(Certificate.from_json(text))
    assert report.ok, report.failure
    return json.loads(text)


# -- idempotent decompositions ----------------------------------------------------------


def test_pow5_coefficients():
    c = idempotent_certificate(5)
    assert [f.coeffs[0] for f in c.short_form] == [4, 3, 2, 1]
    roundtrip(c)


@pytest.mark.parametrize("q", [2, 3, 5, 7, 11, 13, 17, 19, 23])
def test_prime_fields(q):
    roundtrip(idempotent_certificate(q))


@pytest.mark.parametrize("p, modulus", [(2, "T^2+T+1"), (2, "T^3+T+1"), (3, "T^2+1"), (2, "T^4+T+1"),
                                        (5, "T^2+2"), (3, "T^3+2T+1")])
def test_extension_fields(p, modulus):
    c = idempotent_certificate(p, P(p, modulus))
    assert c.q == p ** P(p, modulus).degree
    roundtrip(c)


def test_binomial_power_matches_repeated_products():
    m = P(3, "T^2+1")
    one, zero = FqElement.of(m, 1), FqElement.of(m, 0)
    for u in [FqElement(m, P(3, "T+2")), FqElement.of(m, 2)]:
        power = [one]
        for _ in range(8):
            power = _fq_poly_mul(power, [-u, one], zero)
        assert power == _linear_power(u, 8, one)


def test_reducible_modulus_fails():
    d = idempotent_certificate(2, P(2, "T^2+T+1")).to_certificate().to_dict()
    d["payload"]["modulus"] = [1, 0, 1]
    assert not verify_certificate(d).ok


# -- e_g systems -----------------------------------------------------------------------


def test_eg_2_2():
    e = eg_system(2, 2)
    assert e.idempotent(P(2, "T")) == P(2, "T^3+1")
    assert e.idempotent(P(2, "T+1")) == P(2, "T^3+T^2+T")
    assert e.idempotent(P(2, "T^2+T+1")) == P(2, "T^2+T")
    roundtrip(e)


@pytest.mark.parametrize("p, k", [(3, 3), (2, 4), (5, 2), (2, 6)])
def test_eg_systems_verify(p, k):
    roundtrip(eg_system(p, k))


# -- b_n sequences ---------------------------------------------------------------------


@pytest.mark.parametrize("p, k, g, mode, m", [
    (2, 3, "T^3+T+1", "monomial", 3),
    (3, 3, "T^3+2T+1", "affine", 3),
    (3, 3, "T^3+T^2+2", "monomial", 3),
    (2, 4, "T^4+T+1", "monomial", 4),
    (2, 2, "T^2+T+1", "monomial", 2),
])
def test_bn_terminates(p, k, g, mode, m):
    t = time.time()
    rec = bn_certificate(p, k, P(p, g), mode)
    assert rec.m == m and rec.B[-1].is_zero()
    roundtrip(rec)
    assert time.time() - t < 5


def test_bn_obligations():
    rec = bn_certificate(2, 3, P(2, "T^3+T+1"))
    assert list(rec.obligations) == [P(2, "T^2"), P(2, "T^4")]


def test_bn_generalcase():
    rec = bn_certificate(2, 3, P(2, "T^3+T+1"), "generalcase")
    assert rec.m == 7
    roundtrip(rec)


def test_bn_custom_enumeration():
    g = P(2, "T^3+T+1")
    rec = bn_certificate(2, 3, g, [P(2, "T"), P(2, "T^2"), P(2, "T^4")])
    assert rec.mode == "custom"
    roundtrip(rec)
    with pytest.raises(ValueError):
        make_enumeration(2, 3, g, "custom", [P(2, "T^2")])


def test_bn_affine_fails_in_characteristic_2():
    with pytest.raises(NoTermination):
        bn_certificate(2, 3, P(2, "T^3+T+1"), "affine")


def test_bn_sequence_oracle():
    # B_n over GF(2)[X,Y]/(g(X), g(Y)) equals prod (Y - X^(2^i)), checked by evaluation
    # at the roots of g in GF(8)
    g = P(2, "T^3+T+1")
    B = b_sequence(g, "monomial", make_enumeration(2, 3, g, "monomial"))
    a = FqElement(g, P(2, "T"))
    roots = [a, a ** 2, a ** 4]
    for n, b in enumerate(B):
        for x in roots:
            for y in roots:
                val = FqElement.of(g, 0)
                for i, j, c in b.sorted_terms():
                    val = val + (x ** i) * (y ** j) * c
                expect = FqElement.of(g, 1)
                for i in range(n):
                    expect = expect * (y - x ** (2 ** i))
                assert val == expect


def test_bn_rejects_bad_g():
    with pytest.raises(ValueError):
        bn_certificate(2, 4, P(2, "T^3+T+1"))
    with pytest.raises(ValueError):
        bn_certificate(2, 2, P(2, "T^2+1"))


# -- p^2 traces ------------------------------------------------------------------------


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
def test_p2_trace(p):
    roundtrip(p2_trace(p))


def test_vandermonde_inverse():
    for p in (3, 5, 7):
        V, U = vandermonde(p), vandermonde_inverse(p)
        prod = [[sum(U[i][l] * V[l][j] for l in range(p)) % p for j in range(p)] for i in range(p)]
        assert prod == [[int(i == j) for j in range(p)] for i in range(p)]


def test_p2_budget():
    with pytest.raises(ValueError):
        p2_trace(17)
    with pytest.raises(ValueError):
        p2_trace(4)


# -- glue ------------------------------------------------------------------------------


def test_crt_glue():
    c = crt_glue_certificate([2, 3, 5])
    assert c.coefficients == (-1, 1, 1)
    roundtrip(c)
    roundtrip(crt_glue_certificate([7]))
    with pytest.raises(ValueError):
        crt_glue_certificate([2, 2])
    with pytest.raises(ValueError):
        crt_glue_certificate([2, 4])


# -- commutator identities ------------------------------------------------------------------


def test_commutator_identities():
    t = time.time()
    for rec in (intro_identity(), three_ring_identity()):
        assert rec.residual().is_zero()
        roundtrip(rec)
    assert time.time() - t < 10


def test_commutator_coefficient_mutations_fail():
    for rec in (intro_identity(), three_ring_identity()):
        d = rec.to_certificate().to_dict()
        for i in range(len(d["payload"]["terms"])):
            m = json.loads(json.dumps(d))
            c = int(m["payload"]["terms"][i]["coeff"])
            m["payload"]["terms"][i]["coeff"] = str(c + 1 if c != -1 else 2)
            assert not verify_certificate(m).ok


def test_commutator_reduced_mod_2():
    terms = [(t.coeff, t.g, t.f, t.h) for t in intro_identity().terms]
    rec = commutator_certificate(2, terms, modulus=2)
    assert all(t.coeff == 1 for t in rec.terms)
    roundtrip(rec)


# -- the kernel ------------------------------------------------------------------------


def test_unknown_kind_and_schema():
    d = characteristic_certificate(3).to_certificate().to_dict()
    with pytest.raises(UnsupportedCertificate):
        verify_certificate({**d, "kind": "Nope"})
    with pytest.raises(UnsupportedCertificate):
        verify_certificate({**d, "schema": "ringlock/0"})


def test_malformed_is_a_failed_report():
    assert not verify_certificate("{not json").ok
    assert not verify_certificate({"schema": "ringlock/1"}).ok
    d = characteristic_certificate(3).to_certificate().to_dict()
    d["payload"]["n"] = "03"
    assert not verify_certificate(d).ok


def test_json_is_canonical():
    a = reduction_certificate(7, 2).to_certificate().to_json()
    b = reduction_certificate(7, 2).to_certificate().to_json()
    assert a == b
    assert Certificate.from_json(a).to_json() == a


# -- rendering -------------------------------------------------------------------------


def test_render_examples():
    text = render_certificate(characteristic_certificate(7))
    assert "42 = -17·(2^7-2) + (3^7-3)" in text
    text = render_certificate(reduction_certificate(3, 2))
    assert "x+1 = (x+1)^3 = x^3+x^2+x+1 = x^2+1" in text
    text = render_certificate(idempotent_certificate(5))
    assert "x = 4·(x-1)^4 + 3·(x-2)^4 + 2·(x-3)^4 + (x-4)^4" in text


@pytest.mark.parametrize("rec", [
    characteristic_certificate(2023), reduction_certificate(22, 2, full=True), eg_system(2, 2),
    bn_certificate(2, 3, P(2, "T^3+T+1")), p2_trace(3), crt_glue_certificate([2, 3, 7]),
    intro_identity(), idempotent_certificate(2, P(2, "T^2+T+1")),
])
def test_render_every_kind(rec):
    terse = render_certificate(rec)
    tutorial = render_certificate(rec, style="tutorial")
    assert terse and len(tutorial) >= len(terse)
    assert render_certificate(rec) == terse


def test_render_refuses_unverified():
    d = characteristic_certificate(7).to_certificate().to_dict()
    d["payload"]["coefficients"] = ["-16", "1"]
    with pytest.raises(RenderRefused):
        render_certificate(d)
    with pytest.raises(ValueError):
        render_certificate(characteristic_certificate(7), style="fancy")
