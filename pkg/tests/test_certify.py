import json

import pytest

from acyclic.certify import (
    NO,
    UNKNOWN,
    YES,
    TauCertificate,
    certify_tau,
    classify_maximum_forests,
    family_inequality,
    verify_certificate,
)
from acyclic.graph import Graph
from acyclic.reproduce import family


def test_eta_counting_certificate_oa():
    fg = family("oa:3,17")
    cert = certify_tau(fg)
    assert cert.tau == 18 and cert.all_maximum_canonical == YES
    assert cert.noncanonical_proof == "eta_counting"
    assert cert.eta_value == 6 and cert.eta_bound == 14
    assert verify_certificate(cert, fg) == []


def test_edge_transitive_certificate_gq4():
    fg = family("gq:4")
    cert = certify_tau(fg)
    # the counting lemma alone does not separate here
    assert cert.eta_bound >= cert.canonical_lower
    assert cert.tau == 6 and cert.all_maximum_canonical == YES
    assert cert.noncanonical_proof == "anchored_search_edge_transitive"
    assert verify_certificate(cert, fg) == []
    assert certify_tau(fg, local_search=False).all_maximum_canonical == UNKNOWN


def test_small_gq_has_large_noncanonical_forests():
    for key in ("gq:2", "gq:3"):
        cert = certify_tau(family(key))
        assert cert.tau == 5 and cert.all_maximum_canonical == NO
        assert verify_certificate(cert, family(key)) == []


def test_hamming_3_13_certificate():
    fg = family("hamming:3,13")
    cert = certify_tau(fg)
    assert cert.tau == 170 and cert.all_maximum_canonical == YES
    # common non-neighbours of an edge by inclusion-exclusion: 6(n-1)
    assert cert.eta_value == 72


def test_hamming_threshold_note():
    fg = family("hamming:2,5")
    ineq = family_inequality(fg)
    assert ineq["holds"] is False and ineq["stated_range"] is True and "note" in ineq
    cert = certify_tau(fg)
    assert cert.tau == 6 and cert.all_maximum_canonical == YES
    assert any("threshold" in n for n in cert.notes)


def test_family_inequality_kneser_and_q_kneser():
    big = family_inequality(family("kneser:9,2"))
    assert big["lhs"] == 2 + 2 * 4 * 1 and big["rhs"] == 9
    q = family_inequality(family("qkneser:4,2,2"))
    assert q["lhs"] == 2 + 2 * 9 * 1 and q["rhs"] == 8 and not q["holds"]


def test_classify_kneser():
    c5 = classify_maximum_forests(family("kneser:5,2").graph)
    assert c5.tau == 7 and c5.all_maximum_canonical == NO and c5.alpha == 4
    c9 = classify_maximum_forests(family("kneser:9,2").graph)
    assert c9.tau == 9 and c9.all_maximum_canonical == YES


def test_classify_rejects_irregular():
    with pytest.raises(ValueError):
        classify_maximum_forests(Graph.from_edges(3, [(0, 1)]))


def test_certificate_json_round_trip():
    cert = certify_tau(family("oa:3,5"))
    data = json.loads(json.dumps(cert.to_dict()))
    back = TauCertificate.from_dict(data)
    assert back == cert
    assert set(data["hashes"]) >= {"alpha_witness", "canonical_witness"}


def test_tampered_certificate_is_caught():
    fg = family("oa:3,17")
    cert = certify_tau(fg)
    cert.eta_value = 3
    assert verify_certificate(cert, fg)
    cert = certify_tau(fg)
    cert.alpha_witness = cert.alpha_witness[:-1] + (cert.alpha_witness[0],)
    assert verify_certificate(cert, fg)


def test_certificate_needs_ratio_tight_witness():
    fg = family("pc:3")
    from dataclasses import replace

    with pytest.raises(ValueError):
        certify_tau(replace(fg, coclique_witness=0b1))
