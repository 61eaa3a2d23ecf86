import dataclasses

import pytest
from hypothesis import given

import oracles
from fillable.collapse import (
    CollapseCertificate,
    Verdict,
    collapse_faces,
    contractibility,
    is_collapsible,
    pi1_trivial,
    recording_collapses,
    replay_collapse,
    replay_contractibility,
)
from fillable.complex import SimplicialComplex, boundary_simplex, members, range_mask, simplex
from fillable.generators import generate_family
from strategies import complexes


def exhaustive(max_m):
    for m in range(1, max_m + 1):
        for facets in oracles.all_complexes(m):
            yield SimplicialComplex.from_facets([sorted(f) for f in facets], range(m))


@pytest.mark.parametrize("filt", [True, False])
def test_collapse_matches_brute_force(filt):
    for K in exhaustive(4):
        res = collapse_faces(K.face_set, homology_filter=filt)
        expected = oracles.collapsible_brute({frozenset(members(s)) for s in K.face_set})
        assert (res.verdict is Verdict.YES) == expected, str(K)
        if expected:
            assert replay_collapse(K.face_set, res.certificate)


@given(complexes(max_m=6))
def test_certificates_replay(K):
    res = is_collapsible(K)
    if res.verdict is Verdict.YES:
        assert replay_collapse(K.face_set, res.certificate)
    else:
        assert collapse_faces(K.face_set, homology_filter=False).verdict is not Verdict.YES


def test_tampered_certificate_rejected():
    K = simplex(range_mask(3))
    cert = is_collapsible(K).certificate
    assert replay_collapse(K.face_set, cert)
    swapped = dataclasses.replace(cert, steps=cert.steps[1:] + cert.steps[:1])
    assert not replay_collapse(K.face_set, swapped)
    wrong_residual = dataclasses.replace(cert, residual=cert.residual << 1 if cert.residual < 4 else 1)
    assert not replay_collapse(K.face_set, wrong_residual)
    assert not replay_collapse(boundary_simplex(range_mask(3)).face_set, cert)


def test_certificate_json_round_trip():
    cert = is_collapsible(generate_family("example6")).certificate
    assert CollapseCertificate.from_json(cert.to_json()) == cert


def test_degenerate_face_families():
    assert collapse_faces([0]).verdict is Verdict.NO
    assert collapse_faces([]).verdict is Verdict.YES
    with pytest.raises(ValueError):
        is_collapsible(SimplicialComplex.void(1))


def test_budget_gives_unknown():
    K = simplex(range_mask(4))
    assert collapse_faces(K.face_set, budget=1, homology_filter=False).verdict is Verdict.UNKNOWN


def test_tiers():
    circle = boundary_simplex(range_mask(3))
    ev = contractibility(circle)
    assert (ev.verdict, ev.tier) == (Verdict.NO, "T3") and replay_contractibility(circle, ev)

    K = generate_family("example6")
    ev = contractibility(K)
    assert (ev.verdict, ev.tier) == (Verdict.YES, "T1") and replay_contractibility(K, ev)

    ev = contractibility(K, collapse_budget=1)
    assert (ev.verdict, ev.tier) == (Verdict.YES, "T2") and replay_contractibility(K, ev)

    ev = contractibility(K, collapse_budget=1, tietze_budget=0)
    assert ev.verdict is Verdict.UNKNOWN and ev.pi1.trivial is None


def test_rp2_is_not_contractible():
    K = generate_family("rp2-6")
    ev = contractibility(K)
    assert ev.verdict is Verdict.NO and ev.homology.torsion == {1: (2,)}


def test_pi1_of_circle_is_not_shown_trivial():
    rep = pi1_trivial(boundary_simplex(range_mask(3)))
    assert rep.trivial is False and rep.generators == 1


def test_recording():
    K = generate_family("example6")
    with recording_collapses() as log:
        is_collapsible(K)
        collapse_faces(boundary_simplex(range_mask(3)).face_set)
    assert len(log) == 1 and log[0][0] == K.face_set
    assert replay_collapse(*log[0])
