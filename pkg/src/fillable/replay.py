"""Replay checks for serialized results, used before trusting cached documents.

Only positive verdicts carry certificates; negative and unknown documents are
accepted on their digest alone.
"""
from __future__ import annotations

from .checks import (
    DirectedMFCertificate,
    replay_directed_mf,
    replay_shelling,
)
from .collapse import CollapseCertificate, pi1_trivial, replay_collapse
from .complex import SimplicialComplex, mask
from .duality import alexander_dual
from .filling import nonempty_subsets
from .homology import reduced_homology


def _m(vs) -> int:
    return mask(v - 1 for v in vs)


def evidence_ok(K: SimplicialComplex, ev: dict) -> bool:
    tier = ev.get("tier")
    if tier == "simplex":
        return len(K.facets) == 1
    if tier == "T1":
        return replay_collapse(K.face_set, CollapseCertificate.from_json(ev["collapse"]))
    if tier == "T2":
        return reduced_homology(K).is_acyclic and pi1_trivial(K).trivial is True
    return False


def filling_ok(K: SimplicialComplex, doc: dict) -> bool:
    if doc["verdict"] != "yes":
        return True
    F = [_m(s) for s in doc["filling"]]
    mnf = set(K.minimal_non_faces)
    if not all(s in mnf for s in F):
        return False
    return evidence_ok(K.with_faces(F), doc["evidence"])


def total_filling_ok(K: SimplicialComplex, doc: dict) -> bool:
    if doc["verdict"] != "yes":
        return True
    rows = {_m(r["I"]): r for r in doc["fillings"]}
    if set(rows) != set(nonempty_subsets(K.ground_set)):
        return False
    return all(filling_ok(K.full_subcomplex(I), r) for I, r in rows.items())


def deletable_ok(K: SimplicialComplex, doc: dict) -> bool:
    if doc["verdict"] != "yes":
        return True
    removed = {_m(s) for s in doc["removed"]}
    if not removed <= set(K.facets):
        return False
    return replay_collapse(K.face_set - removed, CollapseCertificate.from_json(doc["collapse"]))


def total_deletion_ok(L: SimplicialComplex, doc: dict) -> bool:
    if doc["verdict"] != "yes":
        return True
    rows = {_m(r["face"]): r for r in doc["links"]}
    if set(rows) != {S for S in L.face_set if S != L.ground_set}:
        return False
    return all(deletable_ok(L.link_of_face(S), r) for S, r in rows.items())


def shelling_ok(K: SimplicialComplex, doc: dict) -> bool:
    return doc["verdict"] != "yes" or replay_shelling(K, [_m(s) for s in doc["order"]])


def dual_shelling_ok(K: SimplicialComplex, doc: dict) -> bool:
    if doc["verdict"] != "yes":
        return True
    return replay_shelling(alexander_dual(K, K.ground_set), [_m(s) for s in doc["dual_shelling"]])


def mf_ok(K: SimplicialComplex, doc: dict) -> bool:
    if doc["verdict"] != "yes":
        return True
    cert = DirectedMFCertificate(
        tuple(_m(s) for s in doc["order"]),
        tuple(None if x is None else tuple(_m(s) for s in x) for x in doc["intersections"]),
        doc["reading"],
    )
    return replay_directed_mf(K, cert)


def collapse_ok(K: SimplicialComplex, doc: dict) -> bool:
    if doc["verdict"] != "yes":
        return True
    return replay_collapse(K.face_set, CollapseCertificate.from_json(doc["collapse"]))


def contractible_ok(K: SimplicialComplex, doc: dict) -> bool:
    return doc["verdict"] != "yes" or evidence_ok(K, doc)


def hierarchy_ok(K: SimplicialComplex, doc: dict) -> bool:
    dual = alexander_dual(K, K.ground_set)
    return (
        mf_ok(K, doc["directed_mf"])
        and dual_shelling_ok(K, doc["dual_shellable"])
        and total_deletion_ok(dual, doc["dual_totally_deletable"])
        and total_filling_ok(K, doc["totally_fillable"])
    )
