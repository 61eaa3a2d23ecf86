import random

import pytest
from hypothesis import given, strategies as st

import oracles
from fillable.complex import (
    ComplexError,
    SimplicialComplex,
    boundary_simplex,
    delta_VS,
    mask,
    members,
    range_mask,
    skeleton_of_simplex,
    submasks,
)
from strategies import complexes


def as_sets(masks):
    return {frozenset(members(s)) for s in masks}


def facet_sets(K):
    return [frozenset(members(f)) for f in K.facets]


def test_facets_are_canonical():
    K = SimplicialComplex.from_facets([[2, 0], [0, 1, 2], [3], [1]])
    assert K.facets == (mask([3]), mask([0, 1, 2]))
    assert K.ground_set == range_mask(4)
    assert K.dim == 2


def test_degenerate_complexes():
    void = SimplicialComplex.void(range_mask(3))
    empty = SimplicialComplex.from_masks([0], range_mask(3))
    assert void.is_void and void.dim == -2 and void.face_set == frozenset()
    assert not empty.is_void and empty.dim == -1 and empty.face_set == {0}
    assert void.minimal_non_faces == (0,)
    assert empty.minimal_non_faces == (1, 2, 4)
    assert empty.ghost_vertices == range_mask(3)


def test_vertex_cap():
    SimplicialComplex.from_masks([1 << 23])
    with pytest.raises(ComplexError, match="vertex cap"):
        SimplicialComplex.from_masks([1 << 24])


def test_facet_outside_ground_set():
    with pytest.raises(ComplexError):
        SimplicialComplex.from_masks([0b111], 0b011)


def test_non_canonical_direct_construction_rejected():
    with pytest.raises(ComplexError):
        SimplicialComplex((0b011, 0b001), 0b011)


def test_minimal_non_faces_of_three_points():
    K = SimplicialComplex.from_facets([[0], [1], [2]])
    assert as_sets(K.minimal_non_faces) == {frozenset({0, 1}), frozenset({0, 2}), frozenset({1, 2})}


def test_delta_vs_example():
    K = delta_VS(range_mask(3), mask([0, 1]))
    assert facet_sets(K) == [frozenset({0}), frozenset({1}), frozenset({2})]
    with pytest.raises(ComplexError):
        delta_VS(range_mask(3), mask([0]))


def test_boundary_and_skeleton():
    B = boundary_simplex(range_mask(4))
    assert B.minimal_non_faces == (range_mask(4),)
    assert B.f_vector() == {-1: 1, 0: 4, 1: 6, 2: 4}
    S = skeleton_of_simplex(4, 1)
    assert S.f_vector() == {-1: 1, 0: 5, 1: 10}
    assert S.skeleton(0).f_vector() == {-1: 1, 0: 5}
    with pytest.raises(ComplexError):
        skeleton_of_simplex(2, 3)


def test_full_subcomplex_needs_nonempty_set():
    K = SimplicialComplex.from_facets([[0, 1]])
    with pytest.raises(ComplexError):
        K.full_subcomplex(0)


def test_ghost_link():
    K = SimplicialComplex.from_masks([0b011], 0b111)
    with pytest.raises(ComplexError):
        K.link(2)
    assert K.link(2, allow_ghost=True).is_void


@given(complexes(max_m=6, ghosts=True))
def test_downward_closed(K):
    F = K.face_set
    for f in K.facets:
        for s in submasks(f):
            assert s in F and K.is_face(s)
    rng = random.Random(K.ground_set ^ len(F))
    for _ in range(20):
        s = rng.randrange(K.ground_set + 1) & K.ground_set
        assert K.is_face(s) == any(s & ~f == 0 for f in K.facets)


@given(complexes(max_m=6, ghosts=True))
def test_faces_and_minimal_non_faces_match_brute_force(K):
    facets = facet_sets(K)
    ground = members(K.ground_set)
    assert as_sets(K.face_set) == oracles.faces(facets)
    assert as_sets(K.minimal_non_faces) == oracles.minimal_non_faces(facets, ground)


@given(complexes(max_m=7), st.data())
def test_full_subcomplex_restricts(K, data):
    I = data.draw(st.integers(1, K.ground_set).filter(lambda x: x & K.ground_set == x))
    J = data.draw(st.integers(1, I).filter(lambda x: x & I == x))
    KI = K.full_subcomplex(I)
    assert as_sets(KI.face_set) == {s for s in as_sets(K.face_set) if s <= set(members(I))}
    assert KI.full_subcomplex(J) == K.full_subcomplex(J)


@given(complexes(max_m=7), st.data())
def test_link_and_deletion_match_brute_force(K, data):
    v = data.draw(st.sampled_from(members(K.vertex_set)))
    facets = facet_sets(K)
    assert as_sets(K.link(v).face_set) == oracles.link_faces(facets, v)
    assert as_sets(K.deletion(v).face_set) == {s for s in oracles.faces(facets) if v not in s}


@given(complexes(max_m=7), st.data())
def test_link_deletion_commute_with_restriction(K, data):
    v = data.draw(st.sampled_from(members(K.vertex_set)))
    I = data.draw(st.integers(1, K.ground_set).filter(lambda x: x & K.ground_set == x and x >> v & 1))
    KI = K.full_subcomplex(I)
    rest = I & ~(1 << v)
    if rest:
        assert KI.deletion(v) == K.deletion(v).full_subcomplex(rest)
        assert KI.link(v, allow_ghost=True) == K.link(v).full_subcomplex(rest)


def test_relabel_round_trip():
    K = SimplicialComplex.from_facets([[0, 1, 2], [2, 3], [3, 4, 5]])
    perm = [5, 4, 3, 2, 1, 0]
    L = K.relabel(perm)
    assert L.relabel(perm) == K
    assert facet_sets(L) == sorted(
        (frozenset(perm[v] for v in f) for f in facet_sets(K)), key=lambda s: (len(s), mask(s))
    )


def test_json_round_trip_is_one_based():
    K = SimplicialComplex.from_masks([0b011], 0b111)
    assert K.to_json() == {"m": 3, "facets": [[1, 2]]}
    G = SimplicialComplex.from_masks([0b001], 0b101)
    assert G.to_json() == {"m": 3, "facets": [[1]], "ground_set": [1, 3]}
