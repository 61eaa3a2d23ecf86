"""Alexander duality over an explicit ground set."""
from __future__ import annotations

from .complex import ComplexError, SimplicialComplex, VertexSet, canonical_key, format_set


def alexander_dual(L: SimplicialComplex, V: VertexSet | None = None) -> SimplicialComplex:
    """{σ ⊆ V : V - σ ∉ L}, via complements of the minimal non-faces of L over V.

    The full simplex on V has the void complex as dual and vice versa.
    """
    if V is None:
        V = L.ground_set
    if L.vertex_set & ~V:
        raise ComplexError(f"complex has faces outside {format_set(V)}")
    if V != L.ground_set:
        L = SimplicialComplex.from_masks(L.facets, V)
    return SimplicialComplex.from_masks([V & ~s for s in L.minimal_non_faces], V)


def dual_facet_correspondence(L: SimplicialComplex, V: VertexSet | None = None) -> list[tuple[VertexSet, VertexSet]]:
    """Pairs (facet σ of L, minimal non-face V - σ of the dual), checked both ways."""
    if V is None:
        V = L.ground_set
    dual = alexander_dual(L, V)
    pairs = [(f, V & ~f) for f in L.facets]
    mnf = set(dual.minimal_non_faces)
    if {c for _, c in pairs} != mnf or len(mnf) != len(pairs):
        raise AssertionError(f"facet/minimal non-face correspondence broken for {L}")
    return sorted(pairs, key=lambda p: canonical_key(p[0]))


def deletion_link_duality_check(L: SimplicialComplex, V: VertexSet | None, v: int) -> bool:
    """dl_L(v)^∨ over V - {v} equals lk_{L^∨}(v), with L^∨ over V."""
    if V is None:
        V = L.ground_set
    if not V >> v & 1:
        raise ComplexError(f"vertex {v} not in ground set")
    L = SimplicialComplex.from_masks(L.facets, V)
    left = alexander_dual(L.deletion(v), V & ~(1 << v))
    right = alexander_dual(L, V).link(v, allow_ghost=True)
    return left == right
