"""Finite simplicial complexes over a ground set of at most 24 vertices.

Vertex sets are plain ``int`` bitmasks (bit ``i`` set means vertex ``i`` is
present).  Vertices are 0-based internally; the JSON format is 1-based.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

MAX_VERTICES = 24

VertexSet = int


class ComplexError(ValueError):
    """Invalid input to a complex operation."""


def mask(vertices: Iterable[int]) -> VertexSet:
    bits = 0
    for v in vertices:
        if not 0 <= v < MAX_VERTICES:
            raise ComplexError(f"vertex {v} outside 0..{MAX_VERTICES - 1}")
        bits |= 1 << v
    return bits


def members(bits: VertexSet) -> tuple[int, ...]:
    out = []
    i = 0
    while bits:
        if bits & 1:
            out.append(i)
        bits >>= 1
        i += 1
    return tuple(out)


def size(bits: VertexSet) -> int:
    return bits.bit_count()


def canonical_key(bits: VertexSet) -> tuple[int, int]:
    return (bits.bit_count(), bits)


def lex_key(bits: VertexSet) -> tuple[int, ...]:
    """Key for lexicographic order on sorted vertex tuples."""
    return members(bits)


def submasks(bits: VertexSet) -> Iterator[VertexSet]:
    """All subsets of ``bits``, including 0 and ``bits`` itself."""
    sub = bits
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & bits


def range_mask(m: int) -> VertexSet:
    return (1 << m) - 1


def maximal(sets: Iterable[VertexSet]) -> list[VertexSet]:
    """Inclusion-maximal elements, deduplicated, in canonical order."""
    kept: list[VertexSet] = []
    for s in sorted(set(sets), key=lambda b: (-b.bit_count(), b)):
        if not any(s & ~k == 0 for k in kept):
            kept.append(s)
    return sorted(kept, key=canonical_key)


def format_set(bits: VertexSet, one_based: bool = True) -> str:
    shift = 1 if one_based else 0
    return "{" + ",".join(str(v + shift) for v in members(bits)) + "}"


@dataclass(frozen=True)
class Face:
    vertices: VertexSet

    @property
    def dimension(self) -> int:
        return self.vertices.bit_count() - 1

    def __repr__(self) -> str:
        return f"Face({format_set(self.vertices)})"


@dataclass(frozen=True)
class SimplicialComplex:
    """Downward closed family given by its facets over an explicit ground set.

    ``facets == ()`` is the void complex (no faces at all); ``facets == (0,)``
    is the complex whose only face is the empty set.
    """

    facets: tuple[VertexSet, ...]
    ground_set: VertexSet

    def __post_init__(self):
        if self.ground_set >> MAX_VERTICES:
            raise ComplexError(f"vertex cap exceeded: ground set needs more than {MAX_VERTICES} vertices")
        for f in self.facets:
            if f & ~self.ground_set:
                raise ComplexError(f"facet {format_set(f)} not contained in ground set {format_set(self.ground_set)}")
        if list(self.facets) != maximal(self.facets):
            raise ComplexError("facets must be a canonical antichain; use from_masks")

    @classmethod
    def from_masks(cls, facets: Iterable[VertexSet], ground_set: VertexSet | None = None) -> "SimplicialComplex":
        facets = list(facets)
        if ground_set is None:
            ground_set = 0
            for f in facets:
                ground_set |= f
        for f in facets:
            if f & ~ground_set:
                raise ComplexError(f"facet {format_set(f)} not contained in ground set {format_set(ground_set)}")
        return cls(tuple(maximal(facets)), ground_set)

    @classmethod
    def from_facets(cls, facets: Iterable[Iterable[int]], ground_set: Iterable[int] | None = None) -> "SimplicialComplex":
        """Build from 0-based vertex lists; ground set defaults to the vertex set."""
        masks = [mask(f) for f in facets]
        return cls.from_masks(masks, None if ground_set is None else mask(ground_set))

    @classmethod
    def from_face_set(cls, faces: Iterable[VertexSet], ground_set: VertexSet) -> "SimplicialComplex":
        return cls.from_masks(maximal(faces), ground_set)

    @classmethod
    def void(cls, ground_set: VertexSet = 0) -> "SimplicialComplex":
        return cls((), ground_set)

    # -- basic queries -------------------------------------------------

    @cached_property
    def vertex_set(self) -> VertexSet:
        bits = 0
        for f in self.facets:
            bits |= f
        return bits

    @property
    def is_void(self) -> bool:
        return not self.facets

    @property
    def dim(self) -> int:
        """Dimension; -1 for ``{∅}`` and -2 for the void complex."""
        if not self.facets:
            return -2
        return max(f.bit_count() for f in self.facets) - 1

    @property
    def ghost_vertices(self) -> VertexSet:
        return self.ground_set & ~self.vertex_set

    @cached_property
    def face_set(self) -> frozenset[VertexSet]:
        out: set[VertexSet] = set()
        for f in self.facets:
            out.update(submasks(f))
        return frozenset(out)

    def is_face(self, bits: VertexSet) -> bool:
        if len(self.facets) > 16:
            return bits in self.face_set
        return any(bits & ~f == 0 for f in self.facets)

    def __contains__(self, bits: VertexSet) -> bool:
        return self.is_face(bits)

    def faces(self, d: int) -> list[Face]:
        return [Face(s) for s in sorted(s for s in self.face_set if s.bit_count() == d + 1)]

    def f_vector(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for s in self.face_set:
            counts[s.bit_count() - 1] = counts.get(s.bit_count() - 1, 0) + 1
        return dict(sorted(counts.items()))

    @cached_property
    def minimal_non_faces(self) -> tuple[VertexSet, ...]:
        if self.is_void:
            return (0,)
        found: set[VertexSet] = set()
        for tau in self.face_set:
            rest = self.ground_set & ~tau
            while rest:
                low = rest & -rest
                rest ^= low
                sigma = tau | low
                if sigma in found or self.is_face(sigma):
                    continue
                if all(self.is_face(sigma & ~(1 << v)) for v in members(sigma)):
                    found.add(sigma)
        return tuple(sorted(found, key=canonical_key))

    # -- constructions -------------------------------------------------

    def full_subcomplex(self, I: VertexSet) -> "SimplicialComplex":
        if I == 0:
            raise ComplexError("full subcomplex needs a nonempty vertex set")
        if I & ~self.ground_set:
            raise ComplexError(f"{format_set(I)} is not contained in the ground set")
        if self.is_void:
            return SimplicialComplex.void(I)
        return SimplicialComplex.from_masks([f & I for f in self.facets], I)

    def link(self, v: int, allow_ghost: bool = False) -> "SimplicialComplex":
        """Link of vertex ``v`` over ground set V - {v}.

        A ghost vertex (in the ground set but not a vertex) has void link when
        ``allow_ghost`` is set, otherwise it is an input error.
        """
        bit = 1 << v
        if not self.ground_set & bit:
            raise ComplexError(f"vertex {v} not in ground set")
        ground = self.ground_set & ~bit
        if not self.vertex_set & bit:
            if allow_ghost:
                return SimplicialComplex.void(ground)
            raise ComplexError(f"{v} is not a vertex of the complex")
        return SimplicialComplex.from_masks([f & ~bit for f in self.facets if f & bit], ground)

    def link_of_face(self, S: VertexSet) -> "SimplicialComplex":
        """{τ : τ ∩ S = ∅, τ ∪ S ∈ K} over ground set V - S; void if S is not a face."""
        if S & ~self.ground_set:
            raise ComplexError(f"{format_set(S)} is not contained in the ground set")
        ground = self.ground_set & ~S
        return SimplicialComplex.from_masks([f & ~S for f in self.facets if S & ~f == 0], ground)

    def deletion(self, v: int) -> "SimplicialComplex":
        bit = 1 << v
        if not self.ground_set & bit:
            raise ComplexError(f"vertex {v} not in ground set")
        ground = self.ground_set & ~bit
        if self.is_void:
            return SimplicialComplex.void(ground)
        return SimplicialComplex.from_masks([f & ~bit for f in self.facets], ground)

    def skeleton(self, k: int) -> "SimplicialComplex":
        if k < 0:
            raise ComplexError("skeleton dimension must be >= 0")
        return SimplicialComplex.from_masks(
            [s for s in self.face_set if s.bit_count() == k + 1]
            + [f for f in self.facets if f.bit_count() <= k + 1],
            self.ground_set,
        )

    def with_faces(self, extra: Iterable[VertexSet]) -> "SimplicialComplex":
        return SimplicialComplex.from_masks(list(self.facets) + list(extra), self.ground_set)

    def relabel(self, perm: dict[int, int] | list[int]) -> "SimplicialComplex":
        def move(bits: VertexSet) -> VertexSet:
            return mask(perm[v] for v in members(bits))

        return SimplicialComplex.from_masks([move(f) for f in self.facets], move(self.ground_set))

    # -- io ------------------------------------------------------------

    def to_json(self) -> dict:
        m = self.ground_set.bit_length()
        out = {"m": m, "facets": [[v + 1 for v in members(f)] for f in self.facets]}
        if self.ground_set != range_mask(m):
            out["ground_set"] = [v + 1 for v in members(self.ground_set)]
        return out

    def __str__(self) -> str:
        if self.is_void:
            return "void"
        return "<" + " ".join(format_set(f) for f in self.facets) + ">"


def simplex(S: VertexSet, ground_set: VertexSet | None = None) -> SimplicialComplex:
    return SimplicialComplex.from_masks([S], S if ground_set is None else ground_set)


def boundary_simplex(S: VertexSet) -> SimplicialComplex:
    if S.bit_count() < 2:
        raise ComplexError("boundary of a simplex needs |S| >= 2")
    return SimplicialComplex.from_masks([S & ~(1 << v) for v in members(S)], S)


def delta_VS(V: VertexSet, S: VertexSet) -> SimplicialComplex:
    """Disjoint union of ∂Δ^S and the points of V - S."""
    if S.bit_count() < 2:
        raise ComplexError("Δ(V, S) needs |S| >= 2")
    if S & ~V:
        raise ComplexError("S must be a subset of V")
    facets = [S & ~(1 << v) for v in members(S)] + [1 << v for v in members(V & ~S)]
    return SimplicialComplex.from_masks(facets, V)


def skeleton_of_simplex(n: int, k: int) -> SimplicialComplex:
    """k-skeleton of the n-simplex on vertices 0..n."""
    from itertools import combinations

    if not 0 <= k <= n:
        raise ComplexError("need 0 <= k <= n")
    return SimplicialComplex.from_masks([mask(c) for c in combinations(range(n + 1), k + 1)], range_mask(n + 1))
