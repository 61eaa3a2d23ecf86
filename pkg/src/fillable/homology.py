"""Exact reduced integer homology via Smith normal form.

This module deliberately re-enumerates faces from the facet list itself rather
than going through ``SimplicialComplex.face_set`` so it can serve as an
independent check on the search code.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Mapping

from .complex import SimplicialComplex, VertexSet, members, submasks

MAX_FACES = 200_000


class HomologySizeError(RuntimeError):
    pass


@dataclass(frozen=True)
class HomologySummary:
    """Reduced homology; ``ranks``/``torsion`` only list nonzero groups."""

    ranks: Mapping[int, int]
    torsion: Mapping[int, tuple[int, ...]]
    void: bool = False

    def rank(self, d: int) -> int:
        return self.ranks.get(d, 0)

    @property
    def is_acyclic(self) -> bool:
        return not self.ranks and not self.torsion

    @property
    def torsion_free(self) -> bool:
        return not self.torsion

    def to_json(self) -> dict:
        dims = sorted(set(self.ranks) | set(self.torsion))
        return {str(d): {"rank": self.rank(d), "torsion": list(self.torsion.get(d, ()))} for d in dims}

    def __str__(self) -> str:
        if self.is_acyclic:
            return "acyclic"
        parts = []
        for d in sorted(set(self.ranks) | set(self.torsion)):
            group = []
            if self.rank(d):
                group.append("Z" if self.rank(d) == 1 else f"Z^{self.rank(d)}")
            group += [f"Z/{t}" for t in self.torsion.get(d, ())]
            parts.append(f"H~{d}=" + "+".join(group))
        return ", ".join(parts)


@dataclass
class ChainComplexData:
    """Augmented simplicial chain complex; ``faces[-1] == [()]`` unless void."""

    faces: dict[int, list[tuple[int, ...]]]
    boundaries: dict[int, list[list[int]]] = field(default_factory=dict)

    @property
    def top(self) -> int:
        return max(self.faces, default=-2)

    def check_dd(self) -> bool:
        for d in range(1, self.top + 1):
            a, b = self.boundaries[d - 1], self.boundaries[d]
            for i in range(len(a)):
                for j in range(len(b[0]) if b else 0):
                    if sum(a[i][k] * b[k][j] for k in range(len(b))):
                        return False
        return True


def _enumerate_faces(facets: Iterable[VertexSet]) -> dict[int, list[tuple[int, ...]]]:
    seen: set[VertexSet] = set()
    for f in facets:
        if f in seen:
            continue
        for s in submasks(f):
            seen.add(s)
        if len(seen) > MAX_FACES:
            raise HomologySizeError(f"more than {MAX_FACES} faces")
    by_dim: dict[int, list[tuple[int, ...]]] = {}
    for s in seen:
        t = members(s)
        by_dim.setdefault(len(t) - 1, []).append(t)
    for d in by_dim:
        by_dim[d].sort()
    return by_dim


def chain_complex(K: SimplicialComplex) -> ChainComplexData:
    faces = _enumerate_faces(K.facets)
    data = ChainComplexData(faces)
    for d in range(0, data.top + 1):
        index = {t: i for i, t in enumerate(faces[d - 1])}
        rows = len(faces[d - 1])
        mat = [[0] * len(faces[d]) for _ in range(rows)]
        for j, t in enumerate(faces[d]):
            for k in range(len(t)):
                mat[index[t[:k] + t[k + 1:]]][j] = -1 if k % 2 else 1
        data.boundaries[d] = mat
    return data


def smith_diagonal(matrix: list[list[int]]) -> list[int]:
    """Invariant factors (positive, each dividing the next) of an integer matrix."""
    a = [row[:] for row in matrix if any(row)]
    if not a:
        return []
    diag: list[int] = []
    while a:
        ncols = len(a[0])
        best = None
        for i, row in enumerate(a):
            for j in range(ncols):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        a[0], a[pi] = a[pi], a[0]
        for row in a:
            row[0], row[pj] = row[pj], row[0]
        while True:
            p = a[0][0]
            dirty = False
            for i in range(1, len(a)):
                if a[i][0]:
                    q = a[i][0] // p
                    if q:
                        ri, r0 = a[i], a[0]
                        for j in range(ncols):
                            ri[j] -= q * r0[j]
                    if a[i][0]:
                        dirty = True
            r0 = a[0]
            for j in range(1, ncols):
                if r0[j]:
                    q = r0[j] // p
                    if q:
                        for row in a:
                            row[j] -= q * row[0]
                    if r0[j]:
                        dirty = True
            if not dirty:
                break
            # bring the smallest remaining entry of row/column 0 to the pivot
            cands = [(abs(a[i][0]), i, 0) for i in range(len(a)) if a[i][0]]
            cands += [(abs(a[0][j]), 0, j) for j in range(ncols) if a[0][j]]
            _, pi, pj = min(cands)
            if pi:
                a[0], a[pi] = a[pi], a[0]
            if pj:
                for row in a:
                    row[0], row[pj] = row[pj], row[0]
        diag.append(abs(a[0][0]))
        a = [row[1:] for row in a[1:] if any(row[1:])]
        if a and not a[0]:
            break
    return _normalize(diag)


def _normalize(diag: list[int]) -> list[int]:
    d = sorted(diag)
    changed = True
    while changed:
        changed = False
        for i in range(len(d)):
            for j in range(i + 1, len(d)):
                if d[j] % d[i]:
                    g = gcd(d[i], d[j])
                    d[i], d[j] = g, d[i] * d[j] // g
                    changed = True
        d.sort()
    return d


def reduced_homology(K: SimplicialComplex) -> HomologySummary:
    if K.is_void:
        return HomologySummary({}, {}, void=True)
    data = chain_complex(K)
    factors = {d: smith_diagonal(m) for d, m in data.boundaries.items()}
    ranks: dict[int, int] = {}
    torsion: dict[int, tuple[int, ...]] = {}
    for d in range(-1, data.top + 1):
        n = len(data.faces[d])
        rank_out = len(factors.get(d, ()))
        into = factors.get(d + 1, [])
        r = n - rank_out - len(into)
        if r:
            ranks[d] = r
        tors = tuple(x for x in into if x > 1)
        if tors:
            torsion[d] = tors
    return HomologySummary(ranks, torsion)


def euler_characteristic(K: SimplicialComplex) -> int:
    """Reduced Euler characteristic from face counts."""
    faces = _enumerate_faces(K.facets)
    return sum((-1) ** d * len(ts) for d, ts in faces.items())


@dataclass
class FillingRankReport:
    ok: bool
    mismatches: list[dict]
    checked: int

    def to_json(self) -> dict:
        return {"ok": self.ok, "checked": self.checked, "mismatches": self.mismatches}


def _nonempty_subsets(V: VertexSet) -> list[VertexSet]:
    return sorted((s for s in submasks(V) if s), key=lambda b: (b.bit_count(), b))


def verify_filling_ranks(K: SimplicialComplex, fillings: Mapping[VertexSet, Iterable[VertexSet]]) -> FillingRankReport:
    """H~_d(K_I) must be free of rank #{σ ∈ F(K_I) : |σ| = d + 2} for every I."""
    mismatches = []
    checked = 0
    for I in _nonempty_subsets(K.ground_set):
        if I not in fillings:
            mismatches.append({"I": members(I), "error": "missing filling"})
            continue
        H = reduced_homology(K.full_subcomplex(I))
        counts: dict[int, int] = {}
        for s in fillings[I]:
            counts[s.bit_count() - 2] = counts.get(s.bit_count() - 2, 0) + 1
        for d in sorted(set(counts) | set(H.ranks) | set(H.torsion)):
            if H.rank(d) != counts.get(d, 0) or d in H.torsion:
                mismatches.append({
                    "I": members(I), "d": d, "rank": H.rank(d),
                    "torsion": list(H.torsion.get(d, ())), "filling_count": counts.get(d, 0),
                })
        checked += 1
    return FillingRankReport(not mismatches, mismatches, checked)


def zk_betti_from_subcomplexes(K: SimplicialComplex) -> dict[int, int]:
    """b_k = Σ_{∅≠I} rank H~_{k-|I|-1}(K_I)."""
    betti: dict[int, int] = {}
    for I in _nonempty_subsets(K.ground_set):
        H = reduced_homology(K.full_subcomplex(I))
        for d, r in H.ranks.items():
            k = d + I.bit_count() + 1
            betti[k] = betti.get(k, 0) + r
    return dict(sorted(betti.items()))


def all_subcomplex_homology(K: SimplicialComplex) -> dict[VertexSet, HomologySummary]:
    return {I: reduced_homology(K.full_subcomplex(I)) for I in _nonempty_subsets(K.ground_set)}
