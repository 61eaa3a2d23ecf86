"""Fillings: minimal non-faces whose addition makes a complex contractible.

A filled complex K ∪ F is contractible only if every added face kills a
rational homology class of K (an added face is maximal, so a class it creates
can never die again).  Hence a filling uses exactly b_d(K; Q) faces of size
d + 2 whose boundaries are independent modulo the boundaries of K.  The
search only visits candidates with that property, in lexicographic order of
their indices in the canonical minimal non-face list, so it returns the same
filling as a plain (cardinality, lex) scan would.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator

from .collapse import (
    DEFAULT_NODE_BUDGET,
    DEFAULT_TIETZE_BUDGET,
    ContractibilityEvidence,
    Verdict,
    contractibility,
    replay_contractibility,
)
from .complex import SimplicialComplex, VertexSet, canonical_key, members, submasks
from .linalg import Echelon


@dataclass(frozen=True)
class Budget:
    collapse_nodes: int = DEFAULT_NODE_BUDGET
    tietze_moves: int = DEFAULT_TIETZE_BUDGET
    search_nodes: int = 10**6


DEFAULT_BUDGET = Budget()


class InternalConsistencyError(AssertionError):
    """A result that would contradict a theorem the searches rely on."""


class Chains:
    """Faces of K by dimension (from -1) with signed boundary vectors."""

    def __init__(self, K: SimplicialComplex):
        self.K = K
        self.faces: dict[int, list[VertexSet]] = {}
        for s in K.face_set:
            self.faces.setdefault(s.bit_count() - 1, []).append(s)
        for d in self.faces:
            self.faces[d].sort()
        self.index = {d: {s: i for i, s in enumerate(fs)} for d, fs in self.faces.items()}

    def size(self, d: int) -> int:
        return len(self.faces.get(d, ()))

    def boundary(self, s: VertexSet) -> list[int]:
        """∂s in C_{|s|-2}(K); s itself need not be a face."""
        d = s.bit_count() - 1
        vec = [0] * self.size(d - 1)
        idx = self.index.get(d - 1, {})
        for k, v in enumerate(members(s)):
            vec[idx[s & ~(1 << v)]] += -1 if k % 2 else 1
        return vec

    def boundary_echelon(self, d: int) -> Echelon:
        """Span of ∂(C_{d+1}(K)) inside C_d(K)."""
        e = Echelon(self.size(d))
        for s in self.faces.get(d + 1, ()):
            e.add(self.boundary(s))
        return e

    def betti_q(self) -> dict[int, int]:
        top = max(self.faces) if self.faces else -2
        ranks = {d: self.boundary_echelon(d - 1).rank for d in range(0, top + 1)}
        out = {}
        for d in range(-1, top + 1):
            b = self.size(d) - ranks.get(d, 0) - ranks.get(d + 1, 0)
            if b:
                out[d] = b
        return out


def lex_choices(groups: list[tuple[list[VertexSet], int, Echelon]], vector) -> Iterator[tuple[VertexSet, ...]]:
    """Yield choices of ``count`` members per group, independent over the group's echelon.

    Groups are taken in order and members within a group in list order, so the
    concatenated choices come out in lexicographic order.
    """

    def rec(gi: int, chosen: tuple[VertexSet, ...]):
        if gi == len(groups):
            yield chosen
            return
        items, need, base = groups[gi]

        def pick(start: int, ech: Echelon, acc: tuple[VertexSet, ...]):
            if len(acc) == need:
                yield from rec(gi + 1, chosen + acc)
                return
            for j in range(start, len(items) - (need - len(acc)) + 1):
                e2 = ech.copy()
                if e2.add(vector(items[j])):
                    yield from pick(j + 1, e2, acc + (items[j],))

        yield from pick(0, base, ())

    yield from rec(0, ())


@dataclass(frozen=True)
class FillingCertificate:
    filling: tuple[VertexSet, ...]
    evidence: ContractibilityEvidence

    def to_json(self) -> dict:
        return {"filling": [[v + 1 for v in members(s)] for s in self.filling], "evidence": self.evidence.to_json()}


@dataclass
class FillingResult:
    verdict: Verdict
    certificate: FillingCertificate | None = None
    reason: str = ""
    candidates: int = 0

    @property
    def filling(self) -> tuple[VertexSet, ...] | None:
        return None if self.certificate is None else self.certificate.filling

    def to_json(self) -> dict:
        out: dict = {"verdict": self.verdict.value, "reason": self.reason, "candidates": self.candidates}
        if self.certificate is not None:
            out.update(self.certificate.to_json())
        return out


SIMPLEX_EVIDENCE = ContractibilityEvidence(Verdict.YES, "simplex")


def find_filling(K: SimplicialComplex, budget: Budget = DEFAULT_BUDGET) -> FillingResult:
    if K.is_void:
        raise ValueError("fillings are undefined for the void complex")
    if len(K.facets) == 1 and K.facets[0] != 0:
        cert = FillingCertificate((), SIMPLEX_EVIDENCE)
        return FillingResult(Verdict.YES, cert, "simplex", 0)
    chains = Chains(K)
    betti = chains.betti_q()
    by_size: dict[int, list[VertexSet]] = {}
    for s in K.minimal_non_faces:
        by_size.setdefault(s.bit_count(), []).append(s)
    groups = []
    for d in sorted(betti):
        items = by_size.get(d + 2, [])
        if len(items) < betti[d]:
            return FillingResult(Verdict.NO, reason=f"only {len(items)} minimal non-faces of size {d + 2} for b_{d} = {betti[d]}")
        groups.append((items, betti[d], chains.boundary_echelon(d)))

    tried = 0
    unknown = False
    for chosen in lex_choices(groups, chains.boundary):
        tried += 1
        if tried > budget.search_nodes:
            return FillingResult(Verdict.UNKNOWN, reason="filling search budget exhausted", candidates=tried)
        Kbar = K.with_faces(chosen)
        ev = contractibility(Kbar, budget.collapse_nodes, budget.tietze_moves)
        if ev.verdict is Verdict.YES:
            return FillingResult(Verdict.YES, FillingCertificate(chosen, ev), f"contractible ({ev.tier})", tried)
        if ev.verdict is Verdict.UNKNOWN:
            unknown = True
    if unknown:
        return FillingResult(Verdict.UNKNOWN, reason="some filled complexes undecided", candidates=tried)
    return FillingResult(Verdict.NO, reason="no candidate filling is contractible", candidates=tried)


def filled_complex(K: SimplicialComplex, filling) -> SimplicialComplex:
    return K.with_faces(filling)


def replay_filling(K: SimplicialComplex, cert: FillingCertificate) -> bool:
    faces = K.face_set
    for s in cert.filling:
        if s in faces or any((s & ~(1 << v)) not in faces for v in members(s)):
            return False
    if cert.evidence.tier == "simplex":
        return not cert.filling and len(K.facets) == 1
    if cert.evidence.verdict is not Verdict.YES:
        return False
    return replay_contractibility(K.with_faces(cert.filling), cert.evidence)


@dataclass
class TotalFillingReport:
    verdict: Verdict
    results: dict[VertexSet, FillingResult]
    witness: VertexSet | None = None

    def fillings(self) -> dict[VertexSet, tuple[VertexSet, ...]]:
        if self.verdict is not Verdict.YES:
            raise ValueError("complex is not certified totally fillable")
        return {I: r.filling for I, r in self.results.items()}

    def to_json(self) -> dict:
        out: dict = {"verdict": self.verdict.value}
        if self.witness is not None:
            out["witness"] = [v + 1 for v in members(self.witness)]
        out["fillings"] = [
            {"I": [v + 1 for v in members(I)], **r.to_json()} for I, r in self.results.items()
        ]
        return out


def _fill_one(args) -> FillingResult:
    K, I, budget = args
    return find_filling(K.full_subcomplex(I), budget)


def nonempty_subsets(V: VertexSet) -> list[VertexSet]:
    return sorted((s for s in submasks(V) if s), key=canonical_key)


def is_totally_fillable(K: SimplicialComplex, budget: Budget = DEFAULT_BUDGET, jobs: int = 1) -> TotalFillingReport:
    if K.is_void:
        raise ValueError("total fillability is undefined for the void complex")
    subsets = nonempty_subsets(K.ground_set)
    results: dict[VertexSet, FillingResult] = {}
    todo = []
    for I in subsets:
        if K.is_face(I):
            results[I] = FillingResult(Verdict.YES, FillingCertificate((), SIMPLEX_EVIDENCE), "simplex", 0)
        else:
            todo.append(I)
    if jobs > 1 and len(todo) > 1:
        with ProcessPoolExecutor(jobs) as pool:
            for I, r in zip(todo, pool.map(_fill_one, [(K, I, budget) for I in todo])):
                results[I] = r
    else:
        for I in todo:
            results[I] = _fill_one((K, I, budget))
    results = {I: results[I] for I in subsets}
    witness = next((I for I, r in results.items() if r.verdict is Verdict.NO), None)
    if witness is not None:
        return TotalFillingReport(Verdict.NO, results, witness)
    undecided = next((I for I, r in results.items() if r.verdict is Verdict.UNKNOWN), None)
    if undecided is not None:
        return TotalFillingReport(Verdict.UNKNOWN, results, undecided)
    return TotalFillingReport(Verdict.YES, results)


def replay_total_filling(K: SimplicialComplex, report: TotalFillingReport) -> bool:
    if report.verdict is not Verdict.YES:
        return False
    if set(report.results) != set(nonempty_subsets(K.ground_set)):
        return False
    return all(replay_filling(K.full_subcomplex(I), r.certificate) for I, r in report.results.items())


def fillings_from_mapping(data) -> dict[VertexSet, tuple[VertexSet, ...]]:
    """Accept a TotalFillingReport or a plain mapping I -> filling."""
    if isinstance(data, TotalFillingReport):
        return data.fillings()
    return {I: tuple(F) for I, F in data.items()}


__all__ = [
    "Budget", "DEFAULT_BUDGET", "Chains", "FillingCertificate", "FillingResult", "InternalConsistencyError",
    "TotalFillingReport", "filled_complex", "fillings_from_mapping", "find_filling", "is_totally_fillable",
    "lex_choices", "nonempty_subsets", "replay_filling", "replay_total_filling",
]

