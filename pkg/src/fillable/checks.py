"""Combinatorial properties on the chain

    directed MF  =>  dual shellable  =>  dual totally deletable  =>  totally fillable

together with certificates and independent replays for each of them.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .collapse import CollapseCertificate, Verdict, collapse_faces, replay_collapse
from .complex import SimplicialComplex, VertexSet, canonical_key, format_set, lex_key, maximal, members, submasks
from .duality import alexander_dual
from .filling import (
    DEFAULT_BUDGET,
    Budget,
    Chains,
    InternalConsistencyError,
    TotalFillingReport,
    is_totally_fillable,
    lex_choices,
)
from .linalg import Echelon, nullspace


class _OutOfBudget(Exception):
    pass


def _fmt(sets: Iterable[VertexSet]) -> list[list[int]]:
    return [[v + 1 for v in members(s)] for s in sets]


# -- deletable ---------------------------------------------------------------


@dataclass(frozen=True)
class DeletableCertificate:
    removed: tuple[VertexSet, ...]
    collapse: CollapseCertificate

    def to_json(self) -> dict:
        return {"removed": _fmt(self.removed), "collapse": self.collapse.to_json()}


@dataclass
class DeletableResult:
    verdict: Verdict
    certificate: DeletableCertificate | None = None
    reason: str = ""
    candidates: int = 0

    def to_json(self) -> dict:
        out: dict = {"verdict": self.verdict.value, "reason": self.reason}
        if self.certificate is not None:
            out.update(self.certificate.to_json())
        return out


def is_deletable(K: SimplicialComplex, budget: Budget = DEFAULT_BUDGET) -> DeletableResult:
    """Remove facets so that the rest collapses to a vertex (or to nothing, for {∅}).

    Removing a d-facet lowers b_d or raises b_{d-1}, so a collapsible remainder
    needs exactly b_d(K; Q) removed d-facets, independent on the cycle space.
    Candidates are scanned in (cardinality, lex) order of facet indices.
    """
    if K.is_void:
        return DeletableResult(Verdict.NO, reason="void complex")
    chains = Chains(K)
    betti = chains.betti_q()
    by_dim: dict[int, list[VertexSet]] = {}
    for f in K.facets:
        by_dim.setdefault(f.bit_count() - 1, []).append(f)
    groups = []
    coords: dict[VertexSet, list[int]] = {}
    for d in sorted(betti):
        items = by_dim.get(d, [])
        if len(items) < betti[d]:
            return DeletableResult(Verdict.NO, reason=f"fewer {d}-facets than b_{d} = {betti[d]}")
        if d == -1:
            basis = [[1]]
        else:
            cols = [chains.boundary(s) for s in chains.faces[d]]
            basis = nullspace(cols, chains.size(d - 1))
        pos = chains.index[d]
        for f in items:
            coords[f] = [z[pos[f]] for z in basis]
        groups.append((items, betti[d], Echelon(len(basis))))

    faces = K.face_set
    tried = 0
    unknown = ""
    for removed in lex_choices(groups, coords.__getitem__):
        tried += 1
        if tried > budget.search_nodes:
            return DeletableResult(Verdict.UNKNOWN, reason="deletion search budget exhausted", candidates=tried)
        rest = faces - set(removed)
        res = collapse_faces(rest, budget.collapse_nodes)
        if res.verdict is Verdict.YES:
            return DeletableResult(Verdict.YES, DeletableCertificate(tuple(removed), res.certificate), candidates=tried)
        if res.verdict is Verdict.UNKNOWN:
            unknown = res.reason
    if unknown:
        return DeletableResult(Verdict.UNKNOWN, reason=unknown, candidates=tried)
    return DeletableResult(Verdict.NO, reason="no admissible facet removal collapses", candidates=tried)


def replay_deletable(K: SimplicialComplex, cert: DeletableCertificate) -> bool:
    if not set(cert.removed) <= set(K.facets):
        return False
    return replay_collapse(K.face_set - set(cert.removed), cert.collapse)


@dataclass
class TotalDeletionReport:
    verdict: Verdict
    results: dict[VertexSet, DeletableResult]
    witness: VertexSet | None = None

    def to_json(self) -> dict:
        out: dict = {"verdict": self.verdict.value}
        if self.witness is not None:
            out["witness"] = [v + 1 for v in members(self.witness)]
        out["links"] = [{"face": [v + 1 for v in members(S)], **r.to_json()} for S, r in self.results.items()]
        return out


def is_totally_deletable(L: SimplicialComplex, budget: Budget = DEFAULT_BUDGET) -> TotalDeletionReport:
    """Every link lk_L(S), over V - S, for a face S ≠ V of L must be deletable.

    The void complex (no faces) is vacuously totally deletable.
    """
    V = L.ground_set
    results: dict[VertexSet, DeletableResult] = {}
    faces = sorted((S for S in L.face_set if S != V), key=canonical_key)
    state = Verdict.YES
    witness = None
    for S in faces:
        r = is_deletable(L.link_of_face(S), budget)
        results[S] = r
        if r.verdict is Verdict.NO:
            return TotalDeletionReport(Verdict.NO, results, S)
        if r.verdict is Verdict.UNKNOWN and state is Verdict.YES:
            state, witness = Verdict.UNKNOWN, S
    return TotalDeletionReport(state, results, witness)


def replay_total_deletion(L: SimplicialComplex, report: TotalDeletionReport) -> bool:
    V = L.ground_set
    if report.verdict is not Verdict.YES or set(report.results) != {S for S in L.face_set if S != V}:
        return False
    return all(replay_deletable(L.link_of_face(S), r.certificate) for S, r in report.results.items())


# -- shellability ------------------------------------------------------------


@dataclass
class ShellingResult:
    verdict: Verdict
    order: tuple[VertexSet, ...] | None = None
    reason: str = ""
    nodes: int = 0

    def to_json(self) -> dict:
        out: dict = {"verdict": self.verdict.value, "reason": self.reason}
        if self.order is not None:
            out["order"] = _fmt(self.order)
        return out


def _attaches(F: VertexSet, placed: Iterable[VertexSet]) -> bool:
    inter = maximal(F & G for G in placed)
    k = F.bit_count() - 1
    return all(s.bit_count() == k for s in inter)


def is_shellable(K: SimplicialComplex, budget: int = DEFAULT_BUDGET.search_nodes) -> ShellingResult:
    """Search for a shelling with facets in non-increasing dimension.

    Any shelling can be rearranged that way, so the restriction is harmless.
    """
    facets = sorted(K.facets, key=lambda f: (-f.bit_count(), f))
    if not facets:
        return ShellingResult(Verdict.YES, (), "void complex")
    n = len(facets)
    top = facets[0].bit_count()
    tops = [f for f in facets if f.bit_count() == top]
    if top >= 2 and len(tops) > 1:
        seen, stack = {0}, [0]
        while stack:
            i = stack.pop()
            for j in range(len(tops)):
                if j not in seen and (tops[i] & tops[j]).bit_count() == top - 1:
                    seen.add(j)
                    stack.append(j)
        if len(seen) < len(tops):
            return ShellingResult(Verdict.NO, reason="top-dimensional facets not connected through ridges")

    dead: set[int] = set()
    nodes = 0
    path: list[int] = []

    def dfs(state: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise _OutOfBudget
        if len(path) == n:
            return True
        if state in dead:
            return False
        placed = [facets[i] for i in path]
        low = facets[path[-1]].bit_count()
        for j in range(n):
            if state >> j & 1 or facets[j].bit_count() > low:
                continue
            if _attaches(facets[j], placed):
                path.append(j)
                if dfs(state | 1 << j):
                    return True
                path.pop()
        dead.add(state)
        return False

    try:
        for start in range(len(tops)):
            path[:] = [start]
            if dfs(1 << start):
                return ShellingResult(Verdict.YES, tuple(facets[i] for i in path), nodes=nodes)
    except _OutOfBudget:
        return ShellingResult(Verdict.UNKNOWN, reason="shelling search budget exhausted", nodes=nodes)
    return ShellingResult(Verdict.NO, reason="exhaustive shelling search failed", nodes=nodes)


def replay_shelling(K: SimplicialComplex, order: Sequence[VertexSet]) -> bool:
    """Recheck from explicit face sets: each new facet meets the earlier ones in a
    pure complex of codimension one in that facet."""
    if sorted(order) != sorted(K.facets) or len(set(order)) != len(order):
        return False
    earlier: set[VertexSet] = set()
    for i, F in enumerate(order):
        faces = set(submasks(F))
        if i:
            common = faces & earlier
            tops = [s for s in common if not any(s != t and s & ~t == 0 for t in common)]
            if any(s.bit_count() != F.bit_count() - 1 for s in tops):
                return False
        earlier |= faces
    return True


# -- the ordering condition on minimal non-faces -----------------------------


def lemma_condition(order: Sequence[VertexSet]) -> tuple[bool, tuple[int, int] | None]:
    """For i < j some k < j has σ_k ∪ σ_j ⊆ σ_i ∪ σ_j and |σ_k ∪ σ_j| = |σ_j| + 1.

    Returns (holds, first failing (i, j)).
    """
    for j in range(1, len(order)):
        sj = order[j]
        want = sj.bit_count() + 1
        good = [order[k] | sj for k in range(j) if (order[k] | sj).bit_count() == want]
        for i in range(j):
            ui = order[i] | sj
            if not any(u & ~ui == 0 for u in good):
                return False, (i, j)
    return True, None


def dual_order(order: Sequence[VertexSet], V: VertexSet) -> tuple[VertexSet, ...]:
    return tuple(V & ~s for s in order)


@dataclass
class DualShellingResult:
    verdict: Verdict
    mnf_order: tuple[VertexSet, ...] | None = None
    dual_shelling: tuple[VertexSet, ...] | None = None
    method: str = ""
    reason: str = ""

    def to_json(self) -> dict:
        out: dict = {"verdict": self.verdict.value, "method": self.method, "reason": self.reason}
        if self.mnf_order is not None:
            out["mnf_order"] = _fmt(self.mnf_order)
        if self.dual_shelling is not None:
            out["dual_shelling"] = _fmt(self.dual_shelling)
        return out


def is_dual_shellable_via_ordering(K: SimplicialComplex, budget: int = DEFAULT_BUDGET.search_nodes) -> DualShellingResult:
    """Search orderings of the minimal non-faces satisfying the ordering condition.

    Failure is reported as UNKNOWN: callers fall back to a direct shelling search.
    """
    mnf = list(K.minimal_non_faces)
    V = K.ground_set
    n = len(mnf)
    dead: set[int] = set()
    nodes = 0
    path: list[int] = []

    def ok(j: int) -> bool:
        sj = mnf[j]
        want = sj.bit_count() + 1
        good = [mnf[k] | sj for k in path if (mnf[k] | sj).bit_count() == want]
        return all(any(u & ~(mnf[i] | sj) == 0 for u in good) for i in path)

    def dfs(state: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise _OutOfBudget
        if len(path) == n:
            return True
        if state in dead:
            return False
        # non-increasing dimension in the dual is non-decreasing size here
        low = mnf[path[-1]].bit_count() if path else 0
        for j in range(n):
            if not state >> j & 1 and mnf[j].bit_count() >= low and ok(j):
                path.append(j)
                if dfs(state | 1 << j):
                    return True
                path.pop()
        dead.add(state)
        return False

    try:
        found = dfs(0)
    except _OutOfBudget:
        return DualShellingResult(Verdict.UNKNOWN, method="ordering", reason="ordering search budget exhausted")
    if not found:
        return DualShellingResult(Verdict.UNKNOWN, method="ordering", reason="no ordering satisfies the condition")
    order = tuple(mnf[i] for i in path)
    return DualShellingResult(Verdict.YES, order, dual_order(order, V), "ordering")


def is_dual_shellable(K: SimplicialComplex, budget: Budget = DEFAULT_BUDGET) -> DualShellingResult:
    res = is_dual_shellable_via_ordering(K, budget.search_nodes)
    if res.verdict is Verdict.YES:
        return res
    sh = is_shellable(alexander_dual(K, K.ground_set), budget.search_nodes)
    return DualShellingResult(sh.verdict, None, sh.order, "shelling search", sh.reason)


# -- directed MF -------------------------------------------------------------

READINGS = ("graded", "face")


@dataclass(frozen=True)
class DirectedMFCertificate:
    """Ordered minimal non-faces and, per step, the maximal faces of K_{i-1} ∩ ∂σ_i."""

    order: tuple[VertexSet, ...]
    intersections: tuple[tuple[VertexSet, ...] | None, ...]
    reading: str = "graded"

    def to_json(self) -> dict:
        return {
            "reading": self.reading,
            "order": _fmt(self.order),
            "intersections": [None if x is None else _fmt(x) for x in self.intersections],
        }


@dataclass
class MFResult:
    verdict: Verdict
    certificate: DirectedMFCertificate | None = None
    reason: str = ""
    nodes: int = 0

    def to_json(self) -> dict:
        out: dict = {"verdict": self.verdict.value, "reason": self.reason}
        if self.certificate is not None:
            out.update(self.certificate.to_json())
        return out


def _boundary_facets(s: VertexSet) -> list[VertexSet]:
    return [s & ~(1 << v) for v in members(s)]


def _step_ok(inter: list[VertexSet], s: VertexSet, reading: str) -> bool:
    if len(inter) == 1:
        return True
    return reading == "graded" and bool(inter) and all(t.bit_count() == s.bit_count() - 1 for t in inter)


def is_directed_mf(K: SimplicialComplex, budget: int = DEFAULT_BUDGET.search_nodes,
                   reading: str = "graded") -> MFResult:
    """Order the minimal non-faces so that K is the union of their boundaries, each
    new boundary meeting the union so far in a single face.

    The default "graded" reading adds minimal non-faces in non-decreasing size
    and also accepts an intersection that is a union of facets of ∂σ; "face"
    is the plain single-face condition in any order.
    """
    if reading not in READINGS:
        raise ValueError(f"unknown reading {reading!r}")
    if K.is_void:
        return MFResult(Verdict.NO, reason="void complex")
    mnf = list(K.minimal_non_faces)
    union = SimplicialComplex.from_masks([t for s in mnf for t in _boundary_facets(s)], K.ground_set)
    if union.facets != K.facets:
        return MFResult(Verdict.NO, reason="K is not the union of the boundaries of its minimal non-faces")
    n = len(mnf)
    dead: set[int] = set()
    nodes = 0
    path: list[int] = []
    inters: list = []

    def dfs(state: int, prev: list[VertexSet]) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise _OutOfBudget
        if len(path) == n:
            return True
        if state in dead:
            return False
        low = mnf[path[-1]].bit_count() if path and reading == "graded" else 0
        for j in range(n):
            if state >> j & 1 or mnf[j].bit_count() < low:
                continue
            s = mnf[j]
            if path:
                inter = maximal(F & s for F in prev)
                if not _step_ok(inter, s, reading):
                    continue
                inters.append(tuple(sorted(inter, key=canonical_key)))
            else:
                inters.append(None)
            path.append(j)
            if dfs(state | 1 << j, maximal(prev + _boundary_facets(s))):
                return True
            path.pop()
            inters.pop()
        dead.add(state)
        return False

    try:
        found = dfs(0, [])
    except _OutOfBudget:
        return MFResult(Verdict.UNKNOWN, reason="directed MF search budget exhausted", nodes=nodes)
    if not found:
        return MFResult(Verdict.NO, reason="no admissible ordering of minimal non-faces", nodes=nodes)
    cert = DirectedMFCertificate(tuple(mnf[i] for i in path), tuple(inters), reading)
    return MFResult(Verdict.YES, cert, nodes=nodes)


def replay_directed_mf(K: SimplicialComplex, cert: DirectedMFCertificate) -> bool:
    """Rebuild K_0 ⊂ K_1 ⊂ ... from explicit face sets and recheck every step."""
    if sorted(cert.order) != sorted(K.minimal_non_faces):
        return False
    if cert.reading == "graded" and any(a.bit_count() > b.bit_count() for a, b in zip(cert.order, cert.order[1:])):
        return False
    built: set[VertexSet] = set()
    for i, s in enumerate(cert.order):
        bd = {t for t in submasks(s) if t != s}
        if i:
            common = bd & built
            tops = sorted((a for a in common if not any(a != b and a & ~b == 0 for b in common)), key=canonical_key)
            if cert.intersections[i] is None or tuple(tops) != tuple(cert.intersections[i]):
                return False
            if not _step_ok(tops, s, cert.reading):
                return False
        built |= bd
    return built == set(K.face_set)


def derive_mf_ordering(cert: DirectedMFCertificate) -> tuple[VertexSet, ...]:
    """Two-element minimal non-faces first (lexicographically), then the rest in MF order.

    The result is checked against the ordering condition, whose failure here
    would contradict the implication from directed MF to dual shellability.
    """
    pairs = sorted((s for s in cert.order if s.bit_count() == 2), key=lex_key)
    rest = [s for s in cert.order if s.bit_count() != 2]
    order = tuple(pairs + rest)
    ok, where = lemma_condition(order)
    if not ok:
        i, j = where
        raise InternalConsistencyError(
            f"derived ordering violates the ordering condition at {format_set(order[i])}, {format_set(order[j])}"
        )
    return order


# -- the chain ---------------------------------------------------------------

CHAIN = ("directed_mf", "dual_shellable", "dual_totally_deletable", "totally_fillable")


@dataclass
class HierarchyReport:
    complex: SimplicialComplex
    verdicts: dict[str, Verdict]
    mf: MFResult
    dual_shelling: DualShellingResult
    dual_deletion: TotalDeletionReport
    filling: TotalFillingReport
    notes: list[str] = field(default_factory=list)

    def violations(self) -> list[tuple[str, str]]:
        out = []
        for a in range(len(CHAIN)):
            for b in range(a + 1, len(CHAIN)):
                if self.verdicts[CHAIN[a]] is Verdict.YES and self.verdicts[CHAIN[b]] is Verdict.NO:
                    out.append((CHAIN[a], CHAIN[b]))
        return out

    @property
    def definite(self) -> bool:
        return all(v is not Verdict.UNKNOWN for v in self.verdicts.values())

    def to_json(self, details: bool = False) -> dict:
        out: dict = {"complex": self.complex.to_json(), "verdicts": {k: v.value for k, v in self.verdicts.items()}}
        if self.notes:
            out["notes"] = self.notes
        if details:
            out["directed_mf"] = self.mf.to_json()
            out["dual_shellable"] = self.dual_shelling.to_json()
            out["dual_totally_deletable"] = self.dual_deletion.to_json()
            out["totally_fillable"] = self.filling.to_json()
        return out


class ImplicationViolation(InternalConsistencyError):
    def __init__(self, report: HierarchyReport):
        self.report = report
        pairs = ", ".join(f"{a} but not {b}" for a, b in report.violations())
        super().__init__(f"implication chain broken for {report.complex}: {pairs}")


def hierarchy_report(K: SimplicialComplex, budget: Budget = DEFAULT_BUDGET, jobs: int = 1,
                     strict: bool = True) -> HierarchyReport:
    V = K.ground_set
    dual = alexander_dual(K, V)
    notes: list[str] = []

    mf = is_directed_mf(K, budget.search_nodes)
    if mf.verdict is Verdict.YES:
        order = derive_mf_ordering(mf.certificate)
        shelling = dual_order(order, V)
        if not replay_shelling(dual, shelling):
            raise InternalConsistencyError(f"derived ordering is not a shelling of the dual of {K}")
        ds = DualShellingResult(Verdict.YES, order, shelling, "derived from directed MF")
    else:
        ds = is_dual_shellable(K, budget)
        if ds.verdict is Verdict.YES and not replay_shelling(dual, ds.dual_shelling):
            raise InternalConsistencyError(f"reported shelling of the dual of {K} does not replay")

    dtd = is_totally_deletable(dual, budget)
    tf = is_totally_fillable(K, budget, jobs)
    verdicts = {
        "directed_mf": mf.verdict,
        "dual_shellable": ds.verdict,
        "dual_totally_deletable": dtd.verdict,
        "totally_fillable": tf.verdict,
    }
    report = HierarchyReport(K, verdicts, mf, ds, dtd, tf, notes)
    if strict and report.violations():
        raise ImplicationViolation(report)
    return report


__all__ = [
    "CHAIN", "DeletableCertificate", "DeletableResult", "DirectedMFCertificate", "DualShellingResult",
    "HierarchyReport", "ImplicationViolation", "MFResult", "READINGS", "ShellingResult", "TotalDeletionReport",
    "derive_mf_ordering", "dual_order", "hierarchy_report", "is_deletable", "is_directed_mf", "is_dual_shellable",
    "is_dual_shellable_via_ordering", "is_shellable", "is_totally_deletable", "lemma_condition",
    "replay_deletable", "replay_directed_mf", "replay_shelling", "replay_total_deletion",
]
