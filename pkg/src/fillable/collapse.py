"""Elementary collapses, edge-path groups and tiered contractibility evidence."""
from __future__ import annotations

import contextlib
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable

from .complex import SimplicialComplex, VertexSet, canonical_key, members
from .homology import HomologySummary, euler_characteristic, reduced_homology

DEFAULT_NODE_BUDGET = 10**6
DEFAULT_TIETZE_BUDGET = 10**4


class Verdict(str, Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class CollapseCertificate:
    """Elementary collapses (free face, its unique cofacet), then what is left.

    ``residual`` is the surviving vertex, or ``None`` for the degenerate case
    where the starting complex was already void.
    """

    steps: tuple[tuple[VertexSet, VertexSet], ...]
    residual: VertexSet | None

    def to_json(self) -> dict:
        return {
            "steps": [[list(v + 1 for v in members(t)), list(v + 1 for v in members(s))] for t, s in self.steps],
            "residual": None if self.residual is None else [v + 1 for v in members(self.residual)],
        }

    @classmethod
    def from_json(cls, data: dict) -> "CollapseCertificate":
        def m(vs):
            return sum(1 << (v - 1) for v in vs)

        res = data["residual"]
        return cls(tuple((m(t), m(s)) for t, s in data["steps"]), None if res is None else m(res))


@dataclass(frozen=True)
class CollapseResult:
    verdict: Verdict
    certificate: CollapseCertificate | None = None
    reason: str = ""
    nodes: int = 0


_recorders: list[list] = []


@contextlib.contextmanager
def recording_collapses():
    """Collect (face set, certificate) for every collapse certificate issued inside the block."""
    log: list[tuple[frozenset[VertexSet], CollapseCertificate]] = []
    _recorders.append(log)
    try:
        yield log
    finally:
        _recorders.remove(log)


def _record(faces: frozenset[VertexSet], cert: CollapseCertificate) -> None:
    for log in _recorders:
        log.append((faces, cert))


def replay_collapse(faces: Iterable[VertexSet], cert: CollapseCertificate) -> bool:
    """Independent replay: each τ must be a proper codim-1 face of exactly one live face."""
    live = set(faces)
    live.discard(0)
    if cert.residual is None:
        return not live and not cert.steps
    for tau, sigma in cert.steps:
        if tau not in live or sigma not in live or tau == 0:
            return False
        if tau & ~sigma or sigma.bit_count() != tau.bit_count() + 1:
            return False
        cofaces = [s for s in live if s != tau and tau & ~s == 0]
        if cofaces != [sigma]:
            return False
        live.discard(tau)
        live.discard(sigma)
    return live == {cert.residual} and cert.residual.bit_count() == 1


class _Budget(Exception):
    pass


def collapse_faces(faces: Iterable[VertexSet], budget: int = DEFAULT_NODE_BUDGET, homology_filter: bool = True) -> CollapseResult:
    """Search for a collapse of the face family down to one vertex.

    Collapses are explored in non-increasing dimension order, which loses no
    generality.  Dead states are memoized; exceeding ``budget`` search nodes
    gives an UNKNOWN verdict.
    """
    faces = frozenset(faces)
    nonempty = sorted((f for f in faces if f), key=canonical_key)
    if not nonempty:
        if 0 in faces:
            return CollapseResult(Verdict.NO, reason="only the empty face")
        cert = CollapseCertificate((), None)
        return CollapseResult(Verdict.YES, cert, reason="void")
    if homology_filter:
        ground = 0
        for f in nonempty:
            ground |= f
        K = SimplicialComplex.from_face_set(faces, ground)
        if euler_characteristic(K) != 0:
            return CollapseResult(Verdict.NO, reason="nonzero reduced Euler characteristic")
        H = reduced_homology(K)
        if not H.is_acyclic:
            return CollapseResult(Verdict.NO, reason=f"nontrivial reduced homology: {H}")

    n = len(nonempty)
    index = {f: i for i, f in enumerate(nonempty)}
    up: list[list[int]] = [[] for _ in range(n)]
    down: list[list[int]] = [[] for _ in range(n)]
    for i, f in enumerate(nonempty):
        if f.bit_count() < 2:
            continue
        for v in members(f):
            j = index[f & ~(1 << v)]
            down[i].append(j)
            up[j].append(i)
    dims = [f.bit_count() - 1 for f in nonempty]
    by_dim: dict[int, list[int]] = {}
    for i, d in enumerate(dims):
        by_dim.setdefault(d, []).append(i)
    top_dim = max(dims)

    dead: set[int] = set()
    nodes = 0
    path: list[tuple[int, int]] = []

    def free_pairs(state: int, d: int) -> list[tuple[int, int]]:
        pairs = []
        for s in by_dim[d]:
            if not state >> s & 1:
                continue
            for t in down[s]:
                if not state >> t & 1:
                    continue
                if sum(1 for u in up[t] if state >> u & 1) == 1:
                    pairs.append((t, s))
        return pairs

    def top_of(state: int, d: int) -> int:
        while d > 0 and not any(state >> s & 1 for s in by_dim.get(d, ())):
            d -= 1
        return d

    def dfs(state: int, d: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise _Budget
        d = top_of(state, d)
        if d == 0:
            return state.bit_count() == 1
        if state in dead:
            return False
        for t, s in free_pairs(state, d):
            path.append((t, s))
            if dfs(state & ~(1 << t) & ~(1 << s), d):
                return True
            path.pop()
        dead.add(state)
        return False

    try:
        ok = dfs((1 << n) - 1, top_dim)
    except _Budget:
        return CollapseResult(Verdict.UNKNOWN, reason="collapse search budget exhausted", nodes=nodes)
    if not ok:
        return CollapseResult(Verdict.NO, reason="exhaustive collapse search failed", nodes=nodes)
    gone = set()
    for t, s in path:
        gone.add(t)
        gone.add(s)
    residual = next(nonempty[i] for i in range(n) if i not in gone)
    cert = CollapseCertificate(tuple((nonempty[t], nonempty[s]) for t, s in path), residual)
    _record(faces, cert)
    return CollapseResult(Verdict.YES, cert, reason="collapsed to a vertex", nodes=nodes)


def is_collapsible(K: SimplicialComplex, budget: int = DEFAULT_NODE_BUDGET) -> CollapseResult:
    if K.is_void:
        raise ValueError("collapsibility is undefined for the void complex")
    return collapse_faces(K.face_set, budget)


# -- fundamental group -------------------------------------------------------


def _free_reduce(word: list[tuple[int, int]]) -> list[tuple[int, int]]:
    out: list[tuple[int, int]] = []
    for g, e in word:
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    while len(out) >= 2 and out[0][0] == out[-1][0] and out[0][1] == -out[-1][1]:
        out = out[1:-1]
    return out


@dataclass
class Pi1Report:
    trivial: bool | None
    generators: int
    relators: int
    moves: int

    def to_json(self) -> dict:
        return {"trivial": self.trivial, "generators": self.generators, "relators": self.relators, "moves": self.moves}


def edge_path_group(K: SimplicialComplex) -> tuple[list[int], list[list[tuple[int, int]]]]:
    """Presentation of π1 from a BFS spanning tree; generators are non-tree edges.

    Only the component of the least vertex is used; callers check connectivity.
    """
    verts = members(K.vertex_set)
    edges = sorted(s for s in K.face_set if s.bit_count() == 2)
    adj: dict[int, list[int]] = {v: [] for v in verts}
    for e in edges:
        a, b = members(e)
        adj[a].append(b)
        adj[b].append(a)
    tree: set[VertexSet] = set()
    if verts:
        seen = {verts[0]}
        queue = [verts[0]]
        for u in queue:
            for w in sorted(adj[u]):
                if w not in seen:
                    seen.add(w)
                    tree.add((1 << u) | (1 << w))
                    queue.append(w)
    gens = [e for e in edges if e not in tree]
    gid = {e: i for i, e in enumerate(gens)}

    def letter(a: int, b: int) -> list[tuple[int, int]]:
        e = (1 << a) | (1 << b)
        if e in tree:
            return []
        return [(gid[e], 1 if a < b else -1)]

    relators = []
    for t in sorted(s for s in K.face_set if s.bit_count() == 3):
        a, b, c = members(t)
        relators.append(_free_reduce(letter(a, b) + letter(b, c) + letter(c, a)))
    return list(range(len(gens))), relators


def pi1_trivial(K: SimplicialComplex, budget: int = DEFAULT_TIETZE_BUDGET) -> Pi1Report:
    """Try to kill every generator by Tietze eliminations; None if undecided."""
    gens, rels = edge_path_group(K)
    alive = set(gens)
    rels = [r for r in rels if r]
    moves = 0
    while alive and moves < budget:
        progress = False
        for idx, r in enumerate(rels):
            counts: dict[int, int] = {}
            for g, _ in r:
                counts[g] = counts.get(g, 0) + 1
            once = [g for g, c in counts.items() if c == 1]
            if not once:
                continue
            g = min(once)
            pos = next(i for i, (h, _) in enumerate(r) if h == g)
            e = r[pos][1]
            # r = A g^e B = 1  =>  g^e = A^-1 B^-1, rotate to get g^e = (B A)^-1
            rest = r[pos + 1:] + r[:pos]
            inv_rest = [(h, -x) for h, x in reversed(rest)]
            sub = inv_rest if e == 1 else rest
            sub_inv = [(h, -x) for h, x in reversed(sub)]
            new_rels = []
            for j, other in enumerate(rels):
                if j == idx:
                    continue
                word: list[tuple[int, int]] = []
                for h, x in other:
                    if h == g:
                        word.extend(sub if x == 1 else sub_inv)
                    else:
                        word.append((h, x))
                word = _free_reduce(word)
                if word:
                    new_rels.append(word)
            rels = new_rels
            alive.discard(g)
            moves += 1
            progress = True
            break
        if not progress:
            break
    trivial = True if not alive else None
    if alive and not rels:
        trivial = False
    return Pi1Report(trivial, len(alive), len(rels), moves)


# -- contractibility ---------------------------------------------------------


@dataclass
class ContractibilityEvidence:
    """T1 collapse certificate, T2 acyclic + trivial π1, or T3 nonzero homology."""

    verdict: Verdict
    tier: str
    collapse: CollapseCertificate | None = None
    homology: HomologySummary | None = None
    pi1: Pi1Report | None = None
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        out: dict = {"verdict": self.verdict.value, "tier": self.tier}
        if self.collapse is not None:
            out["collapse"] = self.collapse.to_json()
        if self.homology is not None:
            out["homology"] = self.homology.to_json()
        if self.pi1 is not None:
            out["pi1"] = self.pi1.to_json()
        if self.notes:
            out["notes"] = self.notes
        return out


def _connected(K: SimplicialComplex) -> bool:
    verts = members(K.vertex_set)
    if not verts:
        return False
    parent = {v: v for v in verts}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for f in K.facets:
        vs = members(f)
        for w in vs[1:]:
            parent[find(w)] = find(vs[0])
    return len({find(v) for v in verts}) == 1


def contractibility(K: SimplicialComplex, collapse_budget: int = DEFAULT_NODE_BUDGET,
                    tietze_budget: int = DEFAULT_TIETZE_BUDGET) -> ContractibilityEvidence:
    if K.is_void:
        raise ValueError("contractibility is undefined for the void complex")
    if euler_characteristic(K) != 0:
        return ContractibilityEvidence(Verdict.NO, "T3", homology=reduced_homology(K))
    res = collapse_faces(K.face_set, collapse_budget)
    if res.verdict is Verdict.YES:
        return ContractibilityEvidence(Verdict.YES, "T1", collapse=res.certificate)
    H = reduced_homology(K)
    if not H.is_acyclic:
        return ContractibilityEvidence(Verdict.NO, "T3", homology=H)
    notes = [res.reason]
    if not _connected(K):  # pragma: no cover - acyclic implies connected
        return ContractibilityEvidence(Verdict.NO, "T3", homology=H, notes=notes)
    pi = pi1_trivial(K, tietze_budget)
    if pi.trivial:
        return ContractibilityEvidence(Verdict.YES, "T2", homology=H, pi1=pi, notes=notes)
    notes.append("edge-path group not shown trivial")
    return ContractibilityEvidence(Verdict.UNKNOWN, "unknown", homology=H, pi1=pi, notes=notes)


def replay_contractibility(K: SimplicialComplex, ev: ContractibilityEvidence) -> bool:
    """Recheck evidence without trusting any stored search state."""
    if ev.tier == "T1":
        return ev.collapse is not None and replay_collapse(K.face_set, ev.collapse)
    if ev.tier == "T2":
        return reduced_homology(K).is_acyclic and pi1_trivial(K).trivial is True
    if ev.tier == "T3":
        return not reduced_homology(K).is_acyclic
    return ev.verdict is Verdict.UNKNOWN
