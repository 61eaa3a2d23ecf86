"""Wedge decompositions of moment-angle complexes and their bracket words.

For a totally fillable K with fillings F(K_I), the moment-angle complex splits
as a wedge of spheres S^{|σ|+|I|-1}, one for each I and σ ∈ F(K_I), and the
corresponding map to DJ_K is an iterated Whitehead product whose tail follows
a contraction ordering of I - σ.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .collapse import Verdict
from .complex import SimplicialComplex, VertexSet, canonical_key, format_set, members
from .filling import DEFAULT_BUDGET, Budget, InternalConsistencyError, TotalFillingReport, is_totally_fillable, nonempty_subsets
from .homology import verify_filling_ranks, zk_betti_from_subcomplexes


class DecompositionInputError(ValueError):
    pass


@dataclass(frozen=True)
class WedgeSummand:
    I: VertexSet
    sigma: VertexSet

    @property
    def sphere_dim(self) -> int:
        return self.sigma.bit_count() + self.I.bit_count() - 1

    def to_json(self) -> dict:
        return {"I": [v + 1 for v in members(self.I)], "sigma": [v + 1 for v in members(self.sigma)], "dim": self.sphere_dim}

    def __str__(self) -> str:
        return f"S^{self.sphere_dim} (I={format_set(self.I)}, sigma={format_set(self.sigma)})"


@dataclass(frozen=True)
class GradedSummand:
    I: VertexSet
    sigma: VertexSet
    degree: int

    def to_json(self) -> dict:
        return {"I": [v + 1 for v in members(self.I)], "sigma": [v + 1 for v in members(self.sigma)], "degree": self.degree}


@dataclass(frozen=True)
class RootedTree:
    root: int
    vertices: frozenset[int]
    edges: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class ContractionOrdering:
    trees: tuple[tuple[int, tuple[int, ...]], ...]

    @property
    def joined_order(self) -> tuple[int, ...]:
        return tuple(v for _, local in self.trees for v in local)


@dataclass(frozen=True)
class BracketWord:
    """head is ("w", σ) for |σ| >= 2 or ("a", i) for a ghost singleton; tail lists generators."""

    head: tuple[str, VertexSet | int]
    tail: tuple[int, ...]

    def head_string(self) -> str:
        kind, x = self.head
        if kind == "a":
            return f"a_{x + 1}"
        vs = members(x)
        if len(vs) == 2:
            return f"[a_{vs[0] + 1},a_{vs[1] + 1}]"
        return "w_{" + ",".join(str(v + 1) for v in vs) + "}"

    def __str__(self) -> str:
        s = self.head_string()
        for i in self.tail:
            s = f"[{s},a_{i + 1}]"
        return s

    def tree(self):
        """Nested lists: ["bracket", left, right], ["w", [...]], ["a", i]; labels 1-based."""
        kind, x = self.head
        if kind == "a":
            node: list = ["a", x + 1]
        else:
            vs = members(x)
            node = ["bracket", ["a", vs[0] + 1], ["a", vs[1] + 1]] if len(vs) == 2 else ["w", [v + 1 for v in vs]]
        for i in self.tail:
            node = ["bracket", node, ["a", i + 1]]
        return node

    def to_json(self) -> dict:
        return {"string": str(self), "tree": self.tree()}


# -- trees and orderings -----------------------------------------------------


def _adjacency(K: SimplicialComplex, I: VertexSet) -> dict[int, list[int]]:
    adj = {v: [] for v in members(I)}
    for f in K.faces(1):
        a, b = members(f.vertices)
        if I >> a & 1 and I >> b & 1:
            adj[a].append(b)
            adj[b].append(a)
    for v in adj:
        adj[v].sort()
    return adj


def spanning_tree_attachment(Kbar: SimplicialComplex, sigma: VertexSet, I: VertexSet | None = None) -> list[RootedTree]:
    """Breadth-first spanning tree of the 1-skeleton from the least vertex of σ, with
    edges inside σ removed; the nontrivial trees, each rooted at its vertex in σ.

    Ghost vertices of I (not vertices of Kbar) take no part.
    """
    if I is None:
        I = Kbar.ground_set
    if sigma & ~I:
        raise DecompositionInputError("sigma must lie in I")
    I &= Kbar.vertex_set
    adj = _adjacency(Kbar, I)
    start = members(sigma)[0]
    parent = {start: None}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in parent:
                parent[w] = u
                queue.append(w)
    if len(parent) != I.bit_count():
        raise InternalConsistencyError(f"1-skeleton of the filled complex on {format_set(I)} is disconnected")
    edges = [(p, c) for c, p in parent.items() if p is not None and not (sigma >> p & 1 and sigma >> c & 1)]
    comp = {v: v for v in parent}

    def find(x):
        while comp[x] != x:
            comp[x] = comp[comp[x]]
            x = comp[x]
        return x

    for p, c in edges:
        comp[find(c)] = find(p)
    groups: dict[int, set[int]] = {}
    for v in parent:
        groups.setdefault(find(v), set()).add(v)
    trees = []
    for vs in groups.values():
        roots = [v for v in vs if sigma >> v & 1]
        if len(roots) != 1:
            raise InternalConsistencyError(f"tree {sorted(u + 1 for u in vs)} has {len(roots)} vertices in sigma")
        if len(vs) > 1:
            tree_edges = tuple(sorted((p, c) for p, c in edges if p in vs))
            trees.append(RootedTree(roots[0], frozenset(vs), tree_edges))
    return sorted(trees, key=lambda t: t.root)


def _tree_connected(vertices: set[int], edges: Sequence[tuple[int, int]]) -> bool:
    if not vertices:
        return True
    adj = {v: [] for v in vertices}
    for a, b in edges:
        if a in adj and b in adj:
            adj[a].append(b)
            adj[b].append(a)
    start = next(iter(vertices))
    seen = {start}
    stack = [start]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == vertices


def local_order_valid(tree: RootedTree, order: Sequence[int]) -> bool:
    """T restricted to V - {v_l, ..., v_n} is connected for every l."""
    if sorted(order) != sorted(tree.vertices - {tree.root}):
        return False
    for l in range(len(order)):
        if not _tree_connected(set(tree.vertices) - set(order[l:]), tree.edges):
            return False
    return True


def contraction_ordering(trees: Sequence[RootedTree]) -> ContractionOrdering:
    out = []
    for t in sorted(trees, key=lambda t: t.root):
        deg = {v: 0 for v in t.vertices}
        for a, b in t.edges:
            deg[a] += 1
            deg[b] += 1
        alive = set(t.vertices)
        removed = []
        while len(alive) > 1:
            leaf = max(v for v in alive if v != t.root and deg[v] == 1)
            removed.append(leaf)
            alive.discard(leaf)
            for a, b in t.edges:
                if leaf in (a, b):
                    other = b if a == leaf else a
                    if other in alive:
                        deg[other] -= 1
        local = tuple(reversed(removed))
        if not local_order_valid(t, local):
            raise InternalConsistencyError(f"contraction ordering {local} fails for tree rooted at {t.root + 1}")
        out.append((t.root, local))
    return ContractionOrdering(tuple(out))


# -- decompositions ----------------------------------------------------------


def _checked_fillings(K: SimplicialComplex, fillings) -> dict[VertexSet, tuple[VertexSet, ...]]:
    if isinstance(fillings, TotalFillingReport):
        fillings = fillings.fillings()
    out = {}
    for I in nonempty_subsets(K.ground_set):
        if I not in fillings:
            raise DecompositionInputError(f"missing filling for I = {format_set(I)}")
        F = tuple(sorted(fillings[I], key=canonical_key))
        mnf = set(K.full_subcomplex(I).minimal_non_faces)
        for s in F:
            if s not in mnf:
                raise DecompositionInputError(f"{format_set(s)} is not a minimal non-face of K restricted to {format_set(I)}")
        out[I] = F
    return out


def decompose_Z(K: SimplicialComplex, fillings) -> list[WedgeSummand]:
    F = _checked_fillings(K, fillings)
    summands = [WedgeSummand(I, s) for I, Fs in F.items() for s in Fs]
    return sorted(summands, key=lambda w: (w.sphere_dim, canonical_key(w.I), canonical_key(w.sigma)))


def betti_counts(summands) -> dict[int, int]:
    out: dict[int, int] = {}
    for w in summands:
        k = w.sphere_dim if isinstance(w, WedgeSummand) else w.degree
        out[k] = out.get(k, 0) + 1
    return dict(sorted(out.items()))


def decompose_W(K: SimplicialComplex, fillings, dims: Sequence[int]) -> list[GradedSummand]:
    """Degrees (|σ| - 1) + Σ_{i∈I} n_i for X_i = S^{n_i}; n_i = 1 is the moment-angle case."""
    verts = members(K.ground_set)
    if len(dims) != len(verts):
        raise DecompositionInputError(f"expected {len(verts)} sphere dimensions, got {len(dims)}")
    n = dict(zip(verts, dims))
    for v, d in n.items():
        if d < 1:
            raise DecompositionInputError(f"X_{v + 1} must be a suspension (dimension >= 1), got {d}")
    out = [
        GradedSummand(w.I, w.sigma, w.sigma.bit_count() - 1 + sum(n[v] for v in members(w.I)))
        for w in decompose_Z(K, fillings)
    ]
    return sorted(out, key=lambda g: (g.degree, canonical_key(g.I), canonical_key(g.sigma)))


def bracket_word(K: SimplicialComplex, fillings, summand) -> tuple[BracketWord, ContractionOrdering]:
    F = fillings.fillings() if isinstance(fillings, TotalFillingReport) else fillings
    I, sigma = summand.I, summand.sigma
    if sigma not in K.full_subcomplex(I).minimal_non_faces:
        raise DecompositionInputError(f"{format_set(sigma)} is not a minimal non-face of K restricted to {format_set(I)}")
    if I not in F or sigma not in set(F[I]):
        raise DecompositionInputError(f"{format_set(sigma)} is not in the filling of {format_set(I)}")
    Kbar = K.full_subcomplex(I).with_faces(F[I])
    order = contraction_ordering(spanning_tree_attachment(Kbar, sigma, I))
    # ghosts of I are not in Kbar at all; they go last
    tail = order.joined_order + members(I & ~Kbar.vertex_set)
    head = ("a", members(sigma)[0]) if sigma.bit_count() == 1 else ("w", sigma)
    if sorted(tail) != sorted(members(I & ~sigma)):
        raise InternalConsistencyError("bracket tail is not a permutation of I - sigma")
    return BracketWord(head, tail), order


# -- end-to-end --------------------------------------------------------------


@dataclass
class DecompositionReport:
    complex: SimplicialComplex
    verdict: Verdict
    summands: list[WedgeSummand] = field(default_factory=list)
    graded: list[GradedSummand] | None = None
    brackets: list[BracketWord] | None = None
    orderings: list[ContractionOrdering] | None = None
    verified: bool | None = None
    witness: VertexSet | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def betti(self) -> dict[int, int]:
        return betti_counts(self.graded if self.graded is not None else self.summands)

    def to_json(self) -> dict:
        out: dict = {"verdict": self.verdict.value}
        if self.witness is not None:
            out["witness"] = [v + 1 for v in members(self.witness)]
        rows = []
        for k, w in enumerate(self.summands):
            row = w.to_json()
            if self.graded is not None:
                g = next(g for g in self.graded if g.I == w.I and g.sigma == w.sigma)
                row["degree"] = g.degree
            if self.brackets is not None:
                row["bracket"] = self.brackets[k].to_json()
            rows.append(row)
        out["summands"] = rows
        out["betti"] = {str(k): v for k, v in self.betti.items()}
        if self.verified is not None:
            out["verified"] = self.verified
        if self.notes:
            out["notes"] = self.notes
        return out

    def render(self) -> str:
        if self.verdict is not Verdict.YES:
            w = "" if self.witness is None else f" (first failing I = {format_set(self.witness)})"
            return f"not certified totally fillable: {self.verdict.value}{w}"
        if not self.summands:
            return "contractible (no summands)"
        lines = []
        for k, w in enumerate(self.summands):
            deg = w.sphere_dim if self.graded is None else self.graded[k].degree
            line = f"S^{deg}  I={format_set(w.I)}  sigma={format_set(w.sigma)}"
            if self.brackets is not None:
                line += f"  {self.brackets[k]}"
            lines.append(line)
        wedge = " v ".join(f"(S^{k})^{c}" if c > 1 else f"S^{k}" for k, c in self.betti.items())
        lines.append(f"wedge: {wedge}")
        if self.verified is not None:
            lines.append(f"verified: {self.verified}")
        return "\n".join(lines)


def full_report(K: SimplicialComplex, dims: Sequence[int] | None = None, brackets: bool = True, verify: bool = True,
                budget: Budget = DEFAULT_BUDGET, jobs: int = 1, fillings=None) -> DecompositionReport:
    if fillings is None:
        tf = is_totally_fillable(K, budget, jobs)
        if tf.verdict is not Verdict.YES:
            return DecompositionReport(K, tf.verdict, witness=tf.witness)
        fillings = tf.fillings()
    summands = decompose_Z(K, fillings)
    report = DecompositionReport(K, Verdict.YES, summands)
    if dims is not None:
        graded = {(g.I, g.sigma): g for g in decompose_W(K, fillings, dims)}
        report.graded = [graded[(w.I, w.sigma)] for w in summands]
    if K.ghost_vertices:
        report.notes.append("ghost vertices present: their S^1 factors are products, not wedge summands")
    if brackets:
        pairs = [bracket_word(K, fillings, w) for w in summands]
        report.brackets = [b for b, _ in pairs]
        report.orderings = [o for _, o in pairs]
    if verify:
        ranks = verify_filling_ranks(K, fillings)
        report.verified = ranks.ok and zk_betti_from_subcomplexes(K) == betti_counts(summands)
    return report


__all__ = [
    "BracketWord", "ContractionOrdering", "DecompositionInputError", "DecompositionReport", "GradedSummand",
    "RootedTree", "WedgeSummand", "betti_counts", "bracket_word", "contraction_ordering", "decompose_W",
    "decompose_Z", "full_report", "local_order_valid", "spanning_tree_attachment",
]
