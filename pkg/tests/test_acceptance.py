"""The nine acceptance criteria, each logged as one PASS/FAIL line."""
import contextlib
import random
import time

import pytest

import oracles
from fillable.checks import (
    derive_mf_ordering,
    dual_order,
    hierarchy_report,
    is_directed_mf,
    is_dual_shellable,
    is_shellable,
    is_totally_deletable,
    lemma_condition,
    replay_shelling,
)
from fillable.collapse import Verdict, is_collapsible, recording_collapses
from fillable.complex import SimplicialComplex, boundary_simplex, members, range_mask
from fillable.decomposition import betti_counts, decompose_Z, full_report, local_order_valid, spanning_tree_attachment
from fillable.duality import alexander_dual, deletion_link_duality_check, dual_facet_correspondence
from fillable.filling import is_totally_fillable
from fillable.generators import generate_family, generate_random, random_instances
from fillable.homology import reduced_homology, verify_filling_ranks, zk_betti_from_subcomplexes

SUITE5_SIZE = 500
SUITE5_SEED = 2024
EMITTED_BRACKETS: list = []


@contextlib.contextmanager
def criterion(log, k, title, limit=None, setup=0.0):
    """``setup`` is time already spent in a shared fixture for this criterion."""
    start = time.perf_counter() - setup
    status, detail = "PASS", ""
    try:
        yield
    except BaseException as exc:
        status, detail = "FAIL", f" ({type(exc).__name__}: {str(exc).splitlines()[0] if str(exc) else ''})"
        raise
    finally:
        elapsed = time.perf_counter() - start
        if status == "PASS" and limit is not None and elapsed >= limit:
            status, detail = "FAIL", f" (over the {limit:g} s limit)"
        bound = "" if limit is None else f" < {limit:g} s"
        line = f"ACCEPTANCE {k}: {status} {title} [{elapsed:.2f} s{bound}]{detail}"
        log.append(line)
        print(line)
    if status == "FAIL":
        pytest.fail(line)


def report_with_brackets(K, fillings=None):
    rep = full_report(K, fillings=fillings)
    for w, b, o in zip(rep.summands, rep.brackets, rep.orderings):
        EMITTED_BRACKETS.append((K, fillings, w, b, o))
    return rep


@pytest.fixture(scope="module")
def suite3():
    start = time.perf_counter()
    K = generate_family("example6")
    with recording_collapses() as log:
        out = {
            "collapsible": is_collapsible(K).verdict,
            "totally_deletable": is_totally_deletable(K).verdict,
            "shellable": is_shellable(K).verdict,
            "dual_of_dual_shellable": is_dual_shellable(alexander_dual(K)).verdict,
            "witness": hierarchy_report(alexander_dual(K)),
        }
    return out, log, time.perf_counter() - start


@pytest.fixture(scope="module")
def suite5():
    start = time.perf_counter()
    reports, skipped, seen = [], 0, 0
    with recording_collapses() as log:
        for seed, K in random_instances(10 * SUITE5_SIZE, m_range=(2, 7), seed=SUITE5_SEED):
            seen += 1
            rep = hierarchy_report(K, strict=False)
            if not rep.definite:
                skipped += 1
                continue
            reports.append((seed, rep))
            if len(reports) == SUITE5_SIZE:
                break
    return reports, skipped, log, time.perf_counter() - start


def test_1_ganea_case(acceptance_log):
    with criterion(acceptance_log, 1, "two disjoint points give S^3 with bracket [a_1,a_2]", 1):
        rep = report_with_brackets(generate_family("disjoint-points", m=2))
        assert [w.sphere_dim for w in rep.summands] == [3]
        assert [str(b) for b in rep.brackets] == ["[a_1,a_2]"]


def test_2_boundary_of_simplex(acceptance_log):
    with criterion(acceptance_log, 2, "boundary of the simplex on m = 2..8 vertices gives S^(2m-1), bracket w_[m]", 5):
        for m in range(2, 9):
            rep = report_with_brackets(boundary_simplex(range_mask(m)))
            assert [w.sphere_dim for w in rep.summands] == [2 * m - 1]
            b = rep.brackets[0]
            assert b.head == ("w", range_mask(m)) and b.tail == ()
            expected = "[a_1,a_2]" if m == 2 else "w_{" + ",".join(map(str, range(1, m + 1))) + "}"
            assert str(b) == expected


def test_3_six_vertex_example(acceptance_log, suite3):
    out, _, elapsed = suite3
    with criterion(acceptance_log, 3, "6-vertex example verdicts and strictness witness", 30, setup=elapsed):
        assert out["collapsible"] is Verdict.YES
        assert out["totally_deletable"] is Verdict.YES
        assert out["shellable"] is Verdict.NO
        assert out["dual_of_dual_shellable"] is Verdict.NO
        w = out["witness"].verdicts
        # the dual is dual totally deletable but not dual shellable
        assert w["dual_shellable"] is Verdict.NO and w["dual_totally_deletable"] is Verdict.YES


def skeleta():
    for n in range(1, 6):
        for k in range(n):
            yield n, k, generate_family("skeleton", n=n, k=k)


def random_order_counterexample(rng, cases):
    for n, k, K in cases:
        for _ in range(20):
            facets = list(K.facets)
            rng.shuffle(facets)
            if not replay_shelling(K, facets):
                return n, k, [[v + 1 for v in members(f)] for f in facets]
    return None


def test_4_skeleta_structure():
    """The parts of criterion 4 that hold: directed MF, the ordering condition,
    shellability, and arbitrary facet orders for k = 0 and k = n - 1."""
    for n, k, K in skeleta():
        res = is_directed_mf(K)
        assert res.verdict is Verdict.YES, (n, k)
        order = derive_mf_ordering(res.certificate)
        assert lemma_condition(order)[0], (n, k)
        assert replay_shelling(alexander_dual(K), dual_order(order, K.ground_set))
        assert is_shellable(K).verdict is Verdict.YES
    cases = [(n, k, K) for n, k, K in skeleta() if k in (0, n - 1)]
    assert random_order_counterexample(random.Random(4), cases) is None


@pytest.mark.xfail(strict=True, reason="for 1 <= k <= n-2 two disjoint k-faces placed first are not a shelling")
def test_4_skeleta(acceptance_log):
    with criterion(acceptance_log, 4, "skeleton(n,k), k < n <= 5: directed MF, ordering condition, 20 random shellings", 60):
        test_4_skeleta_structure()
        bad = random_order_counterexample(random.Random(4), list(skeleta()))
        assert bad is None, f"skeleton({bad[0]},{bad[1]}) order {bad[2]} is not a shelling"


def test_5_implication_chain(acceptance_log, suite5):
    reports, skipped, _, elapsed = suite5
    with criterion(acceptance_log, 5, f"{SUITE5_SIZE} random complexes, zero chain violations ({skipped} undecided skipped)", 600,
                   setup=elapsed):
        assert len(reports) == SUITE5_SIZE
        bad = [(seed, rep.violations()) for seed, rep in reports if rep.violations()]
        assert not bad, bad[:3]


def named_families():
    yield generate_family("example6")
    yield generate_family("rp2-6")
    for m in range(1, 6):
        yield generate_family("disjoint-points", m=m)
    for m in range(2, 9):
        yield generate_family("boundary", m=m)
    for n in range(1, 6):
        for k in range(n):
            yield generate_family("skeleton", n=n, k=k)
    for m in range(2, 6):
        for S in range(3, 1 << m):
            if S.bit_count() >= 2:
                yield generate_family("delta_VS", m=m, S=[v + 1 for v in members(S)])


def test_6_oracle_equivalence(acceptance_log, suite5):
    reports, _, _, _ = suite5
    with criterion(acceptance_log, 6, "filling ranks and Hochster counts agree on every totally fillable complex", 600):
        checked = 0
        sources = [(rep.complex, rep.filling) for _, rep in reports if rep.verdicts["totally_fillable"] is Verdict.YES]
        sources += [(K, is_totally_fillable(K)) for K in named_families()]
        for K, tf in sources:
            if tf.verdict is not Verdict.YES:
                continue
            F = tf.fillings()
            ranks = verify_filling_ranks(K, F)
            assert ranks.ok and ranks.checked == (1 << K.ground_set.bit_count()) - 1, (str(K), ranks.mismatches[:2])
            assert zk_betti_from_subcomplexes(K) == betti_counts(decompose_Z(K, F)), str(K)
            checked += 1
        assert checked > 0


def complexes_up_to(m):
    """Every complex with ground set [m], ghosts, void and {emptyset} included."""
    V = range_mask(m)
    yield SimplicialComplex.void(V)
    yield SimplicialComplex.from_masks([0], V)
    for U in range(1, V + 1):
        verts = members(U)
        for facets in oracles.all_complexes(len(verts)):
            yield SimplicialComplex.from_facets([[verts[v] for v in f] for f in facets], range(m))


def duality_identities(K):
    V = K.ground_set
    D = alexander_dual(K, V)
    assert alexander_dual(D, V) == K, str(K)
    if not K.is_void and not D.is_void:
        dual_facet_correspondence(K, V)
    for v in members(V):
        assert deletion_link_duality_check(K, V, v), (str(K), v)


def test_7_duality_identities(acceptance_log):
    with criterion(acceptance_log, 7, "double dual, facet/minimal non-face bijection, deletion/link duality", 300):
        count = 0
        for m in range(1, 6):
            for K in complexes_up_to(m):
                duality_identities(K)
                count += 1
        rng = random.Random(7)
        for i in range(200):
            m = rng.randint(1, 8)
            K = generate_random(m, rng.choice((0.3, 0.5, 0.7)), rng.randrange(2**32))
            if i % 2 and m < 8:
                K = SimplicialComplex.from_masks(K.facets, range_mask(m + 1))
            duality_identities(K)
        assert count > 7000


def test_8_collapsible_dual_acyclic(acceptance_log, suite3, suite5):
    with criterion(acceptance_log, 8, "every collapse certificate from suites 3-5 has an acyclic dual"):
        logs = list(suite3[1]) + list(suite5[2])
        assert logs
        for faces, cert in logs:
            if cert.residual is None:
                continue
            U = 0
            for s in faces:
                U |= s
            C = SimplicialComplex.from_face_set(faces, U)
            H = reduced_homology(alexander_dual(C, U))
            assert H.is_acyclic, (str(C), str(H))


def test_9_contraction_orderings(acceptance_log, suite5):
    with criterion(acceptance_log, 9, "every emitted bracket replays its contraction ordering; 3 points give (S^3)^3 v (S^4)^2"):
        K3 = generate_family("disjoint-points", m=3)
        rep = report_with_brackets(K3)
        assert rep.betti == {3: 3, 4: 2}
        top = [(w, b) for w, b in zip(rep.summands, rep.brackets) if w.I == 0b111]
        assert len(top) == 2
        for w, b in top:
            i, j = members(w.sigma)
            (k,) = members(w.I & ~w.sigma)
            assert str(b) == f"[[a_{i + 1},a_{j + 1}],a_{k + 1}]" and len(b.tail) == 1
        for _, r in suite5[0][:100]:
            if r.verdicts["totally_fillable"] is Verdict.YES:
                report_with_brackets(r.complex, r.filling.fillings())
        assert EMITTED_BRACKETS
        for K, fillings, w, b, o in EMITTED_BRACKETS:
            F = fillings if fillings is not None else is_totally_fillable(K).fillings()
            Kbar = K.full_subcomplex(w.I).with_faces(F[w.I])
            trees = {t.root: t for t in spanning_tree_attachment(Kbar, w.sigma, w.I)}
            assert set(trees) == {root for root, _ in o.trees}
            for root, local in o.trees:
                assert local_order_valid(trees[root], local), (str(K), str(b))
            assert tuple(sorted(b.tail)) == members(w.I & ~w.sigma)
