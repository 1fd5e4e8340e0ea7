import itertools
import random

import pytest

from mpvkit import (
    Graph,
    Instance,
    PartitionedGraph,
    PreconditionError,
    TrivialVerdict,
    and_compose_cmpv,
    and_compose_rmpv,
    brute_force,
    cmpv_normalize_half,
    cmpv_to_rmpv,
    lift_ell1,
    lift_ell_2km2,
    mcc_to_cmpv,
    pad_half_vertex_cover,
    random_instance,
    sidon,
    vc_to_cmpv,
)


# ---------------------------------------------------------------------------
# graph types
# ---------------------------------------------------------------------------


def test_graph_normalizes_edges():
    g = Graph(4, ((3, 1), (2, 4)))
    assert g.edges == ((1, 3), (2, 4))


@pytest.mark.parametrize(
    "nv,edges",
    [
        (3, ((1, 1),)),
        (3, ((1, 4),)),
        (3, ((1, 2), (2, 1))),
        (-1, ()),
    ],
)
def test_graph_rejects_bad_input(nv, edges):
    with pytest.raises(ValueError):
        Graph(nv, edges)


def test_partitioned_graph_validation():
    pg = PartitionedGraph(parts=({1, 2}, {3}), edges=((1, 3),))
    assert pg.num_vertices == 3
    with pytest.raises(ValueError):
        PartitionedGraph(parts=({1, 2},), edges=())  # one part
    with pytest.raises(ValueError):
        PartitionedGraph(parts=({1, 2}, {2, 3}), edges=())  # overlap
    with pytest.raises(ValueError):
        PartitionedGraph(parts=({1, 2}, {4}), edges=())  # hole
    with pytest.raises(ValueError):
        PartitionedGraph(parts=({1, 2}, {3}), edges=((1, 2),))  # intra-part edge


# ---------------------------------------------------------------------------
# Sidon sets
# ---------------------------------------------------------------------------


def test_sidon_small_values():
    assert sidon(1).hat_b == 2
    assert sidon(1).elements == (5,)
    s = sidon(3)
    assert s.hat_b == 5
    assert s.elements == (11, 24, 34)
    assert sidon(5).elements == (15, 32, 44, 58, 74)


@pytest.mark.parametrize("b", [1, 2, 7, 40, 200])
def test_sidon_sums_are_distinct(b):
    s = sidon(b).elements
    assert len(s) == b
    sums = [s[i] + s[j] for i in range(b) for j in range(i, b)]
    assert len(sums) == len(set(sums))
    assert max(s) <= 4 * b * b + 4 * b
    assert all(e > 0 for e in s)


def test_sidon_rejects_bad_b():
    with pytest.raises(ValueError):
        sidon(0)


# ---------------------------------------------------------------------------
# vertex cover
# ---------------------------------------------------------------------------


def brute_cover(graph, r):
    if not graph.edges:
        return True
    verts = range(1, graph.num_vertices + 1)
    for size in range(r + 1):
        for sub in itertools.combinations(verts, size):
            s = set(sub)
            if all(u in s or v in s for u, v in graph.edges):
                return True
    return False


def test_pad_half_vertex_cover():
    g = Graph(4, ((1, 2), (3, 4)))
    for r in range(5):
        g2, r2 = pad_half_vertex_cover(g, r)
        assert 2 * r2 == g2.num_vertices
        assert brute_cover(g2, r2) == brute_cover(g, r), (r, g2, r2)
    with pytest.raises(ValueError):
        pad_half_vertex_cover(g, 5)


def test_vc_to_cmpv_structure():
    g = Graph(4, ((1, 2), (2, 3), (3, 4)))
    inst = vc_to_cmpv(g)
    assert (inst.variant, inst.m, inst.n, inst.tau) == ("C", 4, 2, 3)
    assert (inst.k, inst.ell, inst.x) == (2, 0, 1)
    assert inst.ballots == ((1, 2), (2, 3), (3, 4))
    assert brute_force(inst).answer is True  # {2, 3} covers


def test_vc_to_cmpv_edgeless_and_odd():
    verdict = vc_to_cmpv(Graph(2, ()))
    assert isinstance(verdict, TrivialVerdict) and verdict.answer is True
    with pytest.raises(PreconditionError):
        vc_to_cmpv(Graph(3, ((1, 2),)))


def test_vc_to_cmpv_random_equivalence():
    rng = random.Random(17)
    for _ in range(25):
        nv = rng.choice([2, 4, 6, 8])
        pool = list(itertools.combinations(range(1, nv + 1), 2))
        g = Graph(nv, tuple(rng.sample(pool, rng.randint(1, len(pool)))))
        out = vc_to_cmpv(g)
        assert brute_force(out).answer == brute_cover(g, nv // 2), g


# ---------------------------------------------------------------------------
# normalization and variant swap
# ---------------------------------------------------------------------------


def test_normalize_half_pads_candidates():
    inst = random_instance(2, 6, 2, 1, 0, 1, "C", seed=2)
    norm = cmpv_normalize_half(inst)
    assert 2 * norm.k == norm.m
    assert norm.n == 2 + 2 * 4  # one block of agents per new candidate
    assert norm.x == 1 + 2 * 4
    assert brute_force(norm).answer == brute_force(inst).answer


def test_normalize_half_pads_never_approved():
    inst = random_instance(2, 2, 2, 3, 0, 1, "C", seed=3)
    norm = cmpv_normalize_half(inst)
    assert (norm.m, norm.k, norm.n, norm.x) == (6, 3, 2, 1)
    assert brute_force(norm).answer == brute_force(inst).answer


def test_normalize_half_identity():
    inst = random_instance(2, 4, 2, 2, 0, 1, "C", seed=4)
    assert cmpv_normalize_half(inst) is inst


def test_cmpv_to_rmpv_shape_and_answers():
    rng = random.Random(5)
    for trial in range(40):
        inst = random_instance(
            rng.randint(1, 3), 4, rng.randint(1, 3), 2, 0, rng.randint(1, 2),
            "C", abstain_probability=0.3, seed=trial,
        )
        rev = cmpv_to_rmpv(inst)
        assert rev.variant == "R"
        assert rev.tau == 2 * inst.tau + 1
        assert rev.m == inst.m + 2
        assert rev.k == inst.k + 1
        assert rev.ell == 2 * rev.k == rev.m
        assert brute_force(rev).answer == brute_force(inst).answer, inst


def test_cmpv_to_rmpv_preconditions(e1_cmpv):
    with pytest.raises(PreconditionError):
        cmpv_to_rmpv(e1_cmpv)  # ell != 0
    with pytest.raises(PreconditionError):
        cmpv_to_rmpv(random_instance(2, 4, 2, 1, 0, 1, "C", seed=1))  # k != m/2


# ---------------------------------------------------------------------------
# lifts
# ---------------------------------------------------------------------------


def test_lift_ell1_shape_and_answers():
    rng = random.Random(6)
    for trial in range(30):
        inst = random_instance(
            2, rng.randint(1, 4), rng.randint(1, 4), rng.randint(1, 2), 0, 1,
            "C", abstain_probability=0.3, seed=trial,
        )
        lifted = lift_ell1(inst)
        assert (lifted.ell, lifted.x) == (1, 5)
        assert lifted.m == inst.m + 3 and lifted.n == 6
        assert brute_force(lifted).answer == brute_force(inst).answer, inst
    with pytest.raises(PreconditionError):
        lift_ell1(random_instance(2, 3, 2, 1, 1, 1, "C", seed=0))


def test_lift_ell_2km2_shape_and_answers():
    rng = random.Random(7)
    for trial in range(30):
        k = rng.randint(1, 2)
        inst = random_instance(
            2, 2 * k, rng.randint(1, 4), k, 2 * k, 1, "R",
            abstain_probability=0.3, seed=trial,
        )
        lifted = lift_ell_2km2(inst)
        assert lifted.ell == 2 * lifted.k - 2
        assert lifted.m == inst.m + 1 and lifted.n == 4 and lifted.x == 3
        assert brute_force(lifted).answer == brute_force(inst).answer, inst
    with pytest.raises(PreconditionError):
        lift_ell_2km2(random_instance(2, 2, 2, 1, 1, 1, "R", seed=0))


# ---------------------------------------------------------------------------
# AND-compositions
# ---------------------------------------------------------------------------


def _instances_with_answer(variant, ell, m, want, count):
    found = []
    seed = 0
    while len(found) < count:
        seed += 1
        inst = random_instance(2, m, 2, 1, ell, 1, variant,
                               abstain_probability=0.3, seed=seed)
        if brute_force(inst).answer is want:
            found.append(inst)
    return found


def test_and_compose_cmpv_patterns():
    yes = _instances_with_answer("C", 1, 3, True, 2)
    no = _instances_with_answer("C", 1, 3, False, 2)
    for pattern in itertools.product([True, False], repeat=2):
        pool = {True: iter(yes), False: iter(no)}
        inputs = [next(pool[a]) for a in pattern]
        out = and_compose_cmpv(inputs)
        assert out.tau == 2 * 2 + 2 * 1
        assert (out.k, out.ell, out.x) == (2, 1, 3)
        assert brute_force(out).answer is all(pattern), pattern
    single = and_compose_cmpv([yes[0]])
    assert brute_force(single).answer is True


def test_and_compose_cmpv_validation():
    ell0 = random_instance(2, 3, 2, 1, 0, 1, "C", seed=1)
    with pytest.raises(ValueError):
        and_compose_cmpv([ell0])
    a = random_instance(2, 3, 2, 1, 1, 1, "C", seed=1)
    b = random_instance(2, 4, 2, 1, 1, 1, "C", seed=1)
    with pytest.raises(ValueError):
        and_compose_cmpv([a, b])
    with pytest.raises(ValueError):
        and_compose_cmpv([])


def test_and_compose_rmpv_patterns():
    yes = _instances_with_answer("R", 2, 2, True, 2)
    no = _instances_with_answer("R", 2, 2, False, 2)
    for pattern in itertools.product([True, False], repeat=2):
        pool = {True: iter(yes), False: iter(no)}
        inputs = [next(pool[a]) for a in pattern]
        out = and_compose_rmpv(inputs)
        assert out.tau == 2 * 2 + 1
        assert out.n == 2 * 4 and out.m == 2 + 1 + 2
        assert (out.k, out.ell, out.x) == (4, 2, 7)
        assert brute_force(out).answer is all(pattern), pattern


def test_and_compose_rmpv_validation():
    bad = random_instance(2, 3, 2, 1, 2, 1, "R", seed=1)  # m != ell
    with pytest.raises(ValueError):
        and_compose_rmpv([bad])


# ---------------------------------------------------------------------------
# multicolored clique
# ---------------------------------------------------------------------------


def brute_clique(pg):
    eset = set(pg.edges)
    for combo in itertools.product(*[sorted(p) for p in pg.parts]):
        if all((min(a, b), max(a, b)) in eset
               for a, b in itertools.combinations(combo, 2)):
            return True
    return False


def test_mcc_structure():
    pg = PartitionedGraph(parts=({1, 2}, {3, 4}), edges=((1, 3), (2, 4)))
    inst = mcc_to_cmpv(pg)
    assert inst.variant == "C" and inst.ell == 0
    assert inst.m == 4 + 2  # vertices then edges
    assert inst.tau == 2 + 3 * 1
    assert inst.k == 2 + 1
    s = sidon(4).elements
    assert inst.x == 2 * s[-1]
    # vertex-selection stages approve each vertex exactly x times
    for t, part in ((1, (1, 2)), (2, (3, 4))):
        row = inst.counts[t - 1]
        assert all(row[v] == inst.x for v in part)
        assert sum(row) == inst.x * len(part)


def test_mcc_exhaustive_two_parts():
    parts = (frozenset({1, 2}), frozenset({3, 4}))
    slots = [(u, v) for u in (1, 2) for v in (3, 4)]
    for bits in itertools.product([0, 1], repeat=4):
        edges = tuple(e for e, b in zip(slots, bits) if b)
        pg = PartitionedGraph(parts=parts, edges=edges)
        inst = mcc_to_cmpv(pg)
        assert brute_force(inst).answer == brute_clique(pg), pg


def test_mcc_three_parts_exhaustive():
    parts = (frozenset({1}), frozenset({2}), frozenset({3, 4}))
    slots = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4)]
    for bits in itertools.product([0, 1], repeat=5):
        edges = tuple(e for e, b in zip(slots, bits) if b)
        pg = PartitionedGraph(parts=parts, edges=edges)
        inst = mcc_to_cmpv(pg)
        assert inst.tau == 3 + 3 * 3 and inst.k == 3 + 3
        assert brute_force(inst).answer == brute_clique(pg), pg


def test_mcc_rejects_empty_part():
    with pytest.raises(PreconditionError):
        mcc_to_cmpv(PartitionedGraph(parts=({1}, frozenset(), {2}), edges=((1, 2),)))


# ---------------------------------------------------------------------------
# random instances
# ---------------------------------------------------------------------------


def test_random_instance_is_deterministic():
    a = random_instance(3, 4, 2, 1, 1, 2, "C", abstain_probability=0.4, seed=99)
    b = random_instance(3, 4, 2, 1, 1, 2, "C", abstain_probability=0.4, seed=99)
    c = random_instance(3, 4, 2, 1, 1, 2, "C", abstain_probability=0.4, seed=100)
    assert a == b
    assert a != c


def test_random_instance_abstain_extremes():
    allin = random_instance(5, 3, 2, 1, 0, 1, "C", abstain_probability=0.0, seed=1)
    assert all(e != 0 for row in allin.ballots for e in row)
    allout = random_instance(5, 3, 2, 1, 0, 1, "C", abstain_probability=1.0, seed=1)
    assert all(e == 0 for row in allout.ballots for e in row)


def test_random_instance_validation():
    with pytest.raises(ValueError):
        random_instance(2, 3, 2, 1, 0, 1, "Z", seed=1)
    with pytest.raises(ValueError):
        random_instance(2, 3, 2, 1, 0, 1, "C", abstain_probability=1.5, seed=1)
    with pytest.raises(ValueError):
        random_instance(2, 0, 2, 1, 0, 1, "C", seed=1)
