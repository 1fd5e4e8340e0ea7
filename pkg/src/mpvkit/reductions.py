"""Hardness gadgets, parameter normalizations, and instance generators.

Constructive reductions between graph problems and multistage plurality
voting, the lifts that trade one constraint regime for another, the
AND-compositions used as evidence against small kernels, a Sidon set
generator backing the clique gadget, and a seeded random instance
generator for test corpora. Everything here is deterministic: profile
and candidate orderings are fixed so repeated runs emit identical
instances.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from math import comb, isqrt

import numpy as np

from .core import (
    CONSERVATIVE,
    Instance,
    PreconditionError,
    REVOLUTIONARY,
    TrivialVerdict,
    VARIANTS,
)

# ---------------------------------------------------------------------------
# graph types
# ---------------------------------------------------------------------------


def _normalize_edges(edges, num_vertices):
    norm = []
    for edge in edges:
        u, v = edge
        if not (isinstance(u, int) and isinstance(v, int)):
            raise ValueError(f"edge endpoints must be integers, got {edge!r}")
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        if not (1 <= u <= num_vertices and 1 <= v <= num_vertices):
            raise ValueError(f"edge {edge!r} outside 1..{num_vertices}")
        norm.append((u, v) if u < v else (v, u))
    if len(set(norm)) != len(norm):
        raise ValueError("duplicate edges")
    return tuple(sorted(norm))


@dataclass(frozen=True)
class Graph:
    """Undirected graph on vertices ``1..num_vertices``.

    No self-loops or duplicate edges; edges normalize to ``(u, v)`` with
    ``u < v`` and are kept sorted, which fixes the stage order of
    constructions that spend one stage per edge.
    """

    num_vertices: int
    edges: tuple

    def __post_init__(self):
        if not isinstance(self.num_vertices, int) or self.num_vertices < 0:
            raise ValueError(f"bad vertex count {self.num_vertices!r}")
        object.__setattr__(
            self, "edges", _normalize_edges(self.edges, self.num_vertices)
        )


@dataclass(frozen=True)
class PartitionedGraph:
    """Graph whose vertices ``1..h`` are partitioned into q >= 2 parts.

    Edges may only connect distinct parts. Parts are stored as
    frozensets; their union must be exactly ``1..h``.
    """

    parts: tuple
    edges: tuple

    def __post_init__(self):
        parts = tuple(frozenset(p) for p in self.parts)
        if len(parts) < 2:
            raise ValueError("need at least two parts")
        seen = set()
        for part in parts:
            for v in part:
                if not isinstance(v, int) or v < 1:
                    raise ValueError(f"bad vertex id {v!r}")
                if v in seen:
                    raise ValueError(f"vertex {v} appears in two parts")
                seen.add(v)
        total = len(seen)
        if seen != set(range(1, total + 1)):
            raise ValueError(f"parts must cover exactly 1..{total}")
        object.__setattr__(self, "parts", parts)
        edges = _normalize_edges(self.edges, total)
        part_of = {v: i for i, part in enumerate(parts) for v in part}
        for u, v in edges:
            if part_of[u] == part_of[v]:
                raise ValueError(f"edge ({u}, {v}) stays inside one part")
        object.__setattr__(self, "edges", edges)

    @property
    def num_vertices(self) -> int:
        return sum(len(p) for p in self.parts)


# ---------------------------------------------------------------------------
# Sidon sets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SidonSet:
    """Integers whose pairwise sums (repetitions included) are all distinct."""

    b: int
    hat_b: int
    elements: tuple


def sidon(b: int) -> SidonSet:
    """Sidon set of size ``b`` with elements below ``4b^2 + 4b``.

    Uses ``s_i = 2*hat_b*i + (i^2 mod hat_b)`` for ``i = 1..b`` where
    ``hat_b`` is the smallest prime above ``b`` (one exists below ``2b``
    by Bertrand's postulate; a numpy sieve finds it). Sums ``s_i + s_j``
    determine ``{i, j}`` because the quadratic residue part determines
    ``i + j`` and ``i*j`` modulo the prime.
    """
    if not isinstance(b, int) or b < 1:
        raise ValueError(f"b must be a positive integer, got {b!r}")
    limit = 2 * b + 2
    mask = np.ones(limit, dtype=bool)
    mask[:2] = False
    for p in range(2, isqrt(limit - 1) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    above = np.flatnonzero(mask[b + 1 :])
    hat_b = int(above[0]) + b + 1
    idx = np.arange(1, b + 1, dtype=np.int64)
    elements = 2 * hat_b * idx + (idx * idx) % hat_b
    return SidonSet(b=b, hat_b=hat_b, elements=tuple(int(e) for e in elements))


# ---------------------------------------------------------------------------
# vertex cover gadget
# ---------------------------------------------------------------------------


def pad_half_vertex_cover(graph: Graph, r: int):
    """Shift a vertex-cover target to exactly half the vertex count.

    Returns ``(graph', r')`` with ``r' = |V'|/2`` and the same cover
    answer. For ``r < |V|/2`` a clique on ``|V| - 2r + 2`` fresh vertices
    is attached (covering it takes all but one of them); for
    ``r > |V|/2`` the graph gains ``2r - |V|`` isolated vertices.
    """
    if not isinstance(r, int) or not 0 <= r <= graph.num_vertices:
        raise ValueError(f"cover size {r!r} outside 0..{graph.num_vertices}")
    nv = graph.num_vertices
    if 2 * r < nv:
        extra = nv - 2 * r + 2
        clique = combinations(range(nv + 1, nv + extra + 1), 2)
        return Graph(nv + extra, graph.edges + tuple(clique)), nv - r + 1
    if 2 * r > nv:
        return Graph(2 * r, graph.edges), r
    return graph, r


def vc_to_cmpv(graph: Graph):
    """Half-size vertex cover as a conservative instance with ``ell = 0``.

    One stage per edge, two agents approving its endpoints: a committee
    scores at stage ``t`` iff it hits edge ``t``, and ``ell = 0`` freezes
    one committee of size ``k = |V|/2`` across all stages, so the
    instance is a yes iff the graph has a vertex cover of that size.
    Edgeless graphs short-circuit to a direct yes verdict because a
    faithful instance would need zero stages.
    """
    if graph.num_vertices % 2:
        raise PreconditionError("the vertex count must be even")
    if not graph.edges:
        return TrivialVerdict(True, "an edgeless graph is covered by the empty set")
    return Instance(
        variant=CONSERVATIVE,
        m=graph.num_vertices,
        ballots=graph.edges,
        k=graph.num_vertices // 2,
        ell=0,
        x=1,
    )


# ---------------------------------------------------------------------------
# parameter normalizations and lifts
# ---------------------------------------------------------------------------


def cmpv_normalize_half(instance: Instance) -> Instance:
    """Pad a conservative ``ell = 0`` instance so that ``k = m/2``.

    ``k > m/2``: add ``2k - m`` never-approved candidates. ``k < m/2``:
    add ``m - 2k`` fresh candidates, each approved at every stage by
    ``n`` dedicated fresh agents, and raise ``x`` by ``n*(m - 2k)``;
    skipping any new candidate caps the score below the new threshold,
    so winning committees are the old ones plus all new candidates.
    """
    if instance.variant != CONSERVATIVE or instance.ell != 0:
        raise PreconditionError("normalization expects a conservative instance with ell=0")
    m, k, n = instance.m, instance.k, instance.n
    if 2 * k == m:
        return instance
    if 2 * k > m:
        return Instance(
            variant=CONSERVATIVE,
            m=2 * k,
            ballots=instance.ballots,
            k=k,
            ell=0,
            x=instance.x,
        )
    extra = m - 2 * k
    pad = []
    for j in range(extra):
        pad.extend([m + 1 + j] * n)
    pad = tuple(pad)
    ballots = tuple(row + pad for row in instance.ballots)
    return Instance(
        variant=CONSERVATIVE,
        m=m + extra,
        ballots=ballots,
        k=k + extra,
        ell=0,
        x=instance.x + n * extra,
    )


def cmpv_to_rmpv(instance: Instance) -> Instance:
    """Re-express a conservative ``ell = 0``, ``k = m/2`` instance as
    revolutionary.

    Two fresh candidates ``z`` and ``y``: odd output stages replay the
    input stages, every even stage has all agents approve ``y``, and one
    final stage has all approve ``z``. With ``k' = k + 1`` and
    ``ell' = 2k' = |C'|`` every transition must exchange the whole
    committee, which forces the original committee to reappear unchanged
    at every replayed stage; thresholds carry over.
    """
    if (
        instance.variant != CONSERVATIVE
        or instance.ell != 0
        or 2 * instance.k != instance.m
    ):
        raise PreconditionError(
            "expected a conservative instance with ell=0 and k = m/2; "
            "run cmpv_normalize_half first"
        )
    n = instance.n
    z, y = instance.m + 1, instance.m + 2
    rows = []
    for row in instance.ballots:
        rows.append(row)
        rows.append((y,) * n)
    rows.append((z,) * n)
    k2 = instance.k + 1
    return Instance(
        variant=REVOLUTIONARY,
        m=instance.m + 2,
        ballots=tuple(rows),
        k=k2,
        ell=2 * k2,
        x=instance.x,
    )


def lift_ell1(instance: Instance) -> Instance:
    """Lift a conservative ``ell = 0`` hardness instance to ``ell = 1``.

    For two-agent instances with ``x = 1``: three fresh candidates
    ``v'``, ``v``, ``w`` and four fresh agents. Agents 5 and 6 always
    approve ``w``; agents 3 and 4 approve ``w`` at odd stages, ``v'``
    at stages divisible by four, and ``v`` at the remaining even stages.
    Meeting ``x' = 5`` forces the committee to ride this rotation, and
    the single allowed change per transition is spent on it, freezing
    the original part; ``k' = k + 2``.
    """
    if (
        instance.variant != CONSERVATIVE
        or instance.n != 2
        or instance.ell != 0
        or instance.x != 1
    ):
        raise PreconditionError("expected a conservative instance with n=2, ell=0, x=1")
    vp, v, w = instance.m + 1, instance.m + 2, instance.m + 3
    rows = []
    for t, row in enumerate(instance.ballots, start=1):
        if t % 2:
            extra = w
        elif t % 4 == 0:
            extra = vp
        else:
            extra = v
        rows.append(row + (extra, extra, w, w))
    return Instance(
        variant=CONSERVATIVE,
        m=instance.m + 3,
        ballots=tuple(rows),
        k=instance.k + 2,
        ell=1,
        x=5,
    )


def lift_ell_2km2(instance: Instance) -> Instance:
    """Lift a full-change revolutionary instance to ``ell = 2k' - 2``.

    For two-agent instances with ``ell = 2k = m`` and ``x = 1``: one
    fresh candidate ``w`` approved by two fresh agents at every stage.
    Reaching ``x' = 3`` keeps ``w`` in every committee, so the remaining
    ``k`` slots still must swap completely; ``k' = k + 1``.
    """
    if (
        instance.variant != REVOLUTIONARY
        or instance.n != 2
        or instance.ell != 2 * instance.k
        or instance.m != 2 * instance.k
        or instance.x != 1
    ):
        raise PreconditionError("expected a revolutionary instance with n=2, ell=2k=m, x=1")
    w = instance.m + 1
    rows = tuple(row + (w, w) for row in instance.ballots)
    k2 = instance.k + 1
    return Instance(
        variant=REVOLUTIONARY,
        m=instance.m + 1,
        ballots=rows,
        k=k2,
        ell=2 * k2 - 2,
        x=3,
    )


# ---------------------------------------------------------------------------
# multicolored clique gadget
# ---------------------------------------------------------------------------


def mcc_to_cmpv(pgraph: PartitionedGraph) -> Instance:
    """Multicolored clique as a conservative instance with ``ell = 0``.

    Candidates are the vertices (keeping their ids) followed by the
    edges (fresh ids in edge order). Vertices carry Sidon-set ids so
    endpoint-id sums identify edges uniquely. Stages come in blocks:
    one vertex-selection profile per part (every vertex approved by x
    fresh agents), one edge-selection profile per part pair, then per
    pair two coherence profiles whose approval multiplicities encode
    "the chosen endpoints sum to the chosen edge" as two opposite
    inequalities. Each gadget owns a fresh agent block abstaining
    elsewhere. A committee of size ``k = q + C(q, 2)`` meeting
    ``x = 2 s_h`` everywhere must pick one vertex per part and one
    consistent edge per pair, which is possible iff the graph has a
    multicolored clique.

    A part pair without edges yields an all-abstain edge-selection
    stage, making the instance correctly a no.
    """
    parts = pgraph.parts
    q = len(parts)
    for i, part in enumerate(parts, start=1):
        if not part:
            raise PreconditionError(f"part {i} is empty")
    h = pgraph.num_vertices
    sid = sidon(h).elements
    ident = {v: sid[v - 1] for v in range(1, h + 1)}
    x = 2 * sid[-1]
    edge_candidate = {e: h + 1 + i for i, e in enumerate(pgraph.edges)}
    part_of = {v: i for i, part in enumerate(parts) for v in part}
    pair_edges = {pair: [] for pair in combinations(range(q), 2)}
    for e in pgraph.edges:
        i, j = sorted((part_of[e[0]], part_of[e[1]]))
        pair_edges[(i, j)].append(e)

    gadget_stages = []  # per gadget: list of stages, each a (candidate, count) list
    for part in parts:
        gadget_stages.append([[(v, x) for v in sorted(part)]])
    pairs = sorted(pair_edges)
    for pair in pairs:
        gadget_stages.append([[(edge_candidate[e], x) for e in pair_edges[pair]]])
    for i, j in pairs:
        both = sorted(parts[i] | parts[j])
        agree = [(v, ident[v]) for v in both]
        agree += [
            (edge_candidate[e], x - ident[e[0]] - ident[e[1]])
            for e in pair_edges[(i, j)]
        ]
        oppose = [(v, x // 2 - ident[v]) for v in both]
        oppose += [
            (edge_candidate[e], ident[e[0]] + ident[e[1]])
            for e in pair_edges[(i, j)]
        ]
        gadget_stages.append([agree, oppose])

    offsets = []
    n = 0
    for stages in gadget_stages:
        offsets.append(n)
        n += max((sum(count for _, count in stage) for stage in stages), default=0)
    rows = []
    for g, stages in enumerate(gadget_stages):
        for stage in stages:
            row = [0] * n
            pos = offsets[g]
            for candidate, count in stage:
                row[pos : pos + count] = [candidate] * count
                pos += count
            rows.append(tuple(row))
    assert len(rows) == q + 3 * comb(q, 2)
    return Instance(
        variant=CONSERVATIVE,
        m=h + len(pgraph.edges),
        ballots=tuple(rows),
        k=q + comb(q, 2),
        ell=0,
        x=x,
    )


# ---------------------------------------------------------------------------
# AND-compositions
# ---------------------------------------------------------------------------


def _check_same_shape(instances, head):
    for inst in instances:
        if (inst.n, inst.m, inst.tau, inst.k, inst.x) != (
            head.n,
            head.m,
            head.tau,
            head.k,
            head.x,
        ):
            raise ValueError("inputs must share n, m, tau, k, and x")


def and_compose_cmpv(instances) -> Instance:
    """Conjoin conservative ``ell = 1`` instances into one.

    Blocks replay the inputs over shared agent and candidate identities.
    A fresh candidate ``z`` is approved by ``n`` fresh shadow agents at
    every stage, raising every threshold to ``x + n``; between blocks,
    ``2k`` transfer stages in which all ``2n`` agents approve ``z`` let
    the committee migrate one change at a time. The output is a yes iff
    every input is.
    """
    instances = list(instances)
    if not instances:
        raise ValueError("need at least one instance")
    head = instances[0]
    for inst in instances:
        if inst.variant != CONSERVATIVE or inst.ell != 1:
            raise ValueError("inputs must be conservative with ell=1")
    _check_same_shape(instances, head)
    n = head.n
    z = head.m + 1
    transfer = (z,) * (2 * n)
    rows = []
    for b, inst in enumerate(instances):
        if b:
            rows.extend([transfer] * (2 * head.k))
        for row in inst.ballots:
            rows.append(row + (z,) * n)
    return Instance(
        variant=CONSERVATIVE,
        m=head.m + 1,
        ballots=tuple(rows),
        k=head.k + 1,
        ell=1,
        x=head.x + n,
    )


def and_compose_rmpv(instances) -> Instance:
    """Conjoin full-change revolutionary instances into one.

    Inputs need ``ell = 2k`` and exactly ``ell`` candidates. The output
    adds ``z`` and rotation candidates ``y_1..y_ell``, each approved at
    every block stage by its own ``n`` fresh agents, and a single
    transfer stage between blocks where all agents approve ``z``. The
    enlarged committees can always realize the full-change constraint
    across block boundaries, so the output is a yes iff every input is.
    """
    instances = list(instances)
    if not instances:
        raise ValueError("need at least one instance")
    head = instances[0]
    for inst in instances:
        if inst.variant != REVOLUTIONARY or inst.ell != 2 * inst.k or inst.m != inst.ell:
            raise ValueError("inputs must be revolutionary with m = ell = 2k")
    _check_same_shape(instances, head)
    n, m, ell = head.n, head.m, head.ell
    z = m + 1
    pad = (z,) * n
    for i in range(ell):
        pad += (m + 2 + i,) * n
    total_agents = n * (ell + 2)
    transfer = (z,) * total_agents
    rows = []
    for b, inst in enumerate(instances):
        if b:
            rows.append(transfer)
        for row in inst.ballots:
            rows.append(row + pad)
    return Instance(
        variant=REVOLUTIONARY,
        m=m + 1 + ell,
        ballots=tuple(rows),
        k=head.k + ell + 1,
        ell=ell,
        x=head.x + n * (ell + 1),
    )


# ---------------------------------------------------------------------------
# random instances
# ---------------------------------------------------------------------------


def random_instance(
    n: int,
    m: int,
    tau: int,
    k: int,
    ell: int,
    x: int,
    variant: str,
    abstain_probability: float = 0.0,
    seed: int = 0,
) -> Instance:
    """Seeded random instance; same seed, same instance, on any platform.

    Each agent independently abstains with ``abstain_probability`` at
    each stage and otherwise approves a uniformly random candidate.
    Randomness comes from Python's Mersenne Twister (``random.Random``)
    seeded with ``seed``.
    """
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}, got {variant!r}")
    if not 0.0 <= abstain_probability <= 1.0:
        raise ValueError(f"abstain_probability {abstain_probability!r} outside [0, 1]")
    if n < 0 or m < 1 or tau < 1 or k < 1 or ell < 0 or x < 1:
        raise ValueError("parameters out of range")
    rng = random.Random(seed)
    rows = []
    for _ in range(tau):
        row = tuple(
            0 if rng.random() < abstain_probability else rng.randint(1, m)
            for _ in range(n)
        )
        rows.append(row)
    return Instance(variant=variant, m=m, ballots=tuple(rows), k=k, ell=ell, x=x)
