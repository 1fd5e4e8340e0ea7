"""Exact decision procedures, each exploiting one small parameter.

* :func:`solve_unconstrained` handles the regimes where the transition
  constraint never binds and stages decouple.
* :func:`solve_layered_k` does reachability over explicit per-stage
  committees, effective for small committee bounds.
* :func:`solve_inout_ell` does reachability over committee-change
  witnesses, effective for small ``ell`` (revolutionary variant).
* :func:`solve_dp_tau` runs a dynamic program over per-stage profiles,
  effective for few stages.
* :func:`solve_auto` routes to the estimated-cheapest applicable method
  and falls back on budget errors.

Every solver returns a :class:`~mpvkit.core.SolveReport` whose witness,
when present, passes :func:`~mpvkit.core.verify`. Searches that would
exceed their state budget raise
:class:`~mpvkit.core.BudgetExceededError` rather than guessing.
"""

from __future__ import annotations

import time
from itertools import combinations
from math import comb

import numpy as np

from .core import (
    BudgetExceededError,
    CONSERVATIVE,
    Instance,
    PreconditionError,
    REVOLUTIONARY,
    SolveReport,
    feasible_committee,
)
from .oracle import _subsets_upto

DEFAULT_STATE_BUDGET = 5 * 10**7


def _elapsed_ms(start):
    return (time.perf_counter() - start) * 1000.0


# ---------------------------------------------------------------------------
# decoupled stages
# ---------------------------------------------------------------------------


def solve_unconstrained(instance: Instance) -> SolveReport:
    """Solve the regimes where the transition constraint never binds.

    Applicable when ``tau == 1``, when the variant is conservative with
    ``ell >= 2k`` (committees of size at most ``k`` can never differ by
    more than ``2k``), or revolutionary with ``ell == 0``. Stages then
    decouple and each is decided by its greedy top-``k`` committee, which
    maximizes the stage score. Raises :class:`PreconditionError` outside
    these regimes.
    """
    c_ok = instance.variant == CONSERVATIVE and instance.ell >= 2 * instance.k
    r_ok = instance.variant == REVOLUTIONARY and instance.ell == 0
    if not (instance.tau == 1 or c_ok or r_ok):
        raise PreconditionError(
            "greedy decoupling needs tau == 1, conservative ell >= 2k, "
            "or revolutionary ell == 0"
        )
    start = time.perf_counter()
    committees = []
    answer = True
    for t in range(1, instance.tau + 1):
        row = instance.counts[t - 1]
        order = sorted(range(1, instance.m + 1), key=lambda c: (-row[c], c))
        top = order[: min(instance.k, instance.m)]
        if sum(row[c] for c in top) < instance.x:
            answer = False
            break
        committees.append(frozenset(top))
    return SolveReport(
        answer=answer,
        witness=tuple(committees) if answer else None,
        algorithm="greedy",
        stats={"states": instance.tau, "time_ms": _elapsed_ms(start)},
    )


# ---------------------------------------------------------------------------
# small committee bound: one layer of committees per stage
# ---------------------------------------------------------------------------


def solve_layered_k(instance: Instance, budget: int = DEFAULT_STATE_BUDGET) -> SolveReport:
    """Layered reachability over explicit per-stage committees.

    Each stage contributes a layer whose nodes are the committees of size
    at most ``k`` that meet the stage's score threshold; consecutive layers
    are connected when the symmetric difference respects ``ell``. The
    instance is a yes iff a path crosses all layers. For the conservative
    variant the candidate pool shrinks to candidates approved at least
    once: dropping never-approved candidates from a solution keeps scores,
    shrinks sizes, and shrinks symmetric differences, so some solution
    avoids them.

    Budget counts layer nodes plus examined arcs.
    """
    start = time.perf_counter()
    if instance.variant == CONSERVATIVE:
        pool = [
            c
            for c in range(1, instance.m + 1)
            if any(row[c] for row in instance.counts)
        ]
    else:
        pool = list(range(1, instance.m + 1))
    node_bound = sum(comb(len(pool), j) for j in range(min(instance.k, len(pool)) + 1))
    if node_bound * instance.tau > budget:
        raise BudgetExceededError(
            f"{node_bound} committees per layer over {instance.tau} stages "
            f"exceed the budget of {budget}"
        )
    subsets = list(_subsets_upto(pool, instance.k))
    layers = []
    states = 0
    for t in range(instance.tau):
        row = instance.counts[t]
        nodes = [s for s in subsets if sum(row[c] for c in s) >= instance.x]
        states += len(nodes)
        layers.append(nodes)

    conservative = instance.variant == CONSERVATIVE
    ell = instance.ell
    # reach entries are (committee, parent entry) linked lists
    reach = [(committee, None) for committee in layers[0]]
    for t in range(1, instance.tau):
        if not reach:
            break
        cur = []
        for committee in layers[t]:
            for entry in reach:
                states += 1
                if states > budget:
                    raise BudgetExceededError(
                        f"arc scan exceeded the budget of {budget}"
                    )
                d = len(entry[0] ^ committee)
                if (d <= ell) if conservative else (d >= ell):
                    cur.append((committee, entry))
                    break
        reach = cur

    witness = None
    if reach:
        entry = reach[0]
        chain = []
        while entry is not None:
            chain.append(entry[0])
            entry = entry[1]
        witness = tuple(reversed(chain))
    return SolveReport(
        answer=witness is not None,
        witness=witness,
        algorithm="layered-k",
        stats={"states": states, "time_ms": _elapsed_ms(start)},
    )


# ---------------------------------------------------------------------------
# small ell, revolutionary: witnesses of the change between stages
# ---------------------------------------------------------------------------


def solve_inout_ell(instance: Instance, budget: int = DEFAULT_STATE_BUDGET) -> SolveReport:
    """Layered reachability over committee-change witnesses (revolutionary).

    A node of layer ``i`` (one layer per consecutive stage pair) is a pair
    of disjoint candidate sets ``(X, Y)`` with ``|X| + |Y| == ell``: the
    members of ``X`` sit in the stage-``i`` committee and leave, the
    members of ``Y`` are new in the stage-``i+1`` committee. A change of
    size at least ``ell`` always contains such an exact witness, and on
    any source-sink path ``X`` and ``Y`` embed into committees, so only
    pairs with both sides of size at most ``min(k, ell)`` are
    materialized. Arcs exist when adjacent witnesses are compatible and
    the stage between them has a committee including/excluding what the
    witnesses dictate, checked greedily.

    Raises :class:`PreconditionError` for the conservative variant;
    ``tau == 1`` and ``ell == 0`` delegate to the greedy solver.
    """
    if instance.variant != REVOLUTIONARY:
        raise PreconditionError(
            "change-witness search applies to the revolutionary variant only"
        )
    if instance.tau == 1 or instance.ell == 0:
        return solve_unconstrained(instance)

    start = time.perf_counter()
    m, k, ell, x, tau = instance.m, instance.k, instance.ell, instance.x, instance.tau
    cap = min(k, ell)
    lo = max(0, ell - cap)
    splits = sum(comb(ell, j) for j in range(lo, cap + 1)) if ell <= m else 0
    if splits == 0:
        # no admissible witness pair, so no two committees can differ enough
        return SolveReport(
            answer=False,
            witness=None,
            algorithm="inout-ell",
            stats={"states": 0, "time_ms": _elapsed_ms(start)},
        )
    node_count = comb(m, ell) * splits
    work_bound = node_count * (tau - 1) + node_count * node_count * max(0, tau - 2)
    if work_bound > budget:
        raise BudgetExceededError(
            f"{node_count} witness pairs per layer exceed the budget of {budget}"
        )

    nodes = []
    for union in combinations(range(1, m + 1), ell):
        uset = frozenset(union)
        for jx in range(lo, cap + 1):
            for xs in combinations(union, jx):
                outgoing = frozenset(xs)
                nodes.append((outgoing, uset - outgoing))

    orders = [
        sorted(range(1, m + 1), key=lambda c, row=row: (-row[c], c))
        for row in instance.counts
    ]

    def feasible(t, required, forbidden):
        # same decision as feasible_committee(...) is not None, but with the
        # stage's candidate order precomputed and an early exit at x
        if len(required) > k:
            return False
        row = instance.counts[t - 1]
        total = sum(row[c] for c in required)
        size = len(required)
        if total >= x:
            return True
        for c in orders[t - 1]:
            if size >= k:
                break
            if c in required or c in forbidden:
                continue
            size += 1
            total += row[c]
            if total >= x:
                return True
        return False

    states = len(nodes) * (tau - 1)
    examined = 0
    reach = []
    for idx, (out_set, in_set) in enumerate(nodes):
        examined += 1
        if feasible(1, out_set, in_set):
            reach.append((idx, None))
    for stage in range(2, tau):
        if not reach:
            break
        cur = []
        for idx, (out2, in2) in enumerate(nodes):
            for entry in reach:
                examined += 1
                if states + examined > budget:
                    raise BudgetExceededError(
                        f"arc scan exceeded the budget of {budget}"
                    )
                out1, in1 = nodes[entry[0]]
                if out1 & out2 or in1 & in2:
                    continue
                if feasible(stage, in1 | out2, out1 | in2):
                    cur.append((idx, entry))
                    break
        reach = cur

    goal = None
    for entry in reach:
        out_set, in_set = nodes[entry[0]]
        examined += 1
        if feasible(tau, in_set, out_set):
            goal = entry
            break

    if goal is None:
        return SolveReport(
            answer=False,
            witness=None,
            algorithm="inout-ell",
            stats={"states": states + examined, "time_ms": _elapsed_ms(start)},
        )

    chain = []
    entry = goal
    while entry is not None:
        chain.append(nodes[entry[0]])
        entry = entry[1]
    chain.reverse()
    committees = [feasible_committee(instance, 1, chain[0][0], chain[0][1])]
    for i in range(1, tau - 1):
        out1, in1 = chain[i - 1]
        out2, in2 = chain[i]
        committees.append(feasible_committee(instance, i + 1, in1 | out2, out1 | in2))
    out_last, in_last = chain[-1]
    committees.append(feasible_committee(instance, tau, in_last, out_last))
    assert all(c is not None for c in committees)
    return SolveReport(
        answer=True,
        witness=tuple(committees),
        algorithm="inout-ell",
        stats={"states": states + examined, "time_ms": _elapsed_ms(start)},
    )


# ---------------------------------------------------------------------------
# few stages: dynamic programming over per-stage profiles
# ---------------------------------------------------------------------------


def _unpack(packed, radii, mult):
    out = np.empty((packed.size, len(radii)), dtype=np.int64)
    for i, r in enumerate(radii):
        out[:, i] = (packed // mult[i]) % r
    return out


def solve_dp_tau(instance: Instance, budget: int = DEFAULT_STATE_BUDGET) -> SolveReport:
    """Dynamic programming over per-stage size/difference/score profiles.

    Candidates are processed one at a time. A state records, for the
    partially built committees, every stage's current size, every
    consecutive pair's current symmetric difference (conservative: kept
    exact and pruned above ``ell``; revolutionary: clipped at ``ell``),
    and every stage's score clipped at ``x``. Candidate ``c`` advances a
    state by choosing the set of stages whose committee will contain
    ``c``; the update depends only on that set and on ``c``'s per-stage
    approval counts, so whole state batches advance at once and runs of
    identical candidates only need their newly discovered states
    reprocessed. The instance is a yes iff some final state has every
    score clipped at ``x`` (and, revolutionary, every difference clipped
    at ``ell``).

    States are packed into int64 keys; the whole run is vectorized and
    deterministic. Budget counts distinct states discovered.
    """
    start = time.perf_counter()
    tau, k, m, x, ell = instance.tau, instance.k, instance.m, instance.x, instance.ell
    conservative = instance.variant == CONSERVATIVE

    def report(answer, witness, states):
        return SolveReport(
            answer=answer,
            witness=witness,
            algorithm="dp-tau",
            stats={"states": states, "time_ms": _elapsed_ms(start)},
        )

    # a stage whose best k candidates miss x makes the answer no outright
    for row in instance.counts:
        if sum(sorted(row[1:], reverse=True)[:k]) < x:
            return report(False, None, 0)
    if not conservative and ell > 2 * k and tau >= 2:
        # committees of size <= k can never differ by more than 2k
        return report(False, None, 0)

    dcap = min(ell, 2 * k) if conservative else ell
    radii = [k + 1] * tau + [dcap + 1] * (tau - 1) + [x + 1] * tau
    capacity = 1
    for r in radii:
        capacity *= r
    if capacity > 2**62:
        raise BudgetExceededError(
            f"profile space of size {capacity} cannot be packed into 64-bit keys"
        )
    width = 3 * tau - 1
    mult = np.empty(width, dtype=np.int64)
    acc = 1
    for i, r in enumerate(radii):
        mult[i] = acc
        acc *= r

    fingerprints = []
    for f in range(1, 1 << tau):
        stages = [t for t in range(tau) if f >> t & 1]
        base = np.zeros(width, dtype=np.int64)
        for t in stages:
            base[t] = 1
        for t in range(tau - 1):
            if ((f >> t) & 1) != ((f >> (t + 1)) & 1):
                base[tau + t] = 1
        fingerprints.append((f, base, stages))

    seen = np.zeros(1, dtype=np.int64)  # packed key 0 is the empty profile
    frontier = seen
    layer_maps = []  # (candidate, new keys sorted, parent keys, fingerprints)
    prev_col = None
    for c in range(1, m + 1):
        col = tuple(instance.counts[t][c] for t in range(tau))
        if conservative and not any(col):
            # unapproved candidates only grow sizes and differences here
            continue
        if col == prev_col:
            if frontier.size == 0:
                continue
            sources_packed = frontier
        else:
            sources_packed = seen
            prev_col = col
        sources = _unpack(sources_packed, radii, mult)

        packed_parts, parent_parts, f_parts = [], [], []
        for f, base, stages in fingerprints:
            delta = base.copy()
            for t in stages:
                delta[2 * tau - 1 + t] = col[t]
            new = sources + delta
            mask = (new[:, :tau] <= k).all(axis=1)
            if conservative and tau >= 2:
                mask &= (new[:, tau : 2 * tau - 1] <= ell).all(axis=1)
            if not mask.all():
                new = new[mask]
                parents = sources_packed[mask]
            else:
                parents = sources_packed
            if new.shape[0] == 0:
                continue
            if not conservative and tau >= 2:
                np.minimum(new[:, tau : 2 * tau - 1], ell, out=new[:, tau : 2 * tau - 1])
            np.minimum(new[:, 2 * tau - 1 :], x, out=new[:, 2 * tau - 1 :])
            packed_parts.append(new @ mult)
            parent_parts.append(parents)
            f_parts.append(np.full(new.shape[0], f, dtype=np.int64))

        if not packed_parts:
            frontier = np.empty(0, dtype=np.int64)
            continue
        packed_all = np.concatenate(packed_parts)
        parent_all = np.concatenate(parent_parts)
        f_all = np.concatenate(f_parts)
        # keep, per key, the smallest (fingerprint, parent) for determinism
        order = np.lexsort((parent_all, f_all, packed_all))
        packed_all = packed_all[order]
        parent_all = parent_all[order]
        f_all = f_all[order]
        first = np.ones(packed_all.size, dtype=bool)
        first[1:] = packed_all[1:] != packed_all[:-1]
        packed_all = packed_all[first]
        parent_all = parent_all[first]
        f_all = f_all[first]
        fresh = ~np.isin(packed_all, seen, assume_unique=True)
        frontier = packed_all[fresh]
        if frontier.size:
            layer_maps.append((c, frontier, parent_all[fresh], f_all[fresh]))
            seen = np.union1d(seen, frontier)
            if seen.size > budget:
                raise BudgetExceededError(
                    f"{seen.size} profiles exceed the budget of {budget}"
                )

    final = _unpack(seen, radii, mult)
    ok = (final[:, 2 * tau - 1 :] == x).all(axis=1)
    if not conservative and tau >= 2:
        ok &= (final[:, tau : 2 * tau - 1] == ell).all(axis=1)
    hits = np.flatnonzero(ok)
    if hits.size == 0:
        return report(False, None, int(seen.size))

    target = int(seen[hits[0]])
    chosen = {}
    for c, keys, parents, fps in reversed(layer_maps):
        if target == 0:
            break
        pos = int(np.searchsorted(keys, target))
        if pos < keys.size and int(keys[pos]) == target:
            chosen[c] = int(fps[pos])
            target = int(parents[pos])
    assert target == 0
    committees = [set() for _ in range(tau)]
    for c, f in chosen.items():
        for t in range(tau):
            if f >> t & 1:
                committees[t].add(c)
    witness = tuple(frozenset(s) for s in committees)
    return report(True, witness, int(seen.size))


# ---------------------------------------------------------------------------
# portfolio routing
# ---------------------------------------------------------------------------


def solve_auto(instance: Instance, budget: int = DEFAULT_STATE_BUDGET) -> SolveReport:
    """Route to the estimated-cheapest applicable solver.

    Greedy decoupling is used whenever its precondition holds. Otherwise
    the candidates are ranked by crude state estimates (layered
    ``tau * m**k``, profile DP
    ``(k+1)**tau * (dcap+1)**(tau-1) * (x+1)**tau * m``, change witnesses
    ``tau * m**(2 ell)`` for the revolutionary variant, brute force as the
    last resort) and tried in that order; a solver that raises
    :class:`BudgetExceededError` hands over to the next one. When every
    attempt fails the raised budget error lists all estimates.
    """
    from .oracle import brute_force

    tau, k, m, x, ell, n = (
        instance.tau,
        instance.k,
        instance.m,
        instance.x,
        instance.ell,
        instance.n,
    )
    c_ok = instance.variant == CONSERVATIVE and ell >= 2 * k
    r_ok = instance.variant == REVOLUTIONARY and ell == 0
    if tau == 1 or c_ok or r_ok:
        return solve_unconstrained(instance)

    dcap = min(ell, 2 * k)
    x_eff = min(x, n)
    entries = [
        (tau * m**k, 0, "layered-k", solve_layered_k),
        (
            (k + 1) ** tau * (dcap + 1) ** (tau - 1) * (x_eff + 1) ** tau * m,
            1,
            "dp-tau",
            solve_dp_tau,
        ),
    ]
    if instance.variant == REVOLUTIONARY:
        entries.append((tau * m ** (2 * ell), 2, "inout-ell", solve_inout_ell))
    entries.append(
        (sum(comb(m, j) for j in range(min(k, m) + 1)) ** tau, 3, "brute-force", brute_force)
    )
    entries.sort(key=lambda e: (e[0], e[1]))

    failures = []
    for estimate, _, name, solver in entries:
        try:
            return solver(instance, budget=budget)
        except BudgetExceededError as exc:
            failures.append(f"{name} (estimate {estimate}): {exc}")
    raise BudgetExceededError("; ".join(failures))
