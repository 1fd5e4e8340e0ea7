"""Data reduction: candidate-count kernels and weight shrinking.

Two reduction families:

* never-approved-candidate rules bounding the candidate count by a
  function of agents and stages (:func:`kernel_ntau_cmpv`,
  :func:`kernel_ntau_rmpv`), with recorded id mappings so witnesses of
  the reduced instance translate back, and
* score compression bounding every weight's bit size by a polynomial in
  candidates and stages (:func:`kernel_mtau`), built on
  :func:`shrink_weights`.

The weighted form is first-class here: :func:`to_weighted` converts
ballots to per-stage candidate weights, :func:`solve_weighted` decides
weighted instances by brute force in exact arithmetic, and
:func:`weighted_to_unit` converts back when stage totals are small
enough to spell out as individual agents.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from sympy import QQ, ZZ
from sympy.polys.matrices import DomainMatrix

from .core import (
    BudgetExceededError,
    CONSERVATIVE,
    Instance,
    PreconditionError,
    REVOLUTIONARY,
    SolveReport,
    TrivialVerdict,
    WeightedInstance,
)
from .oracle import DEFAULT_SEQUENCE_BUDGET, _sequence_search


@dataclass
class KernelResult:
    """Outcome of a candidate-count kernelization.

    Either ``verdict`` is set (the rule decided the instance outright) or
    ``instance`` holds the reduced instance together with ``id_map``,
    which maps each reduced candidate id to the original id it stands
    for. ``gap`` marks revolutionary inputs with k > n whose candidate
    count landed strictly between n*tau and k*tau, where no further rule
    applies.
    """

    kind: str
    instance: Optional[Instance] = None
    verdict: Optional[TrivialVerdict] = None
    id_map: Optional[dict] = None
    gap: bool = False
    stage_fillers: Optional[tuple] = field(default=None, repr=False)

    def lift(self, committees) -> tuple:
        """Translate a reduced-instance solution into an original-instance one.

        Maps candidate ids through ``id_map`` and, after the revolutionary
        rescaling rule, re-adds the reserved never-approved fillers
        (pairwise disjoint across stages) that restore the original
        committee size and change bounds.
        """
        if self.verdict is not None:
            raise ValueError("nothing to lift: the kernel decided the instance")
        committees = tuple(frozenset(c) for c in committees)
        if len(committees) != self.instance.tau:
            raise ValueError(
                f"solution has {len(committees)} committees, "
                f"instance has {self.instance.tau} stages"
            )
        lifted = [frozenset(self.id_map[c] for c in committee) for committee in committees]
        if self.stage_fillers is not None:
            lifted = [
                committee | frozenset(fillers)
                for committee, fillers in zip(lifted, self.stage_fillers)
            ]
        return tuple(lifted)


def _approved_candidates(instance):
    return sorted({entry for row in instance.ballots for entry in row if entry})


def _compact(instance, keep, k, ell):
    """Restrict ``instance`` to the candidate ids in ``keep`` and renumber."""
    kept = sorted(keep)
    old_to_new = {old: new for new, old in enumerate(kept, start=1)}
    ballots = tuple(
        tuple(old_to_new[entry] if entry else 0 for entry in row)
        for row in instance.ballots
    )
    reduced = Instance(
        variant=instance.variant,
        m=len(kept),
        ballots=ballots,
        k=k,
        ell=ell,
        x=instance.x,
    )
    return reduced, {new: old for old, new in old_to_new.items()}


def _fill_to(approved, pool_size, target):
    """Approved ids plus the lowest never-approved ids in 1..pool_size, up to target."""
    keep = set(approved)
    for c in range(1, pool_size + 1):
        if len(keep) >= target:
            break
        keep.add(c)
    return keep


def kernel_ntau_cmpv(instance: Instance) -> KernelResult:
    """Bound the candidate count by agents times stages (conservative).

    Deletes never-approved candidates while more than ``n * tau`` remain.
    Dropping such a candidate from any solution keeps scores and shrinks
    sizes and symmetric differences, so the reduced instance is
    equivalent. Ids are compacted; the mapping is recorded.
    """
    if instance.variant != CONSERVATIVE:
        raise PreconditionError("this rule applies to the conservative variant")
    target = instance.n * instance.tau
    if instance.m <= target:
        identity = {c: c for c in range(1, instance.m + 1)}
        return KernelResult(kind="ntau-cmpv", instance=instance, id_map=identity)
    keep = _fill_to(_approved_candidates(instance), instance.m, target)
    reduced, id_map = _compact(instance, keep, instance.k, instance.ell)
    return KernelResult(kind="ntau-cmpv", instance=reduced, id_map=id_map)


def kernel_ntau_rmpv(instance: Instance) -> KernelResult:
    """Bound the candidate count for the revolutionary variant.

    Three rules, in order. With at least two stages and ``2k < ell`` the
    instance is a trivial no: consecutive committees of size at most
    ``k`` cannot differ by more than ``2k``. (A single-stage instance has
    no consecutive pair, so the rule is skipped there.) Then
    never-approved candidates are deleted while more than
    ``max(n, k) * tau`` remain. Finally, when ``k > n`` and exactly
    ``k * tau`` candidates remain, the instance rescales to ``n * tau``
    candidates with ``k' = n`` and ``ell' = max(0, ell - 2(k - n))``; the
    ``(k - n) * tau`` never-approved candidates dropped here are reserved
    per stage so :meth:`KernelResult.lift` can re-add them. When ``k > n``
    but the candidate count lands strictly between ``n * tau`` and
    ``k * tau``, no known rule bridges the gap and the result is flagged.
    """
    if instance.variant != REVOLUTIONARY:
        raise PreconditionError("this rule applies to the revolutionary variant")
    if instance.tau >= 2 and 2 * instance.k < instance.ell:
        return KernelResult(
            kind="ntau-rmpv",
            verdict=TrivialVerdict(
                False,
                f"committees of size at most k={instance.k} can never differ "
                f"by ell={instance.ell} > 2k candidates",
            ),
        )
    approved = _approved_candidates(instance)
    target = max(instance.n, instance.k) * instance.tau
    if instance.m > target:
        keep = _fill_to(approved, instance.m, target)
    else:
        keep = set(range(1, instance.m + 1))
    m2 = len(keep)

    k, ell = instance.k, instance.ell
    stage_fillers = None
    gap = False
    kind = "ntau-rmpv"
    if instance.k > instance.n:
        if m2 == instance.k * instance.tau:
            small = _fill_to(approved, instance.m, instance.n * instance.tau)
            small &= keep
            reserved = sorted(keep - small)
            chunk = instance.k - instance.n
            stage_fillers = tuple(
                tuple(reserved[i * chunk : (i + 1) * chunk])
                for i in range(instance.tau)
            )
            keep = small
            k = instance.n
            ell = max(0, instance.ell - 2 * chunk)
            kind = "ntau-rmpv-rescaled"
        elif m2 > instance.n * instance.tau:
            gap = True
    reduced, id_map = _compact(instance, keep, k, ell)
    return KernelResult(
        kind=kind,
        instance=reduced,
        id_map=id_map,
        gap=gap,
        stage_fillers=stage_fillers,
    )


# ---------------------------------------------------------------------------
# weighted form
# ---------------------------------------------------------------------------


def to_weighted(instance: Instance) -> WeightedInstance:
    """Replace ballots by per-stage candidate approval counts.

    A committee sequence satisfies the weighted score condition iff it
    satisfies the original one, because the plurality score already is a
    sum of per-candidate approval counts.
    """
    return WeightedInstance(
        variant=instance.variant,
        m=instance.m,
        weights=instance.counts,
        k=instance.k,
        ell=instance.ell,
        x=instance.x,
    )


def solve_weighted(
    winstance: WeightedInstance, budget: int = DEFAULT_SEQUENCE_BUDGET
) -> SolveReport:
    """Decide a weighted instance by exhaustive search, exact arithmetic."""
    start = time.perf_counter()
    solutions, extensions = _sequence_search(
        winstance.m,
        winstance.k,
        winstance.ell,
        winstance.x,
        winstance.tau,
        winstance.weights,
        winstance.variant == CONSERVATIVE,
        budget,
        1,
    )
    return SolveReport(
        answer=bool(solutions),
        witness=solutions[0] if solutions else None,
        algorithm="brute-force-weighted",
        stats={
            "states": extensions,
            "time_ms": (time.perf_counter() - start) * 1000.0,
        },
    )


def weighted_to_unit(winstance: WeightedInstance, cap: int = 10**6) -> Instance:
    """Spell a weighted instance out as unit-weight agents.

    Stage ``t`` gets ``w^t_c`` agents approving candidate ``c``; the agent
    count is the largest stage total and shorter stages pad with
    abstentions. Refuses with ``ValueError`` when some stage total
    exceeds ``cap``.
    """
    totals = [sum(row[1:]) for row in winstance.weights]
    n = max(totals)
    if n > cap:
        t = totals.index(n) + 1
        raise ValueError(
            f"stage {t} needs {n} agents, above the cap of {cap}"
        )
    ballots = []
    for row in winstance.weights:
        stage = []
        for c in range(1, winstance.m + 1):
            stage.extend([c] * row[c])
        stage.extend([0] * (n - len(stage)))
        ballots.append(tuple(stage))
    return Instance(
        variant=winstance.variant,
        m=winstance.m,
        ballots=tuple(ballots),
        k=winstance.k,
        ell=winstance.ell,
        x=winstance.x,
    )


# ---------------------------------------------------------------------------
# weight shrinking
# ---------------------------------------------------------------------------


def _simultaneous_approx(u, eps):
    """Small q with ||q*u - p||_inf <= eps for rational u in [-1, 1].

    Lattice rounding: reduce the basis {(theta, u), scaled unit vectors}
    and read q and p off the shortest reduced vector. Guarantees
    1 <= q <= (1/eps)^d * 2^ceil(d(d+1)/4) with integer p of
    max-norm at most q.
    """
    d = len(u)
    c = -(-(d * (d + 1)) // 4)
    theta = eps ** (d + 1) / 2**c
    denom = math.lcm(theta.denominator, *(v.denominator for v in u))
    first = [int(theta * denom)] + [int(v * denom) for v in u]
    rows = [first]
    for i in range(d):
        row = [0] * (d + 1)
        row[i + 1] = denom
        rows.append(row)
    mat = DomainMatrix([[ZZ(e) for e in row] for row in rows], (d + 1, d + 1), ZZ)
    best = mat.lll(delta=QQ(3, 4)).to_list()[0]
    v = [int(e) for e in best]
    a = Fraction(v[0], first[0])
    assert a.denominator == 1 and a != 0, "reduced vector lost the q component"
    q = int(a)
    if q < 0:
        q = -q
        v = [-e for e in v]
    p = []
    for i in range(d):
        num = q * u[i] * denom - v[i + 1]
        pi = Fraction(num, denom)
        assert pi.denominator == 1
        p.append(int(pi))
        assert abs(q * u[i] - p[-1]) <= eps
    return q, p


def _shrink(w, N):
    """Recursive core of shrink_weights over exact rationals."""
    d = len(w)
    support = [i for i, v in enumerate(w) if v]
    if not support:
        return [0] * d
    if len(support) == 1:
        out = [0] * d
        out[support[0]] = 1 if w[support[0]] > 0 else -1
        return out
    largest = max(abs(v) for v in w)
    u = [v / largest for v in w]
    eps = Fraction(1, 2 * N)
    q, p_sub = _simultaneous_approx([u[i] for i in support], eps)
    p = [0] * d
    for j, i in enumerate(support):
        p[i] = p_sub[j]
    for i in support:
        # entries at the max modulus get exact images, so the residual
        # support is strictly smaller and the recursion terminates
        if u[i] == 1:
            p[i] = q
        elif u[i] == -1:
            p[i] = -q
    residual = [q * u[i] - p[i] for i in range(d)]
    assert sum(1 for v in residual if v) < len(support)
    rbar = _shrink(residual, N)
    gap = (N - 1) * max((abs(v) for v in rbar), default=0) + 1
    return [gap * p[i] + rbar[i] for i in range(d)]


def shrink_weights(w, N: int):
    """Shrink integer weights, preserving all short inner-product signs.

    Returns a tuple of integers ``w2`` with

    * ``max(|w2[i]|) <= 2**(4*d**3) * N**(d*(d+2))`` for ``d = len(w)``,
    * ``sign(sum(w[i]*b[i])) == sign(sum(w2[i]*b[i]))`` for every integer
      vector ``b`` with ``sum(|b[i]|) <= N - 1``.

    In particular non-negative inputs stay non-negative and zeros stay
    zero (take ``b`` a unit vector). Raises ``ValueError`` for ``N < 2``.

    The construction normalizes by the largest modulus, replaces the
    normalized vector by a nearby rational point with one small
    denominator (simultaneous Diophantine approximation through exact
    lattice reduction), recurses on the residual, and recombines with a
    factor large enough that the approximation's signs dominate: short
    inner products with the residual are too small to flip them.
    """
    if not isinstance(N, int) or N < 2:
        raise ValueError(f"N must be an integer >= 2, got {N!r}")
    vec = []
    for v in w:
        if not isinstance(v, int):
            raise ValueError(f"weights must be integers, got {v!r}")
        vec.append(Fraction(v))
    return tuple(_shrink(vec, N))


def kernel_mtau(instance) -> WeightedInstance:
    """Compress stage scores to polynomially many bits in m and tau.

    Converts to the weighted form, concatenates all stage weight rows and
    the threshold into one vector of dimension ``m * tau + 1``, shrinks it
    with ``N = k + 2``, and splits the result back. Checking a committee
    sequence only ever compares a sum of at most ``k`` weights against
    the threshold, an inner product with a vector of l1-norm at most
    ``k + 1``, so exactly the same sequences are solutions. Accepts unit
    or weighted instances; candidate ids are untouched.
    """
    win = to_weighted(instance) if isinstance(instance, Instance) else instance
    flat = []
    for row in win.weights:
        flat.extend(row[1:])
    flat.append(win.x)
    shrunk = shrink_weights(flat, win.k + 2)
    new_x = shrunk[-1]
    assert new_x >= 1, "positive threshold must stay positive"
    rows = []
    for t in range(win.tau):
        rows.append((0,) + tuple(shrunk[t * win.m : (t + 1) * win.m]))
    return WeightedInstance(
        variant=win.variant,
        m=win.m,
        weights=tuple(rows),
        k=win.k,
        ell=win.ell,
        x=new_x,
    )
