"""Instance model and solution checking for multistage plurality voting.

An instance fixes a set of agents, a set of candidates, and a sequence of
voting stages. At every stage each agent approves exactly one candidate or
abstains. A solution is a sequence of committees, one per stage, where each
committee has at most ``k`` members and plurality score at least ``x``, and
the symmetric difference between consecutive committees is at most ``ell``
(conservative variant ``"C"``) or at least ``ell`` (revolutionary variant
``"R"``).

Conventions used throughout the package:

* candidates are numbered ``1..m``; ``0`` in a ballot means abstention,
* stages are numbered ``1..tau``,
* committees are ``frozenset`` objects, committee sequences are tuples of
  frozensets of length ``tau``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

CONSERVATIVE = "C"
REVOLUTIONARY = "R"
VARIANTS = (CONSERVATIVE, REVOLUTIONARY)


class PreconditionError(ValueError):
    """An operation was invoked outside the parameter regime it supports."""


class BudgetExceededError(RuntimeError):
    """A search ran out of budget before producing an answer.

    This is deliberately distinct from a "no" answer: the question was not
    decided either way.
    """


@dataclass(frozen=True)
class TrivialVerdict:
    """A yes/no answer that was decided without building or solving anything."""

    answer: bool
    reason: str


@dataclass
class SolveReport:
    """Outcome of a solver run.

    Attributes
    ----------
    answer : bool
        Whether a valid committee sequence exists.
    witness : tuple of frozenset or None
        A valid committee sequence if ``answer`` is true and the solver
        produced one. Always passes :func:`verify`.
    algorithm : str
        Name of the algorithm that produced the answer.
    stats : dict
        Counters; always contains ``"states"`` (search effort in
        algorithm-specific units) and ``"time_ms"``.
    """

    answer: bool
    witness: Optional[tuple]
    algorithm: str
    stats: dict


@dataclass(frozen=True)
class Instance:
    """One conservative or revolutionary multistage plurality voting instance.

    Parameters
    ----------
    variant : str
        ``"C"`` (consecutive committees differ by at most ``ell``) or
        ``"R"`` (they differ by at least ``ell``).
    m : int
        Number of candidates, ids ``1..m``.
    ballots : tuple of tuples
        ``ballots[t-1][j]`` is the candidate approved by agent ``j+1`` at
        stage ``t``, or ``0`` for abstention. The outer length is the number
        of stages, every inner tuple has one entry per agent.
    k : int
        Committee size bound.
    ell : int
        Symmetric-difference bound between consecutive committees.
    x : int
        Plurality score threshold per stage.

    Derived attributes ``n``, ``tau`` and ``counts`` are computed on
    construction; ``counts[t-1][c]`` is the number of approvals candidate
    ``c`` receives at stage ``t`` (index ``0`` of each row is unused and 0).
    """

    variant: str
    m: int
    ballots: tuple
    k: int
    ell: int
    x: int
    counts: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}, got {self.variant!r}")
        for name in ("m", "k", "x"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise ValueError(f"{name} must be a positive integer, got {value!r}")
        if not isinstance(self.ell, int) or self.ell < 0:
            raise ValueError(f"ell must be a non-negative integer, got {self.ell!r}")
        rows = tuple(tuple(row) for row in self.ballots)
        if not rows:
            raise ValueError("an instance needs at least one stage")
        n = len(rows[0])
        for t, row in enumerate(rows, start=1):
            if len(row) != n:
                raise ValueError(f"stage {t} has {len(row)} ballots, expected {n}")
            for entry in row:
                if not isinstance(entry, int) or not 0 <= entry <= self.m:
                    raise ValueError(
                        f"stage {t}: ballot entry {entry!r} outside 0..{self.m}"
                    )
        object.__setattr__(self, "ballots", rows)
        counts = []
        for row in rows:
            stage = [0] * (self.m + 1)
            for entry in row:
                if entry:
                    stage[entry] += 1
            counts.append(tuple(stage))
        object.__setattr__(self, "counts", tuple(counts))

    @property
    def n(self) -> int:
        return len(self.ballots[0])

    @property
    def tau(self) -> int:
        return len(self.ballots)


@dataclass(frozen=True)
class WeightedInstance:
    """Multistage plurality voting with per-stage candidate weights.

    Replaces the agent/ballot layer of :class:`Instance` with explicit
    non-negative integer scores: ``weights[t-1][c]`` is the score candidate
    ``c`` contributes at stage ``t`` (index ``0`` of each row is unused).
    Weights may be arbitrarily large integers.
    """

    variant: str
    m: int
    weights: tuple
    k: int
    ell: int
    x: int

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}, got {self.variant!r}")
        for name in ("m", "k", "x"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise ValueError(f"{name} must be a positive integer, got {value!r}")
        if not isinstance(self.ell, int) or self.ell < 0:
            raise ValueError(f"ell must be a non-negative integer, got {self.ell!r}")
        rows = []
        if not tuple(self.weights):
            raise ValueError("an instance needs at least one stage")
        for t, row in enumerate(tuple(self.weights), start=1):
            row = tuple(row)
            if len(row) != self.m + 1:
                raise ValueError(
                    f"stage {t}: weight row has {len(row)} entries, expected m+1={self.m + 1}"
                )
            if row[0] != 0:
                raise ValueError(f"stage {t}: weight slot 0 is reserved and must be 0")
            for c, value in enumerate(row):
                if not isinstance(value, int) or value < 0:
                    raise ValueError(
                        f"stage {t}: weight for candidate {c} must be a non-negative "
                        f"integer, got {value!r}"
                    )
            rows.append(row)
        object.__setattr__(self, "weights", tuple(rows))

    @property
    def tau(self) -> int:
        return len(self.weights)


# ---------------------------------------------------------------------------
# scoring and checking
# ---------------------------------------------------------------------------


def _check_stage(instance, t):
    if not isinstance(t, int) or not 1 <= t <= instance.tau:
        raise ValueError(f"stage {t!r} outside 1..{instance.tau}")


def _check_candidates(instance, committee):
    for c in committee:
        if not isinstance(c, int) or not 1 <= c <= instance.m:
            raise ValueError(f"candidate {c!r} outside 1..{instance.m}")


def score(instance: Instance, t: int, committee: Iterable[int]) -> int:
    """Plurality score of ``committee`` at stage ``t``.

    The score is the number of agents whose stage-``t`` approval lands in
    the committee. Raises ``ValueError`` for a stage or candidate id out of
    range.
    """
    _check_stage(instance, t)
    committee = frozenset(committee)
    _check_candidates(instance, committee)
    row = instance.counts[t - 1]
    return sum(row[c] for c in committee)


def symdiff_size(a: Iterable[int], b: Iterable[int]) -> int:
    """Size of the symmetric difference of two committees."""
    return len(frozenset(a) ^ frozenset(b))


def verify(instance: Instance, committees) -> list:
    """Check a committee sequence against every constraint of ``instance``.

    Returns a list of human-readable violation strings, empty when the
    sequence is a valid solution. Structural problems (wrong number of
    stages, candidate ids out of range) raise ``ValueError`` instead of
    being reported as violations.
    """
    seq = [frozenset(c) for c in committees]
    if len(seq) != instance.tau:
        raise ValueError(
            f"solution has {len(seq)} committees, instance has {instance.tau} stages"
        )
    for committee in seq:
        _check_candidates(instance, committee)

    violations = []
    for t, committee in enumerate(seq, start=1):
        if len(committee) > instance.k:
            violations.append(
                f"stage {t}: committee size {len(committee)} exceeds k={instance.k}"
            )
        s = score(instance, t, committee)
        if s < instance.x:
            violations.append(f"stage {t}: score {s} is below x={instance.x}")
    for t in range(1, instance.tau):
        d = len(seq[t - 1] ^ seq[t])
        if instance.variant == CONSERVATIVE and d > instance.ell:
            violations.append(
                f"stages {t}/{t + 1}: symmetric difference {d} exceeds ell={instance.ell}"
            )
        if instance.variant == REVOLUTIONARY and d < instance.ell:
            violations.append(
                f"stages {t}/{t + 1}: symmetric difference {d} is below ell={instance.ell}"
            )
    return violations


def feasible_committee(
    instance: Instance,
    t: int,
    required: Iterable[int] = (),
    forbidden: Iterable[int] = (),
) -> Optional[frozenset]:
    """Find a stage-``t`` committee through ``required`` avoiding ``forbidden``.

    Greedy: start from ``required`` and add the remaining allowed candidates
    in order of decreasing stage-``t`` approval count (ties broken towards
    the lower id) until the committee has ``k`` members or candidates run
    out. Returns the committee if its score reaches ``x``, else ``None``.
    ``None`` is also returned when ``required`` alone is larger than ``k``.
    Overlapping ``required`` and ``forbidden`` sets raise ``ValueError``.

    Because scores are non-negative and monotone under adding candidates,
    a valid committee with the given inclusions/exclusions exists if and
    only if the greedy one is valid.
    """
    _check_stage(instance, t)
    required = frozenset(required)
    forbidden = frozenset(forbidden)
    _check_candidates(instance, required)
    _check_candidates(instance, forbidden)
    if required & forbidden:
        raise ValueError(
            f"required and forbidden overlap: {sorted(required & forbidden)}"
        )
    if len(required) > instance.k:
        return None
    row = instance.counts[t - 1]
    blocked = required | forbidden
    pool = sorted(
        (c for c in range(1, instance.m + 1) if c not in blocked),
        key=lambda c: (-row[c], c),
    )
    chosen = set(required)
    for c in pool:
        if len(chosen) >= instance.k:
            break
        chosen.add(c)
    if sum(row[c] for c in chosen) >= instance.x:
        return frozenset(chosen)
    return None
