import pytest

from mpvkit import BudgetExceededError, Instance, brute_force, enumerate_solutions, verify
from mpvkit.oracle import _subsets_upto

from conftest import e1


def test_subset_order_is_lexicographic():
    subs = [tuple(sorted(s)) for s in _subsets_upto((1, 2, 3), 3)]
    assert subs == [
        (),
        (1,),
        (1, 2),
        (1, 2, 3),
        (1, 3),
        (2,),
        (2, 3),
        (3,),
    ]
    ones = [tuple(sorted(s)) for s in _subsets_upto((1, 2, 3), 1)]
    assert ones == [(), (1,), (2,), (3,)]


def test_e1_answers():
    assert brute_force(e1("C", ell=2)).answer is True
    assert brute_force(e1("C", ell=0)).answer is False
    rep = brute_force(e1("R", ell=2))
    assert rep.answer is True
    assert rep.witness == (frozenset({1}), frozenset({2}), frozenset({1}))
    assert rep.algorithm == "brute-force"
    assert verify(e1("R", ell=2), rep.witness) == []


def test_no_instance_has_no_witness():
    rep = brute_force(e1("C", ell=0))
    assert rep.witness is None
    assert rep.stats["states"] >= 0


def test_witness_is_lexicographically_first():
    # two agents approving both of two candidates at both stages: the
    # singleton {1},{1} precedes every other valid sequence
    inst = Instance(variant="C", m=2, ballots=((1, 2), (1, 2)), k=1, ell=2, x=1)
    rep = brute_force(inst)
    assert rep.witness == (frozenset({1}), frozenset({1}))


def test_enumerate_solutions():
    inst = e1("R", ell=2)
    sols = enumerate_solutions(inst, limit=10)
    assert (frozenset({1}), frozenset({2}), frozenset({1})) in sols
    for seq in sols:
        assert verify(inst, seq) == []
    assert len(sols) <= 10

    just_one = enumerate_solutions(inst, limit=1)
    assert len(just_one) == 1
    assert just_one[0] == brute_force(inst).witness


def test_enumerate_limit_validation(e1_rmpv):
    assert enumerate_solutions(e1_rmpv, limit=0) == []
    with pytest.raises(ValueError):
        enumerate_solutions(e1_rmpv, limit=-1)


def test_budget_exhaustion():
    inst = Instance(
        variant="C",
        m=8,
        ballots=((1, 2, 3, 4, 5, 6, 7, 8),) * 4,
        k=4,
        ell=8,
        x=1,
    )
    with pytest.raises(BudgetExceededError):
        brute_force(inst, budget=10)


def test_empty_committee_allowed_when_x_reachable():
    # x=1 with nobody approving anything: no committee can score
    inst = Instance(variant="C", m=2, ballots=((0, 0),), k=1, ell=0, x=1)
    assert brute_force(inst).answer is False
