import itertools

import pytest

from mpvkit import (
    BudgetExceededError,
    Instance,
    PreconditionError,
    brute_force,
    random_instance,
    solve_auto,
    solve_dp_tau,
    solve_inout_ell,
    solve_layered_k,
    solve_unconstrained,
    verify,
)

from conftest import e1

EXACT_SOLVERS = [solve_layered_k, solve_dp_tau, solve_auto]


def small_sweep():
    """A grid of instances small enough for the brute-force oracle."""
    cases = []
    seed = 0
    for variant in ("C", "R"):
        for n, m, tau, k in [(1, 2, 2, 1), (2, 3, 3, 1), (3, 3, 2, 2), (2, 4, 3, 2)]:
            for ell in range(0, 2 * k + 1):
                seed += 1
                cases.append(
                    random_instance(
                        n, m, tau, k, ell, max(1, n - 1), variant,
                        abstain_probability=0.2, seed=seed,
                    )
                )
    return cases


# ---------------------------------------------------------------------------
# greedy decoupling
# ---------------------------------------------------------------------------


def test_greedy_regime_answers():
    assert solve_unconstrained(e1("C", ell=2, x=1)).answer is True
    assert solve_unconstrained(e1("C", ell=2, x=2)).answer is False
    assert solve_unconstrained(e1("R", ell=0, x=2)).answer is False
    single = Instance(variant="R", m=2, ballots=((1, 1),), k=1, ell=2, x=2)
    assert solve_unconstrained(single).answer is True  # tau == 1


def test_greedy_rejects_coupled_instances():
    with pytest.raises(PreconditionError):
        solve_unconstrained(e1("C", ell=1))
    with pytest.raises(PreconditionError):
        solve_unconstrained(e1("R", ell=2))


def test_greedy_matches_brute_in_regime():
    for trial in range(80):
        variant = "C" if trial % 2 else "R"
        k = 1 + trial % 3
        ell = 2 * k if variant == "C" else 0
        inst = random_instance(
            3, 4, 3, k, ell, 1 + trial % 3, variant,
            abstain_probability=0.25, seed=trial,
        )
        rep = solve_unconstrained(inst)
        assert rep.answer == brute_force(inst).answer, inst
        if rep.answer:
            assert verify(inst, rep.witness) == []


# ---------------------------------------------------------------------------
# exact solvers vs the oracle
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("solver", EXACT_SOLVERS)
def test_solver_agrees_with_brute_force(solver):
    for inst in small_sweep():
        truth = brute_force(inst)
        rep = solver(inst)
        assert rep.answer == truth.answer, inst
        if rep.answer:
            assert verify(inst, rep.witness) == [], (inst, rep.witness)


def test_inout_agrees_with_brute_force():
    for inst in small_sweep():
        if inst.variant != "R":
            continue
        rep = solve_inout_ell(inst)
        assert rep.answer == brute_force(inst).answer, inst
        if rep.answer:
            assert verify(inst, rep.witness) == [], (inst, rep.witness)


def test_inout_rejects_conservative(e1_cmpv):
    with pytest.raises(PreconditionError):
        solve_inout_ell(e1_cmpv)


def test_e1_by_every_solver():
    yes = e1("R", ell=2)
    no = e1("C", ell=0)
    for solver in EXACT_SOLVERS + [solve_inout_ell]:
        rep = solver(yes)
        assert rep.answer is True
        assert verify(yes, rep.witness) == []
    for solver in EXACT_SOLVERS:
        assert solver(no).answer is False


def test_solvers_are_deterministic():
    inst = random_instance(3, 4, 3, 2, 1, 2, "C", abstain_probability=0.2, seed=9)
    for solver in EXACT_SOLVERS:
        first = solver(inst)
        second = solver(inst)
        assert first.answer == second.answer
        assert first.witness == second.witness


def test_reports_carry_stats():
    rep = solve_dp_tau(e1("C", ell=1))
    assert rep.algorithm == "dp-tau"
    assert rep.stats["states"] > 0
    assert rep.stats["time_ms"] >= 0.0
    rep = solve_layered_k(e1("C", ell=1))
    assert rep.algorithm == "layered-k"
    rep = solve_inout_ell(e1("R", ell=1))
    assert rep.algorithm == "inout-ell"


def test_budget_raises():
    inst = random_instance(4, 8, 6, 3, 2, 1, "C", seed=11)
    with pytest.raises(BudgetExceededError):
        solve_layered_k(inst, budget=5)
    with pytest.raises(BudgetExceededError):
        solve_dp_tau(inst, budget=5)
    with pytest.raises(BudgetExceededError):
        solve_inout_ell(
            random_instance(4, 8, 6, 3, 2, 1, "R", seed=11), budget=5
        )


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------


def test_auto_uses_greedy_when_decoupled():
    rep = solve_auto(e1("C", ell=2))
    assert rep.algorithm == "greedy"
    rep = solve_auto(e1("C", ell=1))
    assert rep.algorithm != "greedy"


def test_auto_reports_all_failures_when_budget_too_small():
    inst = random_instance(4, 8, 6, 3, 2, 1, "C", seed=13)
    with pytest.raises(BudgetExceededError) as err:
        solve_auto(inst, budget=3)
    assert "layered-k" in str(err.value)
    assert "dp-tau" in str(err.value)


def test_auto_on_weird_corners():
    # k >= m: everything fits in one committee
    inst = Instance(variant="C", m=2, ballots=((1, 2), (2, 1)), k=3, ell=0, x=2)
    assert solve_auto(inst).answer is True
    # x > n can never be met
    inst = Instance(variant="C", m=2, ballots=((1, 1), (1, 1)), k=1, ell=0, x=3)
    assert solve_auto(inst).answer is False
    # revolutionary ell > 2k is impossible once tau >= 2
    inst = Instance(variant="R", m=4, ballots=((1, 2), (3, 4)), k=1, ell=3, x=1)
    assert solve_auto(inst).answer is False
    assert solve_dp_tau(inst).answer is False


def test_inout_handles_zero_splits():
    # ell > 2k: no in/out split exists, immediate no
    inst = Instance(variant="R", m=4, ballots=((1, 2), (3, 4)), k=1, ell=3, x=1)
    rep = solve_inout_ell(inst)
    assert rep.answer is False
    # ell > m: same, even though ell <= 2k
    inst = Instance(variant="R", m=1, ballots=((1,), (1,)), k=2, ell=3, x=1)
    assert solve_inout_ell(inst).answer is False
    assert brute_force(inst).answer is False


def test_exhaustive_tiny_grid():
    """Every ballot matrix on 2 agents, 2 candidates, 2 stages."""
    entries = [0, 1, 2]
    for b1 in itertools.product(entries, repeat=2):
        for b2 in itertools.product(entries, repeat=2):
            for variant, ell in (("C", 0), ("C", 1), ("R", 1), ("R", 2)):
                inst = Instance(
                    variant=variant, m=2, ballots=(b1, b2), k=1, ell=ell, x=1
                )
                truth = brute_force(inst).answer
                assert solve_layered_k(inst).answer == truth, inst
                assert solve_dp_tau(inst).answer == truth, inst
                assert solve_auto(inst).answer == truth, inst
                if variant == "R":
                    assert solve_inout_ell(inst).answer == truth, inst
