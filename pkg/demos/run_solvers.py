"""
Solving one election five ways
==============================

Builds a three-stage election by hand, asks every exact solver for an
answer, and checks the witnesses against the constraint checker.
"""

from mpvkit import (
    Instance,
    brute_force,
    solve_auto,
    solve_dp_tau,
    solve_inout_ell,
    solve_layered_k,
    verify,
)

# Two agents vote over three candidates for three stages. Agent 1 backs
# candidate 1, then 2, then 1 again; agent 2 drifts from 1 to 2 to 3.
ballots = (
    (1, 1),
    (2, 2),
    (1, 3),
)

# Revolutionary rules: each stage elects at most one candidate, scores
# must reach 1, and consecutive committees must differ in at least two
# members, so standing still is forbidden.
inst = Instance(variant="R", m=3, ballots=ballots, k=1, ell=2, x=1)

for solver in (brute_force, solve_layered_k, solve_dp_tau, solve_inout_ell,
               solve_auto):
    report = solver(inst)
    print(f"{report.algorithm:>10}: {'yes' if report.answer else 'no'}"
          f"  witness={report.witness}  states={report.stats.get('states')}")
    if report.answer:
        assert verify(inst, report.witness) == []

# Tightening the score demand to x=2 makes the instance infeasible: at
# the last stage the two agents split their votes, so no singleton
# committee reaches a score of 2.
tight = Instance(variant="R", m=3, ballots=ballots, k=1, ell=2, x=2)
print("\nwith x=2:", "yes" if solve_auto(tight).answer else "no")

# The conservative sibling with ell=0 must keep the committee frozen
# across all stages, and no single candidate scores at every stage.
frozen = Instance(variant="C", m=3, ballots=ballots, k=1, ell=0, x=1)
report = solve_auto(frozen)
print("conservative, ell=0:", "yes" if report.answer else "no")

# A near-miss witness for the revolutionary instance, rejected with
# per-stage explanations rather than a bare False.
bad = (frozenset({1}), frozenset({1}), frozenset({1}))
for violation in verify(inst, bad):
    print("violation:", violation)
