"""
Where each solver scales
========================

Times the three structured solvers along the axis each one is built
for: candidate count for the layered search at k=1, again for the
two-stage dynamic program, and stage count for the in/out search at
small ell. Brute force joins while it can keep up.
"""

import time

from mpvkit import (
    Instance,
    brute_force,
    random_instance,
    solve_dp_tau,
    solve_inout_ell,
    solve_layered_k,
)


def clock(solver, inst):
    start = time.perf_counter()
    report = solver(inst)
    return 1000 * (time.perf_counter() - start), report


print("layered search, k=1, tau=10, n=100")
print(f"{'m':>8} {'ms':>8}  answer")
for m in (100, 1000, 10000, 100000):
    inst = random_instance(100, m, 10, 1, 1, 1, "C", seed=1)
    ms, report = clock(solve_layered_k, inst)
    print(f"{m:>8} {ms:>8.1f}  {'yes' if report.answer else 'no'}")

print("\ntwo-stage dynamic program, n=50, k=5")
print(f"{'m':>8} {'ms':>8} {'states':>8}")
for m in (50, 200, 1000):
    inst = random_instance(50, m, 2, 5, 1, 2, "C", seed=2)
    ms, report = clock(solve_dp_tau, inst)
    print(f"{m:>8} {ms:>8.1f} {report.stats['states']:>8}")

print("\nin/out search, ell=1, m=50, n=8")
print(f"{'tau':>8} {'ms':>8}  answer")
for tau in (10, 25, 50, 100):
    inst = random_instance(8, 50, tau, 2, 1, 2, "R", seed=3)
    ms, report = clock(solve_inout_ell, inst)
    print(f"{tau:>8} {ms:>8.1f}  {'yes' if report.answer else 'no'}")

# Brute force keeps up only while the prefix tree stays small. These
# no-instances hide the contradiction in the final stage (nobody
# votes), so the search must exhaust every feasible prefix first; with
# ell=0 under revolutionary rules nothing prunes the chain.
print("\nbrute force exhausting no-instances, n=2, k=2, ell=0, x=1")
for m, tau in ((4, 3), (5, 4), (6, 4), (6, 5)):
    rows = [(1 + t % m, 1 + (t * 2 + 1) % m) for t in range(tau - 1)]
    rows.append((0, 0))
    inst = Instance(variant="R", m=m, ballots=tuple(rows), k=2, ell=0, x=1)
    ms, report = clock(brute_force, inst)
    print(f"m={m} tau={tau}: {ms:7.1f} ms, {report.stats['states']:>6} states")
