"""
Data reduction before solving
=============================

Shows the two preprocessing routes: dropping candidates nobody ever
approves until at most n*tau remain, and compressing per-stage weights
to polynomially many bits while preserving every answer.
"""

from mpvkit import (
    brute_force,
    kernel_mtau,
    kernel_ntau_cmpv,
    kernel_ntau_rmpv,
    random_instance,
    solve_weighted,
    to_weighted,
    verify,
)

# A deliberately bloated instance: 40 candidates, but 3 agents over 2
# stages can mention at most 6 of them.
inst = random_instance(n=3, m=40, tau=2, k=2, ell=1, x=2, variant="C",
                       abstain_probability=0.1, seed=11)
result = kernel_ntau_cmpv(inst)
small = result.instance
print(f"candidates: {inst.m} -> {small.m} (bound n*tau = {inst.n * inst.tau})")

# Answers agree, and a witness for the kernel lifts back to the input.
rep = brute_force(small)
assert rep.answer == brute_force(inst).answer
if rep.answer:
    lifted = result.lift(rep.witness)
    assert verify(inst, lifted) == []
    print("lifted witness:", [sorted(c) for c in lifted])

# The revolutionary variant first checks a trivial-no rule: committees
# of size k can never differ in more than 2k members.
hopeless = random_instance(n=2, m=5, tau=3, k=1, ell=3, x=1, variant="R",
                           seed=5)
verdict = kernel_ntau_rmpv(hopeless).verdict
print("trivial no:", verdict.answer is False, "-", verdict.reason)

# Weighted form: per-stage approval counts replace individual ballots.
# On the kernel the rows are short enough to read whole.
weighted = to_weighted(small)
for t, row in enumerate(weighted.weights, start=1):
    print(f"stage-{t} weights:", row[1:])

# kernel_mtau shrinks every weight and the threshold at once. On unit
# counts the numbers are already small, so feed it inflated weights by
# scaling a tiny instance's counts by a million.
tiny = random_instance(n=3, m=3, tau=2, k=1, ell=2, x=1, variant="C", seed=7)
big = to_weighted(tiny)
big = type(big)(
    variant=big.variant, m=big.m,
    weights=tuple(tuple(w * 10**6 for w in row) for row in big.weights),
    k=big.k, ell=big.ell, x=big.x * 10**6,
)
shrunk = kernel_mtau(big)
print("largest weight:", max(max(row) for row in big.weights),
      "->", max(max(row) for row in shrunk.weights))
assert solve_weighted(shrunk).answer == solve_weighted(big).answer
print("answers agree:", solve_weighted(shrunk).answer)
