"""Monte Carlo moments of the doubling families against their closed forms.

Both families are polynomial processes: the generator maps monomials to
polynomials of no higher degree, which yields explicit moment products.
The simulated finite-activity approximations reproduce them within
sampling error (the second moment of the symmetric family and the first of
the increasing family are exact martingale identities for every n).
"""

from levysym import (
    IncreasingDoublingApprox,
    LatticeUnit,
    Sample,
    SimConfig,
    SymmetricDoublingApprox,
    closed_moment,
    jump_rule_of,
    moment_ci,
    simulate_ensemble,
)

K1 = LatticeUnit.parse("1")
N = 20_000

for spec, family, orders in (
    (SymmetricDoublingApprox(K1, 10), "symmetric_doubling", (2, 4, 6)),
    (IncreasingDoublingApprox(K1, 10), "increasing_doubling", (1, 2, 3)),
):
    rule = jump_rule_of(spec)
    result = simulate_ensemble(
        rule, rule.initial_state(), SimConfig(horizon=1.0, seed=11, paths=N)
    )
    sample = Sample.from_ensemble(result)
    print(f"\n{type(spec).__name__}(k=1, n={spec.n}), T=1, N={N}")
    print(f"{'order':>5} {'mc mean':>12} {'mc se':>10} {'closed form':>12}")
    for p in orders:
        est = moment_ci(sample, p)
        closed = closed_moment(family, p, 1.0)
        print(f"{p:>5} {est.mean:>12.5f} {est.se:>10.5f} {closed:>12.5f}")
