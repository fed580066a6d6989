"""Discrete Groenwall bound on recursion-generated tables.

Tables built by phi_{m+1} = (1 + c h) phi_m stay below phi(0) e^{c t} for
every step count, and a zero start stays identically zero - the discrete
engine behind the marginal-stability uniqueness argument.
"""

import math

from levysym import groenwall_recursion_table, groenwall_verify

for c in (0.5, 2.0):
    for steps in (10, 100, 1000):
        ts, phis = groenwall_recursion_table(1.0, c, 1.0, steps)
        rep = groenwall_verify(ts, phis, c)
        ratio = phis[-1] / math.exp(c)
        print(
            f"c={c}, N={steps:>4}: phi(1) = {phis[-1]:.6f} "
            f"<= e^c = {math.exp(c):.6f} (ratio {ratio:.4f}); "
            f"conclusion {'ok' if rep.conclusion_ok else 'VIOLATED'}"
        )

ts, phis = groenwall_recursion_table(0.0, 2.0, 1.0, 1000)
print(f"\nzero start: sup |phi| = {max(abs(p) for p in phis):.1e} (identically zero)")

# a table violating the two-point hypothesis is reported with the pair
bad = groenwall_verify([0.0, 0.5, 1.0], [1.0, 2.0, 3.0], 1.0)
print(f"linear-growth table: hypothesis ok = {bad.hypothesis_ok}, "
      f"first violated pair = {bad.first_violation}")
