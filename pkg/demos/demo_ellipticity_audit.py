"""Why the counterexample is consistent with the positive result.

The sufficient conditions bound the state-derivatives of the symbol by the
real part of a fixed comparison exponent.  The symmetric doubling symbol
violates that bound on every neighbourhood of 0: its order-1 ratio grows
like u^2 (slope ~ 2 on a log-log grid), so no smoothness-based uniqueness
applies - as it must be, since its martingale problem has many solutions.
The product-cosine symbol passes the same audit with ratios below 1.
"""

from levysym import (
    BrownianNegative,
    ProductCosine,
    SymmetricDoubling,
    audit_ellipticity,
)

psi = BrownianNegative()

audit = audit_ellipticity(SymmetricDoubling(), psi, x0=0.0, radius=1e-3, max_order=1)
print("symmetric doubling symbol at x0 = 0 (radius 1e-3, u up to 1e3):")
print(f"  sup |d_x q| / |Re psi| = {audit.elliptic_ratio[1]:.1f}")
print(f"  log-log growth slope   = {audit.slope:.3f}  (~2: unbounded ratio)")

audit2 = audit_ellipticity(
    ProductCosine(BrownianNegative()), psi, x0=0.0, radius=1e-3, max_order=1
)
print("\nproduct-cosine symbol, same audit:")
print(f"  sup |d_x q| / |Re psi| = {audit2.elliptic_ratio[1]:.2e}")
print(f"  slope = {audit2.slope:.3f}  (~0: bounded)")

audit3 = audit_ellipticity(
    ProductCosine(BrownianNegative()), psi, x0=3.14159, radius=0.5, max_order=3
)
print("\nproduct-cosine at x0 = pi, orders 1..3 (elliptic point):")
print(f"  elliptic ratios {dict((k, round(v, 3)) for k, v in audit3.elliptic_ratio.items())}")
print(f"  growth ratios   {dict((k, round(v, 3)) for k, v in audit3.growth_ratio.items())}")
print(f"  ellipticity floor = {audit3.floor_ratio:.3f}")
