"""Entangled states the entropic tests cannot see.

x|singlet><singlet| + (1-x)|uv><uv| is entangled for every x > 0 (negative
partial transpose), but every entropic test stays non-negative until the
largest eigenvalue of rho overtakes that of rho_A, at x_c = 2r/(1+2r).
"""

from entropic_separability import (
    DEFAULT_BATTERY,
    SingletProduct,
    entropic_test,
    find_largest_eig_crossing,
    ppt_test,
)

for r in (0.25, 0.5, 1.0):
    family = SingletProduct.from_overlap(0.0, r)
    x_c = find_largest_eig_crossing(family, 0)
    print(f"r = {r}: x_c = {x_c:.10f}  (2r/(1+2r) = {2 * r / (1 + 2 * r):.10f})")
    for x in (0.5 * x_c, 0.9 * x_c, 1.1 * x_c):
        rho = family.with_x(x).density()
        worst = min(entropic_test(rho, 0, f) for f in DEFAULT_BATTERY)
        print(f"   x = {x:.4f}  sigma1 = {ppt_test(rho, 0): .5f}  min S_f^A = {worst: .3e}")
