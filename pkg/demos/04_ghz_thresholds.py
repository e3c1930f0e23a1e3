"""GHZ-Werner states of n qudits: the threshold for each split of the first m qudits."""

from entropic_separability import GhzWerner, find_largest_eig_crossing
from entropic_separability.oracles import ghz_werner_xc

for d, n in ((2, 2), (2, 3), (3, 2), (3, 3), (2, 4)):
    family = GhzWerner(0.0, d, n)
    for m in range(1, n):
        numeric = find_largest_eig_crossing(family, tuple(range(m)))
        print(f"d={d} n={n} m={m}:  numeric {numeric:.10f}   closed form {ghz_werner_xc(d, n, m):.10f}")
    print()
