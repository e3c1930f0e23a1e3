"""Werner state: the entropic root approaches 1/3 as q grows.

The shift above 1/3 falls like 2 gamma ln2 / (3q), gamma = 1 for Tsallis and
2 for the exponential form.
"""

from entropic_separability import ExpForm, Tsallis, WernerPopescu, find_entropic_root
from entropic_separability.oracles import werner_xr_asymptote

family = WernerPopescu(0.0)
print(f"{'q':>6s} {'tsallis x_r':>14s} {'asymptote':>12s} {'exp x_r':>14s} {'asymptote':>12s}")
for q in (2, 5, 10, 20, 50, 100, 200):
    ts = find_entropic_root(family, 0, Tsallis(q))
    ex = find_entropic_root(family, 0, ExpForm(q))
    print(f"{q:6d} {ts:14.10f} {werner_xr_asymptote(q, 'tsallis'):12.8f} "
          f"{ex:14.10f} {werner_xr_asymptote(q, 'exp'):12.8f}")
