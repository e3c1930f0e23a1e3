"""Entropies of a two-qubit state and of its reduction, side by side.

Run: python3 demos/01_generalized_entropies.py
"""

import numpy as np

from entropic_separability import (
    DEFAULT_BATTERY,
    SingletPolarized,
    conditional_s_f,
    partial_trace,
    renyi,
    s_f,
    spectrum,
)

rho = SingletPolarized(0.8).density()
rho_a = partial_trace(rho, 0)

print("spectrum of rho  :", np.round(spectrum(rho).probs, 6))
print("spectrum of rho_A:", np.round(spectrum(rho_a).probs, 6))
print()

# S_f(rho) - S_f(rho_A) < 0 certifies entanglement
print(f"{'entropy':16s} {'S_f(rho)':>12s} {'S_f(rho_A)':>12s} {'S_f^A':>12s}")
for f in DEFAULT_BATTERY:
    print(f"{f.label:16s} {s_f(spectrum(rho), f):12.6f} {s_f(spectrum(rho_a), f):12.6f} "
          f"{conditional_s_f(rho, 0, f):12.3e}")

print()
for alpha in (0.5, 2.0, 10.0):
    gap = renyi(spectrum(rho), alpha) - renyi(spectrum(rho_a), alpha)
    print(f"Renyi alpha={alpha:<4} conditional: {gap: .6f}")
