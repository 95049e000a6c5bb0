"""Deciding which of two quantum states a system is in.

The optimal expected success probability for guessing between rho0 (prior q)
and rho1 (prior 1-q) is 1/2 + ||q rho0 - (1-q) rho1||_1 / 2, achieved by
projecting onto the nonnegative eigenspace of the weighted difference.  This
script evaluates the optimum for a textbook pair of states, verifies that
the constructed measurement achieves it, and shows that a thousand random
measurements never beat it.
"""

import numpy as np

from guessbound import DensityMatrix, helstrom_povm, helstrom_success, povm_success
from guessbound.quantum import random_povm_success

ket0 = DensityMatrix.basis_state(0, 2)
ket1 = DensityMatrix.basis_state(1, 2)
plus = DensityMatrix.pure([1.0, 1.0])

print("== orthogonal states are perfectly distinguishable ==")
print(f"  success(|0>, |1>, q=1/2) = {helstrom_success(0.5, ket0, ket1):.6f}")

print("\n== |0> vs |+> at even priors ==")
optimum = helstrom_success(0.5, ket0, plus)
print(f"  optimal success        = {optimum:.6f}  (1/2 + sqrt(2)/4 = {0.5 + np.sqrt(2) / 4:.6f})")

povm = helstrom_povm(0.5, ket0, plus)
achieved = povm_success(0.5, ket0, plus, povm)
print(f"  constructed measurement: {achieved:.6f}")
print(f"  outcome-0 projector:\n{np.round(povm.elements[0], 6)}")

best_random = random_povm_success(0.5, ket0, plus, trials=1000, seed=1)
print(f"  best of 1000 random measurements: {best_random:.6f} (never above the optimum)")

print("\n== skewed priors make one hypothesis a safe default ==")
for q in (0.5, 0.7, 0.9, 0.99):
    value = helstrom_success(q, ket0, plus)
    print(f"  q = {q:4.2f}: optimal = {value:.6f}, always-guess-0 = {q:.2f}")
