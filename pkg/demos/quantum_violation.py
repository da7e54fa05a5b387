"""
Quantum violation of the Clauser-Horne bound
============================================

Replace the classical probabilities in the Clauser-Horne expression by spin
projectors on two qubits. The classical bound is 0; the largest eigenvalue of
the operator reaches (sqrt 2 - 1)/2.
"""

import math

import numpy as np

from contexture import quantum as qu

a = qu.AngleSet(0.0, math.pi / 2, math.pi / 4, 3 * math.pi / 4)
print("eigenvalues (Jacobi):     ", np.round(qu.jacobi_eigenvalues(qu.ch_operator(a)), 12))
print("eigenvalues (closed form):", np.round(qu.ch_closed_form(a), 12))

free = qu.ch_bound("free")
theta = qu.ch_bound("theta")
print(f"\nfree maximum  {free.value:.12f}")
print(f"theta maximum {theta.value:.12f} at theta = {theta.angles.gamma:.6f} (pi/4 = {math.pi / 4:.6f})")
print(f"(sqrt 2 - 1)/2 = {qu.BOUND:.12f}")

# the one-parameter family traced by the printed closed form
for t, lam, printed in qu.theta_sweep(9):
    print(f"theta={t:6.3f}  largest eigenvalue {qu.fmt(lam):>16}  formula {qu.fmt(printed):>16}")

# a state that attains the bound: the top eigenvector of the operator
w, v = np.linalg.eigh(qu.ch_operator(a))
rho = qu.pure_state(v[:, -1])
print("\nBorn rule at the maximizing state:", qu.fmt(qu.born_expectation(rho, qu.ch_operator(a))))
print("maximally mixed state:           ", qu.fmt(qu.born_expectation(np.eye(4) / 4, qu.ch_operator(a))))
