"""Observables as functions on projective space.

Every Hermitian operator becomes a real function on the space of rays by taking its
normalized expectation value. This script shows that the operator product survives the
translation: the Kahler product of two such functions is again an expectation value,
and it splits into a symmetric part plus i*hbar/2 times the Poisson bracket.
"""

import numpy as np

from nckahler import FockSpace, bracket, build_coordinate_operators, kahler_product
from nckahler.kahler import covariance_and_uncertainty, evaluate
from nckahler.sampling import random_hermitian, random_state

rng = np.random.default_rng(2024)
space = FockSpace(d=1, n_cut=8, hbar=1.0)
beta, gamma = random_hermitian(space, rng), random_hermitian(space, rng)
# keep two levels of headroom below the cutoff so every finite sum is exact
state = random_state(space, rng, support_cut=6)

print("Kahler product against the expectation of the operator product")
for picture in ("hilbert", "homogeneous", "affine"):
    value = kahler_product(beta, gamma, state, picture)
    # the hilbert picture carries the extra factor |z|^2 / 2hbar, so compare within each picture
    target = evaluate(beta @ gamma, state, picture).value
    print(f"  {picture:12s} {value.real:+.12f} {value.imag:+.12f}i   |diff| = {abs(value - target):.1e}")

jordan = bracket(beta, gamma, state, "jordan", "homogeneous")
poisson = bracket(beta, gamma, state, "poisson", "homogeneous")
target = evaluate(beta @ gamma, state, "homogeneous").value
print("\nSplitting into symmetric and antisymmetric parts")
print(f"  jordan + (i hbar / 2) poisson = {jordan + 0.5j * space.hbar * poisson:.12f}")
print(f"  product                        = {target:.12f}")

c = build_coordinate_operators(space)
vac = space.basis_state(0)
u = covariance_and_uncertainty(c.x[0], c.p[0], vac)
print("\nUncertainty relation with the covariance term, position and momentum in the vacuum")
print(f"  (dx dp)^2 = {u.lhs:.6f}   bound = {u.rhs:.6f}   (saturated)")
u = covariance_and_uncertainty(beta, gamma, state)
print(f"  random pair: (db dg)^2 = {u.lhs:.4f} >= {u.rhs:.4f}")
