"""Schrodinger evolution as a Hamiltonian flow.

The oscillator flow rotates each amplitude at its own frequency and returns every ray to
itself after one period. Expectation values follow the commutator along any trajectory.
"""

import numpy as np

from nckahler import FockSpace, build_coordinate_operators
from nckahler import flow
from nckahler.sampling import random_hermitian, random_state

rng = np.random.default_rng(3)
space = FockSpace(d=1, n_cut=8)
H = flow.harmonic_hamiltonian(space, omega=1.0)
start = random_state(space, rng, norm2=2 * space.hbar)

traj = flow.integrate(H, start, 2 * np.pi, 1e-3)
print(f"steps: {len(traj.times) - 1}, norm drift {traj.norm_drift():.1e}, energy drift {traj.energy_drift():.1e}")
print(f"ray after one period vs start: {flow.phase_free_distance(traj.amplitudes[-1], start.z):.1e}")
print(f"global phase picked up: {np.angle(np.vdot(start.z, traj.amplitudes[-1])):+.6f} (every level has energy n + 1/2, so each amplitude returns times -1)")

x = build_coordinate_operators(space).x[0]
print(f"Heisenberg residual for x: {flow.heisenberg_check(x, traj).max_residual:.1e}")

small = FockSpace(d=1, n_cut=5)
Hr = random_hermitian(small, rng)
s0 = random_state(small, rng)
rk = flow.integrate(Hr, s0, 1.0, 1e-3)
ex = flow.integrate(Hr, s0, 1.0, 1e-3, "split_exact")
print(f"\nrandom 6-level generator, RK4 vs spectral propagator: {np.max(np.abs(rk.amplitudes - ex.amplitudes)):.1e}")
