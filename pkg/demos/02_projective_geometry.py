"""The Fubini-Study geometry of rays.

Distances between rays depend only on the normalized overlap; orthogonal states sit at the
maximal distance pi*sqrt(hbar/2). The script also checks the Christoffel symbols of the
flat conformal metric against a finite-difference Levi-Civita construction.
"""

import numpy as np

from nckahler import FockSpace
from nckahler import geometry as geo
from nckahler.numdiff import wirtinger
from nckahler.sampling import random_state

rng = np.random.default_rng(7)
space = FockSpace(d=1, n_cut=4, hbar=0.5)

a, b = space.basis_state(0), space.basis_state(3)
print(f"distance between |0> and |3>: {geo.fs_distance(a, b):.12f}")
print(f"pi * sqrt(hbar / 2):          {np.pi * np.sqrt(space.hbar / 2):.12f}")

phi, psi = random_state(space, rng), random_state(space, rng)
print(f"\ndistance is blind to rescaling: {geo.fs_distance(phi, psi):.12f} "
      f"vs {geo.fs_distance(phi.scaled(3 - 2j), psi.scaled(0.1j)):.12f}")

gap = max(geo.fs_distance(x, z) - geo.fs_distance(x, y) - geo.fs_distance(y, z)
          for x, y, z in (tuple(random_state(space, rng) for _ in range(3)) for _ in range(500)))
print(f"largest triangle-inequality violation over 500 triples: {max(gap, 0.0):.1e}")

st = random_state(space, rng)
n = space.dim


def full_metric(z):
    g = space.hbar / np.vdot(z, z).real * np.eye(n)
    out = np.zeros((2 * n, 2 * n), dtype=complex)
    out[:n, n:] = g
    out[n:, :n] = g
    return out


dh, da = wirtinger(full_metric, st.z)
D = np.concatenate([dh, da], axis=-1)
ginv = np.linalg.inv(full_metric(st.z))
fd = 0.5 * (np.einsum("ad,dcb->abc", ginv, D) + np.einsum("ad,dbc->abc", ginv, D)
            - np.einsum("ad,bcd->abc", ginv, D))
print(f"\nChristoffel symbols, analytic vs finite differences: {np.max(np.abs(fd - geo.full_christoffel(st))):.1e}")
red = geo.killing_reduce(geo.metric(geo.CONFORMAL, st), st)
print(f"Killing reduction recovers the projective metric:   "
      f"{np.max(np.abs(red.block - geo.metric(geo.HOMOGENEOUS, st).block)):.1e}")
