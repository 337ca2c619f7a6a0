"""Recovering a state from ladder-operator data, and pulling tensors back.

The components of the Hamiltonian covector of the lowering operator determine the state.
The direct route reads the amplitudes off; the recursive route rebuilds them one level at
a time and loses accuracy as the raising expectation shrinks. The lowering-operator data
never see the top Fock level, so the state is kept one level below the cutoff.
"""

import numpy as np

from nckahler import FockSpace
from nckahler import pullback as pb
from nckahler import reconstruct as rc
from nckahler.sampling import random_state

rng = np.random.default_rng(11)
space = FockSpace(d=1, n_cut=6)
st = random_state(space, rng, support_cut=5)

data = rc.covector_data(st, 0)
out = rc.reconstruct_direct(data, space)
print(f"direct route relative error: {np.linalg.norm(out.z - st.z) / np.linalg.norm(st.z):.1e}")

f = rc.raising_expectation(st, 0)
rec = rc.reconstruct_recursive(rc.covector_data(st, 0, "homogeneous"), f, space)
cond = rc.recursion_condition(f, space)
print(f"recursive route relative error: {np.linalg.norm(rec.z - st.z) / np.linalg.norm(st.z):.1e}"
      f"  (condition {cond:.1e}, rounding bound {cond * rc.EPS:.1e})")

try:
    vac = space.basis_state(0)
    rc.reconstruct_recursive(rc.covector_data(vac, 0, "homogeneous"), rc.raising_expectation(vac, 0), space)
except rc.SingularSeedError as exc:
    print(f"vacuum: {exc}")

gen = random_state(space, rng, support_cut=4, vacuum_floor=0.2)
print("\npull-back of the symplectic form to ladder coordinates (affine chart)")
print(np.round(pb.omega_pullback(gen, "affine").cov, 12))
fail = pb.metric_pullback_failure(gen)
print(f"candidate metric pull-backs compose to the identity? deviation = {fail.deviation_from_delta:.3f}")
