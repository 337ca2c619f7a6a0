"""Seeded random states and operators for property sweeps."""

from __future__ import annotations

import numpy as np

from .errors import ParameterError
from .fock import FockSpace, Operator, StateVector


def random_state(space: FockSpace, rng: np.random.Generator, support_cut: int | None = None,
                 norm2: float | None = None, vacuum_floor: float = 0.0) -> StateVector:
    """Complex Gaussian amplitudes on basis states with total occupation <= support_cut.

    ``vacuum_floor`` bounds ``|z^[0]|/|z|`` from below so the affine chart is usable.
    """
    cut = space.n_cut if support_cut is None else int(support_cut)
    if not (0 <= cut <= space.n_cut * space.d):
        raise ParameterError(f"support_cut {cut} out of range")
    mask = space.total <= cut
    z = np.zeros(space.dim, dtype=complex)
    k = int(mask.sum())
    z[mask] = rng.normal(size=k) + 1j * rng.normal(size=k)
    if vacuum_floor > 0:
        rest = np.linalg.norm(z[1:])
        need = vacuum_floor * rest / np.sqrt(max(1e-300, 1 - vacuum_floor**2))
        if abs(z[0]) < need:
            z[0] = need * np.exp(1j * rng.uniform(0, 2 * np.pi))
    state = StateVector(space, z)
    return state if norm2 is None else state.normalized(norm2)


def random_hermitian(space: FockSpace, rng: np.random.Generator, scale: float = 1.0) -> Operator:
    m = rng.normal(size=(space.dim, space.dim)) + 1j * rng.normal(size=(space.dim, space.dim))
    return Operator(space, scale * (m + m.conj().T) / 2, True)


def random_operator(space: FockSpace, rng: np.random.Generator, scale: float = 1.0) -> Operator:
    m = rng.normal(size=(space.dim, space.dim)) + 1j * rng.normal(size=(space.dim, space.dim))
    return Operator(space, scale * m)


def sphere_tangent(state: StateVector, rng: np.random.Generator) -> np.ndarray:
    """Random displacement with ``Re<phi|dphi> = 0``."""
    dz = rng.normal(size=state.z.shape) + 1j * rng.normal(size=state.z.shape)
    return dz - state.z * np.vdot(state.z, dz).real / state.norm2
