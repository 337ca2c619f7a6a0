"""Recover a state from the antiholomorphic covector components of a raising coordinate.

Direct route: on the Hilbert space the components are rescaled amplitudes,
``c_[n] = -i sqrt(n_j/2hbar) z^[n - e_j]``.
Recursive route: in the homogeneous picture
``c_[n] = (-i/|z|^2)(sqrt(2 hbar n_j) z^[n - e_j] - f z^[n])`` with ``f`` the
raising-coordinate expectation; solving for ``u = z/|z|^2`` level by level in
``n_j`` and returning ``u/|u|^2`` reproduces ``z`` including its scale.
"""

from __future__ import annotations

import logging

import numpy as np

from .errors import DimensionError, InconsistencyError, SingularSeedError, UndefinedStateError
from .fields import explicit_alpha_fields
from .fock import FockSpace, StateVector
from .geometry import HILBERT, HOMOGENEOUS

log = logging.getLogger(__name__)

SEED_TOL = 1e-12
CONSISTENCY_TOL = 1e-8
EPS = np.finfo(float).eps


def covector_data(state: StateVector, mode: int, picture: str = HILBERT) -> np.ndarray:
    """Antiholomorphic covector components of the raising coordinate of ``mode``."""
    return explicit_alpha_fields(mode, state, picture, "covector", conjugate=True).comp_anti


def raising_expectation(state: StateVector, mode: int) -> complex:
    sp = state.space
    occ = sp.occupations[:, mode]
    z = state.z
    # <phi|alphabar|phi> = sqrt(2 hbar) sum_n sqrt(n_j) conj(z_n) z_{n - e_j}
    lo = sp.shift_table(mode, -1)
    vals = np.where(lo >= 0, z.conj() * np.sqrt(occ) * z[np.maximum(lo, 0)], 0.0)
    return complex(np.sqrt(2 * sp.hbar) * vals.sum() / state.norm2)


def _check_data(space: FockSpace, data) -> np.ndarray:
    arr = np.asarray(data, dtype=complex).reshape(-1)
    if arr.shape != (space.dim,):
        raise DimensionError(f"expected {space.dim} components, got {arr.size}")
    return arr


def reconstruct_direct(covector: dict[int, np.ndarray] | np.ndarray, space: FockSpace,
                       mode: int = 0) -> StateVector:
    """Invert the constant factors of the Hilbert-picture components.

    ``covector`` is one component array for ``mode`` or a ``{mode: array}``
    mapping.  Amplitudes with ``n_j = n_cut`` in every supplied mode are not
    determined and are set to zero.
    """
    per_mode = covector if isinstance(covector, dict) else {mode: covector}
    hb = space.hbar
    sums = np.zeros(space.dim, dtype=complex)
    counts = np.zeros(space.dim, dtype=int)
    estimates = []
    for j, data in per_mode.items():
        space.check_mode(j)
        arr = _check_data(space, data)
        hi = space.shift_table(j, +1)
        occ = space.occupations[:, j]
        est = np.full(space.dim, np.nan, dtype=complex)
        ok = hi >= 0
        est[ok] = 1j * np.sqrt(2 * hb / (occ[ok] + 1)) * arr[hi[ok]]
        estimates.append(est)
        sums[ok] += est[ok]
        counts[ok] += 1
    z = np.where(counts > 0, sums / np.maximum(counts, 1), 0.0)
    scale = max(1e-300, float(np.max(np.abs(z))))
    for est in estimates:
        ok = ~np.isnan(est)
        if np.any(np.abs(est[ok] - z[ok]) > CONSISTENCY_TOL * max(1.0, scale)):
            raise InconsistencyError("per-mode determinations of the amplitudes disagree")
    if not np.any(z != 0):
        raise UndefinedStateError("component data vanish; they determine only the zero vector")
    return StateVector(space, z)


def recursion_condition(f_value: complex, space: FockSpace, mode: int = 0) -> float:
    """Condition number of the triangular system solved by the recursion.

    The relative reconstruction error on rounded data is about ``eps * cond``.
    """
    space.check_mode(mode)
    lo = space.shift_table(mode, -1)
    m = f_value * np.eye(space.dim, dtype=complex)
    cols = np.nonzero(lo >= 0)[0]
    m[cols, lo[cols]] = -np.sqrt(2 * space.hbar * space.occupations[cols, mode])
    return float(np.linalg.cond(m))


def reconstruct_recursive(covector: np.ndarray, f_value: complex, space: FockSpace,
                          mode: int = 0) -> StateVector:
    """Solve the homogeneous-picture relation upward in the occupation of ``mode``."""
    if abs(f_value) < SEED_TOL:
        raise SingularSeedError(
            f"raising-coordinate expectation {abs(f_value):.3g} is below {SEED_TOL}; recursion divides by it"
        )
    space.check_mode(mode)
    arr = _check_data(space, covector)
    cond = recursion_condition(f_value, space, mode)
    if cond * EPS > 1e-10:
        log.warning("recursion is ill-conditioned (cond %.3g); expect relative error near %.1g",
                    cond, cond * EPS)
    hb = space.hbar
    lo = space.shift_table(mode, -1)
    occ = space.occupations[:, mode]
    u = np.zeros(space.dim, dtype=complex)
    for level in range(space.n_cut + 1):
        idx = np.nonzero(occ == level)[0]
        lower = u[lo[idx]] if level > 0 else 0.0
        u[idx] = (np.sqrt(2 * hb * level) * lower - 1j * arr[idx]) / f_value
    n2 = float(np.vdot(u, u).real)
    if n2 == 0:
        raise UndefinedStateError("recursion produced the zero vector")
    return StateVector(space, u / n2)


def canonical(state: StateVector, tol: float = 1e-12) -> np.ndarray:
    """Fix phase and scale: first non-negligible amplitude real positive, ``|z|^2 = 2 hbar``."""
    z = state.normalized().z
    k = int(np.argmax(np.abs(z) > tol * np.max(np.abs(z))))
    return z * np.exp(-1j * np.angle(z[k]))


def round_trip(state: StateVector, mode: int = 0) -> dict[str, float]:
    """Relative errors of both routes on clean data from ``state``."""
    ref = canonical(state)
    direct = reconstruct_direct(covector_data(state, mode, HILBERT), state.space, mode)
    rec = reconstruct_recursive(covector_data(state, mode, HOMOGENEOUS),
                                raising_expectation(state, mode), state.space, mode)
    nrm = np.linalg.norm(ref)
    return {
        "direct": float(np.linalg.norm(canonical(direct) - ref) / nrm),
        "recursive": float(np.linalg.norm(canonical(rec) - ref) / nrm),
        "recursive_unscaled": float(np.linalg.norm(rec.z - state.z) / np.linalg.norm(state.z)),
    }
