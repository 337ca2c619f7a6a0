"""Metric and symplectic tensors at a point, geodesic distance, Killing reduction.

Index conventions
-----------------
Holomorphic index first.  A covariant block ``T[m, n]`` is ``T_{m nbar}`` and
pairs with ``dz^m dzbar^n``; a contravariant block ``T[m, n]`` is
``T^{m nbar}``; a mixed block ``T[m, n]`` carries a lower ``m`` and an upper
``n``.  Quadratic forms read ``ds^2 = 2 g_{m nbar} dz^m dzbar^n``.

Pictures: ``hilbert`` (flat ``G = delta/2``), ``conformal``
(``G~ = (2 hbar/|z|^2) G``), ``homogeneous`` (degenerate Fubini-Study in the
``z`` coordinates) and ``affine`` (Fubini-Study in ``w = z/z^[0]``, components
``[n] != [0]`` only).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, ParameterError
from .fock import Operator, StateVector

HILBERT = "hilbert"
CONFORMAL = "conformal"
HOMOGENEOUS = "homogeneous"
AFFINE = "affine"
PICTURES = (HILBERT, CONFORMAL, HOMOGENEOUS, AFFINE)
VARIANCES = ("covariant", "contravariant", "mixed")


@dataclass(frozen=True, eq=False)
class Tensor2:
    block: np.ndarray = field(repr=False)
    variance: str
    picture: str
    degenerate: bool = False

    @property
    def symplectic_partner(self) -> np.ndarray:
        """``omega_{m nbar} = i g_{m nbar}``; contravariant ``omega^{m nbar} = -i g^{m nbar}``."""
        if self.variance == "covariant":
            return 1j * self.block
        if self.variance == "contravariant":
            return -1j * self.block
        raise ParameterError("mixed tensors have no symplectic partner")

    def is_hermitian(self, tol: float = 1e-12) -> bool:
        scale = max(1.0, float(np.max(np.abs(self.block))))
        return float(np.max(np.abs(self.block - self.block.conj().T))) <= tol * scale


def _check_picture(picture: str):
    if picture not in PICTURES:
        raise ParameterError(f"unknown picture {picture!r}; expected one of {PICTURES}")


def metric(picture: str, state: StateVector, variance: str = "covariant") -> Tensor2:
    _check_picture(picture)
    if variance not in VARIANCES:
        raise ParameterError(f"unknown variance {variance!r}")
    hb = state.space.hbar
    z = state.z
    n2 = state.norm2
    eye = np.eye(z.size, dtype=complex)
    if picture == HILBERT:
        blocks = {"covariant": eye / 2, "contravariant": 2 * eye, "mixed": eye}
        return Tensor2(blocks[variance], variance, picture)
    if picture == CONFORMAL:
        blocks = {"covariant": (hb / n2) * eye, "contravariant": (n2 / hb) * eye, "mixed": eye}
        return Tensor2(blocks[variance], variance, picture)
    if picture == HOMOGENEOUS:
        if variance == "covariant":
            blk = (hb / n2) * (eye - np.outer(z.conj(), z) / n2)
        elif variance == "contravariant":
            blk = (n2 * eye - np.outer(z, z.conj())) / hb
        else:
            blk = eye - np.outer(z.conj(), z) / n2
        return Tensor2(blk, variance, picture, degenerate=True)
    w = state.w[1:]
    s = 1.0 + float(np.vdot(w, w).real)
    eye = eye[1:, 1:]
    if variance == "covariant":
        blk = (hb / s) * (eye - np.outer(w.conj(), w) / s)
    elif variance == "contravariant":
        blk = (s / hb) * (eye + np.outer(w, w.conj()))
    else:
        blk = eye
    return Tensor2(blk, variance, picture)


def inverse_metric(picture: str, state: StateVector) -> np.ndarray:
    """Contravariant block ``g^{m nbar}`` used for gradient contractions."""
    return metric(picture, state, "contravariant").block


def fs_distance(phi: StateVector, psi: StateVector) -> float:
    """Fubini-Study geodesic distance ``sqrt(2 hbar) * angle`` between rays."""
    if phi.space != psi.space:
        raise DimensionError("states live on different spaces")
    a = phi.z / np.sqrt(phi.norm2)
    b = psi.z / np.sqrt(psi.norm2)
    ov = np.vdot(a, b)
    # atan2 keeps full precision near both ends of [0, pi/2]
    perp = np.linalg.norm(b - ov * a)
    return float(np.sqrt(2 * phi.space.hbar) * np.arctan2(perp, abs(ov)))


def ds2_braket(state: StateVector, dz: np.ndarray) -> float:
    z = state.z
    n2 = state.norm2
    return float(2 * state.space.hbar * (np.vdot(dz, dz).real / n2 - abs(np.vdot(z, dz)) ** 2 / n2**2))


def ds2_coordinate(picture: str, state: StateVector, dz: np.ndarray) -> float:
    """``2 g_{m nbar} dz^m dzbar^n``; ``dz`` is a homogeneous displacement."""
    if picture == AFFINE:
        z0 = state.z[0]
        dw = (dz[1:] * z0 - state.z[1:] * dz[0]) / z0**2
        g = metric(AFFINE, state).block
        return float(2 * (dw @ g @ dw.conj()).real)
    g = metric(picture, state).block
    return float(2 * (dz @ g @ dz.conj()).real)


def sphere_ds2(state: StateVector, dz: np.ndarray) -> float:
    """``(2 hbar/r^2)(G - dr dr)`` applied to ``dz``."""
    r2 = state.norm2
    dr = float(np.vdot(state.z, dz).real) / np.sqrt(r2)
    return float(2 * state.space.hbar / r2 * (np.vdot(dz, dz).real - dr**2))


def reduced_sphere_ds2(state: StateVector, dz: np.ndarray) -> float:
    """Sphere metric with the phase direction removed."""
    r2 = state.norm2
    dtheta_dual = float(np.vdot(state.z, dz).imag)
    return sphere_ds2(state, dz) - 2 * state.space.hbar / r2**2 * dtheta_dual**2


def killing_vectors(state: StateVector):
    """Dilation and phase generators as (holo, anti) component pairs."""
    z = state.z
    return {"tau": (z, z.conj()), "theta": (1j * z, -1j * z.conj())}


def killing_reduce(tensor: Tensor2, state: StateVector) -> Tensor2:
    """Remove the dilation and phase directions from a conformal-picture tensor."""
    if tensor.picture != CONFORMAL:
        raise ParameterError("Killing reduction acts on conformal-picture tensors")
    gcov = metric(CONFORMAL, state).block
    blk = np.array(tensor.block, dtype=complex)
    for hol, anti in killing_vectors(state).values():
        low_h = gcov @ anti
        low_a = gcov.T @ hol
        norm = (low_h @ hol + low_a @ anti).real
        if tensor.variance == "covariant":
            blk = blk - np.outer(low_h, low_a) / norm
        elif tensor.variance == "contravariant":
            blk = blk - np.outer(hol, anti) / norm
        else:
            blk = blk - np.outer(low_h, hol) / norm
    return Tensor2(blk, tensor.variance, HOMOGENEOUS, degenerate=True)


def christoffel(state: StateVector):
    """Levi-Civita symbols of the conformal metric, arrays indexed ``[l, m, n]``.

    Returns ``(holo, mixed, mixed_swapped)`` with ``holo = Gamma^l_{mn}``,
    ``mixed = Gamma^l_{m nbar}``, ``mixed_swapped = Gamma^l_{mbar n}``.
    ``Gamma^l_{mbar nbar}`` vanishes; barred-upper blocks are conjugates.
    """
    z = state.z
    n2 = state.norm2
    eye = np.eye(z.size)
    zb = z.conj()
    holo = -(np.einsum("lm,n->lmn", eye, zb) + np.einsum("ln,m->lmn", eye, zb)) / (2 * n2)
    mixed = -(np.einsum("lm,n->lmn", eye, z) - np.einsum("mn,l->lmn", eye, z)) / (2 * n2)
    return holo, mixed, mixed.transpose(0, 2, 1)


def full_christoffel(state: StateVector) -> np.ndarray:
    """All symbols over the doubled index set ``(z^0.., zbar^0..)``, shape (2N, 2N, 2N)."""
    holo, mixed, swapped = christoffel(state)
    n = state.z.size
    g = np.zeros((2 * n, 2 * n, 2 * n), dtype=complex)
    h, a = slice(0, n), slice(n, 2 * n)
    g[h, h, h] = holo
    g[h, h, a] = mixed
    g[h, a, h] = swapped
    g[a, a, a] = holo.conj()
    g[a, a, h] = mixed.conj()
    g[a, h, a] = swapped.conj()
    return g


def projector(state: StateVector) -> np.ndarray:
    """Horizontal projector ``P[m, n] = delta - zbar_m z^n/|z|^2`` on lower holomorphic indices."""
    return metric(HOMOGENEOUS, state, "mixed").block


@dataclass(frozen=True)
class CovariantCheck:
    lhs: np.ndarray
    rhs: np.ndarray
    projected_partial: np.ndarray
    antisymmetry: float
    holo_block: float
    horizontal_residuals: dict


def f_derivatives(beta: Operator, state: StateVector):
    """Value, gradients and Hessian blocks of the normalized expectation function."""
    B = beta.matrix
    z = state.z
    zb = z.conj()
    n2 = state.norm2
    Bz = B @ z
    BTzb = B.T @ zb
    f = (zb @ Bz) / n2
    d = (BTzb - f * zb) / n2
    db = (Bz - f * z) / n2
    # mixed[m, n] = d_m dbar_n f
    mixed = (B.T - f * np.eye(z.size) - np.outer(d, z)) / n2 - np.outer(zb, Bz - f * z) / n2**2
    holo = -(np.outer(d, zb) + np.outer(zb, d)) / n2
    anti = -(np.outer(db, z) + np.outer(z, db)) / n2
    return f, d, db, holo, mixed, anti


def covariant_derivative_check(beta: Operator, state: StateVector) -> CovariantCheck:
    """Projected covariant derivative of the covector ``(i df, -i dbar f)``."""
    f, d, db, hh, hm, ha = f_derivatives(beta, state)
    n = state.z.size
    zeta = np.concatenate([1j * d, -1j * db])
    dzeta = np.zeros((2 * n, 2 * n), dtype=complex)
    # dzeta[B, C] = partial_B zeta_C
    dzeta[:n, :n] = 1j * hh
    dzeta[:n, n:] = -1j * hm
    dzeta[n:, :n] = 1j * hm.T
    dzeta[n:, n:] = -1j * ha
    nabla = dzeta - np.einsum("abc,a->bc", full_christoffel(state), zeta)
    P = projector(state)
    Pfull = np.zeros((2 * n, 2 * n), dtype=complex)
    Pfull[:n, :n] = P
    Pfull[n:, n:] = P.conj()
    proj = Pfull @ nabla @ Pfull.T
    proj_partial = Pfull @ dzeta @ Pfull.T
    z = state.z
    hol, anti = zeta[:n], zeta[n:]
    residuals = {
        "contraction": abs(z @ hol),
        "tau_pairing": abs(z @ hol + z.conj() @ anti),
        "theta_pairing": abs(1j * (z @ hol) - 1j * (z.conj() @ anti)),
    }
    return CovariantCheck(
        lhs=proj[:n, n:],
        rhs=-1j * hm,
        projected_partial=proj_partial[:n, n:],
        antisymmetry=float(np.max(np.abs(proj[:n, n:] + proj[n:, :n].T))),
        holo_block=float(max(np.max(np.abs(proj[:n, :n])), np.max(np.abs(proj[n:, n:])))),
        horizontal_residuals=residuals,
    )


def berry_connection(state: StateVector, dz: np.ndarray | None = None):
    """``(1/hbar) Im <phi|dphi>``: components ``(holo, anti)`` or its value on ``dz``."""
    z = state.z
    hb = state.space.hbar
    if dz is not None:
        return float(np.vdot(z, dz).imag / hb)
    return z.conj() / (2j * hb), -z / (2j * hb)
