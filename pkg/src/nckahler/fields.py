"""Hamiltonian vector fields and covectors in three pictures.

``hilbert``: field of ``H_beta`` with the flat metric, equal to ``(1/i hbar) beta z``.
``homogeneous``: field of ``f_beta`` with the Killing-reduced inverse metric.
``affine``: field of ``f_beta`` in ``w`` coordinates, components ``[n] != [0]``.

Vectors: ``X^m = -i g^{m nbar} dbar_n F`` and ``X^mbar = i g^{n mbar} d_n F``.
Covectors: ``(i dF, -i dbar F)``.  Pairing a differential ``dF`` with ``X_K``
yields the Poisson bracket ``{F, K}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, ParameterError
from .fock import Operator, StateVector
from .geometry import AFFINE, HILBERT, HOMOGENEOUS, inverse_metric
from .kahler import KahlerEval, evaluate

PICTURES = (HILBERT, HOMOGENEOUS, AFFINE)
KINDS = ("vector", "covector")


@dataclass(frozen=True, eq=False)
class TangentData:
    comp_holo: np.ndarray = field(repr=False)
    comp_anti: np.ndarray = field(repr=False)
    kind: str
    picture: str
    base_point: StateVector = field(repr=False)

    def stacked(self) -> np.ndarray:
        return np.concatenate([self.comp_holo, self.comp_anti])

    def __sub__(self, other: "TangentData") -> "TangentData":
        return TangentData(self.comp_holo - other.comp_holo, self.comp_anti - other.comp_anti,
                           self.kind, self.picture, self.base_point)

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.stacked())))


def _check(picture: str, kind: str):
    if picture not in PICTURES:
        raise ParameterError(f"unknown picture {picture!r}; expected one of {PICTURES}")
    if kind not in KINDS:
        raise ParameterError(f"unknown kind {kind!r}; expected one of {KINDS}")


def field_of(F: KahlerEval, state: StateVector, kind: str = "vector") -> TangentData:
    """Hamiltonian vector or covector of an already evaluated function."""
    _check(F.picture, kind)
    if kind == "covector":
        return TangentData(1j * F.grad_holo, -1j * F.grad_anti, kind, F.picture, state)
    ginv = inverse_metric(F.picture, state)
    return TangentData(-1j * (ginv @ F.grad_anti), 1j * (ginv.T @ F.grad_holo), kind, F.picture, state)


def hamiltonian_field(beta: Operator, state: StateVector, picture: str, kind: str = "vector") -> TangentData:
    _check(picture, kind)
    return field_of(evaluate(beta, state, picture), state, kind)


def differential(F: KahlerEval, state: StateVector) -> TangentData:
    """The plain differential ``(dF, dbar F)`` as a covector."""
    return TangentData(F.grad_holo, F.grad_anti, "covector", F.picture, state)


def pair(covector: TangentData, vector: TangentData) -> complex:
    if covector.kind != "covector" or vector.kind != "vector":
        raise ParameterError("pairing needs a covector and a vector")
    if covector.comp_holo.shape != vector.comp_holo.shape:
        raise DimensionError("covector and vector have different component counts")
    return complex(covector.comp_holo @ vector.comp_holo + covector.comp_anti @ vector.comp_anti)


def radial_covector(state: StateVector) -> TangentData:
    """``dr`` in homogeneous components."""
    z = state.z
    return TangentData(z.conj() / (2 * state.r), z / (2 * state.r), "covector", HILBERT, state)


def radial_vector(state: StateVector) -> TangentData:
    """``d/dr`` in homogeneous components."""
    z = state.z
    return TangentData(z / state.r, z.conj() / state.r, "vector", HILBERT, state)


def phase_vector(state: StateVector) -> TangentData:
    """``d/dtheta``: the global phase rotation ``z -> e^{i t} z``."""
    z = state.z
    return TangentData(1j * z, -1j * z.conj(), "vector", HILBERT, state)


def _shifted(state: StateVector, mode: int):
    """Neighbour amplitudes ``z_{j-}``, ``z_{j+}`` and the matching sqrt(n_j) factors."""
    sp = state.space
    lo = sp.shift_table(mode, -1)
    hi = sp.shift_table(mode, +1)
    z = state.z
    occ = sp.occupations[:, mode].astype(float)
    # out-of-range shifts contribute zero
    z_minus = np.where(lo >= 0, z[np.maximum(lo, 0)], 0.0)
    z_plus = np.where(hi >= 0, z[np.maximum(hi, 0)], 0.0)
    return z_minus, z_plus, np.sqrt(occ), np.sqrt(occ + 1)


def _conjugate_swap(t: TangentData) -> TangentData:
    return TangentData(t.comp_anti.conj(), t.comp_holo.conj(), t.kind, t.picture, t.base_point)


def explicit_alpha_fields(mode: int, state: StateVector, picture: str, kind: str = "vector",
                          conjugate: bool = False) -> TangentData:
    """Closed-form field of the lowering coordinate of ``mode`` (raising if ``conjugate``)."""
    _check(picture, kind)
    state.space.check_mode(mode)
    hb = state.space.hbar
    zm, zp, sq, sq1 = _shifted(state, mode)
    if picture == HILBERT:
        if kind == "covector":
            t = (1j * np.sqrt(1 / (2 * hb)) * sq * zm.conj(),
                 -1j * np.sqrt(1 / (2 * hb)) * sq1 * zp)
        else:
            t = (-1j * np.sqrt(2 / hb) * sq1 * zp, 1j * np.sqrt(2 / hb) * sq * zm.conj())
    else:
        v = state.z if picture == HOMOGENEOUS else state.w
        vm, vp = (zm, zp) if picture == HOMOGENEOUS else (zm / state.z[0], zp / state.z[0])
        n2 = float(np.vdot(v, v).real)
        f = np.sqrt(2 * hb) * np.vdot(v, sq1 * vp) / n2
        if kind == "covector":
            hol = 1j * (np.sqrt(2 * hb) * sq * vm.conj() - v.conj() * f) / n2
            anti = -1j * (np.sqrt(2 * hb) * sq1 * vp - v * f) / n2
        elif picture == HOMOGENEOUS:
            hol = -1j * (np.sqrt(2 / hb) * sq1 * vp - v * f / hb)
            anti = 1j * (np.sqrt(2 / hb) * sq * vm.conj() - v.conj() * f / hb)
        else:
            hol = -1j * np.sqrt(2 / hb) * (sq1 * vp - v * vp[0])
            anti = 1j * np.sqrt(2 / hb) * sq * vm.conj()
        if picture == AFFINE:
            hol, anti = hol[1:], anti[1:]
        t = (hol, anti)
    out = TangentData(t[0], t[1], kind, picture, state)
    return _conjugate_swap(out) if conjugate else out


@dataclass(frozen=True, eq=False)
class XHfDecomposition:
    lhs: TangentData
    X_horizontal: TangentData
    theta_term: TangentData
    r2_term: TangentData
    residual: float
    theta_component: float
    theta_closed_z: float
    theta_closed_w: float


def _as_hilbert(t: TangentData) -> TangentData:
    return TangentData(t.comp_holo, t.comp_anti, t.kind, HILBERT, t.base_point)


def theta_component(vector: TangentData) -> complex:
    """``dtheta(V)`` with ``theta = arg z^[0]``."""
    z0 = vector.base_point.z[0]
    return (vector.comp_holo[0] / z0 - vector.comp_anti[0] / np.conj(z0)) / 2j


def xhf_decomposition(beta: Operator, state: StateVector) -> XHfDecomposition:
    """Split the Hilbert-space field of ``H_beta`` into horizontal and phase parts."""
    sp = state.space
    hb = sp.hbar
    z = state.z
    _ = state.w  # chart check
    lhs = hamiltonian_field(beta, state, HILBERT)
    horiz = hamiltonian_field(beta, state, HOMOGENEOUS)
    f = evaluate(beta, state, HOMOGENEOUS).value
    r2field = hamiltonian_field(Operator(sp, 2 * hb * np.eye(sp.dim)), state, HILBERT)
    r2_term = TangentData(f / (2 * hb) * r2field.comp_holo, f / (2 * hb) * r2field.comp_anti,
                          "vector", HILBERT, state)
    ph = phase_vector(state)
    theta_term = TangentData(-f / hb * ph.comp_holo, -f / hb * ph.comp_anti, "vector", HILBERT, state)
    resid = lhs - TangentData(horiz.comp_holo + r2_term.comp_holo, horiz.comp_anti + r2_term.comp_anti,
                              "vector", HILBERT, state)
    fz = evaluate(beta, state, HOMOGENEOUS)
    fw = evaluate(beta, state, AFFINE)
    n2 = state.norm2
    w = state.w[1:]
    s = 1 + float(np.vdot(w, w).real)
    closed_z = -(n2 / (2 * hb)) * (fz.grad_anti[0] / z[0] + fz.grad_holo[0] / np.conj(z[0]))
    closed_w = (s / (2 * hb)) * (w @ fw.grad_holo + w.conj() @ fw.grad_anti)
    return XHfDecomposition(
        lhs=lhs,
        X_horizontal=_as_hilbert(horiz),
        theta_term=theta_term,
        r2_term=r2_term,
        residual=resid.max_abs(),
        theta_component=complex(theta_component(horiz)).real,
        theta_closed_z=complex(closed_z).real,
        theta_closed_w=complex(closed_w).real,
    )


def affine_covector_to_homogeneous(cov: TangentData) -> TangentData:
    """Chain-rule an affine covector to homogeneous components through ``w = z/z^[0]``."""
    if cov.picture != AFFINE:
        raise ParameterError("expected an affine-picture covector")
    st = cov.base_point
    z0 = st.z[0]
    hol = np.empty(st.z.size, dtype=complex)
    anti = np.empty(st.z.size, dtype=complex)
    hol[1:] = cov.comp_holo / z0
    hol[0] = -(cov.comp_holo @ st.z[1:]) / z0**2
    anti[1:] = cov.comp_anti / np.conj(z0)
    anti[0] = -(cov.comp_anti @ st.z[1:].conj()) / np.conj(z0) ** 2
    return TangentData(hol, anti, "covector", HOMOGENEOUS, st)
