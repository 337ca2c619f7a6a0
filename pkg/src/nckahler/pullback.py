"""Coordinate maps from the state spaces to the noncommutative coordinates.

A state is sent to the expectation values of the coordinates ``alpha^i`` and
``alphabar^i``.  The Jacobian columns are indexed ``[alpha^1..alpha^d,
alphabar^1..alphabar^d]``; rows are holomorphic components followed by
antiholomorphic ones.  The left inverse is built from Hamiltonian vectors::

    row alpha^j    = -(1/2i) X_{alphabar^j}
    row alphabar^j =  (1/2i) X_{alpha^j}

Identities need the coordinate commutator to be exact on the state, i.e. the
state must have no amplitude on the top occupation of any mode.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError
from .fields import differential, hamiltonian_field, pair
from .fock import FockSpace, Operator, StateVector, build_coordinate_operators
from .geometry import AFFINE, HILBERT, HOMOGENEOUS, inverse_metric, metric
from .kahler import bracket, eval_H, kahler_product, evaluate, riemann_function, star

PICTURES = (AFFINE, HOMOGENEOUS, HILBERT)


def coordinate_list(space: FockSpace) -> list[Operator]:
    c = build_coordinate_operators(space)
    return list(c.alpha) + list(c.alphabar)


@dataclass(frozen=True, eq=False)
class Jacobian:
    J: np.ndarray = field(repr=False)
    Jinv: np.ndarray = field(repr=False)
    picture: str
    base_point: StateVector = field(repr=False)

    @property
    def d(self) -> int:
        return self.J.shape[1] // 2

    def left_inverse(self) -> np.ndarray:
        return self.Jinv @ self.J

    def expected_left_inverse(self) -> np.ndarray:
        scale = self.base_point.norm2 / (2 * self.base_point.space.hbar) if self.picture == HILBERT else 1.0
        return scale * np.eye(2 * self.d)

    def antiholomorphic_part(self) -> np.ndarray:
        """Rows ``[nbar]``; nonzero entries mean the map is not holomorphic."""
        return self.J[self.J.shape[0] // 2:, :]


def _check_picture(picture: str):
    if picture not in PICTURES:
        raise ParameterError(f"unknown picture {picture!r}; expected one of {PICTURES}")


def jacobian(state: StateVector, picture: str = AFFINE) -> Jacobian:
    _check_picture(picture)
    ops = coordinate_list(state.space)
    d = state.space.d
    cols = []
    for op in ops:
        cov = hamiltonian_field(op, state, picture, "covector")
        cols.append(np.concatenate([-1j * cov.comp_holo, 1j * cov.comp_anti]))
    J = np.stack(cols, axis=1)
    rows = []
    for j in range(d):
        rows.append(-hamiltonian_field(ops[d + j], state, picture).stacked() / 2j)
    for j in range(d):
        rows.append(hamiltonian_field(ops[j], state, picture).stacked() / 2j)
    return Jacobian(J, np.stack(rows, axis=0), picture, state)


def _full(block_mn: np.ndarray, block_nm: np.ndarray) -> np.ndarray:
    n = block_mn.shape[0]
    out = np.zeros((2 * n, 2 * n), dtype=complex)
    out[:n, n:] = block_mn
    out[n:, :n] = block_nm
    return out


@dataclass(frozen=True, eq=False)
class OmegaPullback:
    cov: np.ndarray
    contra: np.ndarray
    expected_cov: np.ndarray
    expected_contra: np.ndarray

    def residual(self) -> float:
        return float(max(np.max(np.abs(self.cov - self.expected_cov)),
                         np.max(np.abs(self.contra - self.expected_contra))))


def omega_pullback(state: StateVector, picture: str = AFFINE) -> OmegaPullback:
    """Pull the symplectic tensors back to the coordinate indices."""
    jac = jacobian(state, picture)
    g = metric(picture, state).block
    ginv = inverse_metric(picture, state)
    om = _full(1j * g, -1j * g.T)
    om_inv = _full(-1j * ginv, 1j * ginv.T)
    cov = jac.Jinv @ om @ jac.Jinv.T
    contra = jac.J.T @ om_inv @ jac.J
    d = jac.d
    eye = np.eye(d)
    zero = np.zeros((d, d))
    scale = jac.expected_left_inverse()[0, 0].real
    exp_cov = scale * np.block([[zero, 0.5j * eye], [-0.5j * eye, zero]])
    exp_contra = scale * np.block([[zero, -2j * eye], [2j * eye, zero]])
    return OmegaPullback(cov, contra, exp_cov, exp_contra)


@dataclass(frozen=True, eq=False)
class PairingTable:
    affine_bar: np.ndarray
    affine_plain: np.ndarray
    homogeneous_bar: np.ndarray
    hilbert_bar: np.ndarray
    hilbert_plain: np.ndarray
    hilbert_on_sphere: np.ndarray


def _pairings(state: StateVector, picture: str) -> tuple[np.ndarray, np.ndarray]:
    """``<dF_{alpha^i}, X_{alphabar^j}>`` and ``<dF_{alpha^i}, X_{alpha^j}>``."""
    ops = coordinate_list(state.space)
    d = state.space.d
    bar = np.zeros((d, d), dtype=complex)
    plain = np.zeros((d, d), dtype=complex)
    for i in range(d):
        dF = differential(evaluate(ops[i], state, picture), state)
        for j in range(d):
            bar[i, j] = pair(dF, hamiltonian_field(ops[d + j], state, picture))
            plain[i, j] = pair(dF, hamiltonian_field(ops[j], state, picture))
    return bar, plain


def pairing_pullback(state: StateVector) -> PairingTable:
    ab, ap = _pairings(state, AFFINE)
    hb_, _ = _pairings(state, HOMOGENEOUS)
    hib, hip = _pairings(state, HILBERT)
    sph, _ = _pairings(state.normalized(), HILBERT)
    return PairingTable(ab, ap, hb_, hib, hip, sph)


@dataclass(frozen=True, eq=False)
class MetricFailure:
    composition: np.ndarray
    deviation_from_delta: float
    cov_candidates: np.ndarray
    contra_candidates: np.ndarray
    sandwich_cov: np.ndarray
    sandwich_contra: np.ndarray
    hilbert_composition: np.ndarray
    hilbert_deviation: float
    route_difference: float


def _candidates(riemann, d):
    """Covariant ``(i, j)``/``(i, jbar)`` and contravariant ``(j, k)``/``(jbar, k)`` candidates.

    ``riemann(a, b)`` returns the Riemann bracket of coordinate functions ``a``
    and ``b`` (0-based, lowering coordinates first) as a ``KahlerEval``.
    """
    cov = [[None] * (2 * d) for _ in range(d)]
    contra = [[None] * d for _ in range(2 * d)]
    for i in range(d):
        for j in range(d):
            cov[i][j] = riemann(d + i, d + j) * (-0.25)
            cov[i][d + j] = riemann(d + i, j) * 0.25
    for j in range(d):
        for k in range(d):
            contra[j][k] = riemann(j, k)
            contra[d + j][k] = riemann(d + j, k)
    return cov, contra


def _compose(cov, contra, state, d):
    comp = np.zeros((d, d), dtype=complex)
    for i in range(d):
        for k in range(d):
            comp[i, k] = sum(star(cov[i][b], contra[b][k], state) for b in range(2 * d))
    return comp


def metric_pullback_failure(state: StateVector, picture: str = AFFINE) -> MetricFailure:
    """Candidate metric pull-backs built from Riemann brackets, and their composition."""
    if picture not in (AFFINE, HOMOGENEOUS):
        raise ParameterError("the projective route needs the affine or homogeneous picture")
    sp = state.space
    d = sp.d
    ops = coordinate_list(sp)
    evals = [evaluate(op, state, picture) for op in ops]

    def proj_riemann(a, b):
        return riemann_function(evals[a], evals[b], ops[a], ops[b], state)

    cov, contra = _candidates(proj_riemann, d)
    comp = _compose(cov, contra, state, d)

    hstate = state.normalized()

    def hil_riemann(a, b):
        A, B = ops[a].matrix, ops[b].matrix
        return eval_H(Operator(sp, A @ B + B @ A), hstate) * (1.0 / sp.hbar)

    hcov, hcontra = _candidates(hil_riemann, d)
    hcomp = _compose(hcov, hcontra, hstate, d)

    jac = jacobian(state, picture)
    g = metric(picture, state).block
    ginv = inverse_metric(picture, state)
    s_cov = jac.Jinv @ _full(g, g.T) @ jac.Jinv.T
    s_contra = jac.J.T @ _full(ginv, ginv.T) @ jac.J

    cov_vals = np.array([[c.value for c in row] for row in cov])
    contra_vals = np.array([[c.value for c in row] for row in contra])
    # affine route versus Hilbert route, both evaluated on the sphere |z|^2 = 2 hbar
    sphere_evals = [evaluate(op, hstate, picture) for op in ops]
    pcov_sphere, _ = _candidates(
        lambda a, b: riemann_function(sphere_evals[a], sphere_evals[b], ops[a], ops[b], hstate), d)
    diff = max(abs(pcov_sphere[i][j].value - hcov[i][j].value) for i in range(d) for j in range(2 * d))
    return MetricFailure(
        composition=comp,
        deviation_from_delta=float(np.max(np.abs(comp - np.eye(d)))),
        cov_candidates=cov_vals,
        contra_candidates=contra_vals,
        sandwich_cov=s_cov,
        sandwich_contra=s_contra,
        hilbert_composition=hcomp,
        hilbert_deviation=float(np.max(np.abs(hcomp - np.eye(d)))),
        route_difference=float(diff),
    )


@dataclass(frozen=True)
class OneFormRoutes:
    dH_route: complex
    H_dbeta_route: complex | None
    df_route: complex
    f_dbeta_route: complex | None
    sphere_tangent: bool


def sphere_tangent_projection(state: StateVector, dz: np.ndarray) -> np.ndarray:
    """Remove the radial part of ``dz`` so that ``Re<phi|dphi> = 0``."""
    return dz - state.z * np.vdot(state.z, dz).real / state.norm2


def displacement_generator(state: StateVector, dz: np.ndarray) -> np.ndarray:
    """Anti-Hermitian ``D`` with ``D phi = dphi``, for a sphere-tangent ``dphi``."""
    z = state.z
    n2 = state.norm2
    c = np.vdot(dz, z) / n2**2
    return (np.outer(dz, z.conj()) - np.outer(z, dz.conj())) / n2 + c * np.outer(z, z.conj())


def one_form_consistency(beta: Operator, state: StateVector, dz: np.ndarray,
                         tangent_tol: float = 1e-12) -> OneFormRoutes:
    """Directional derivatives of ``H_beta`` and ``f_beta`` by two routes.

    The second route evaluates the 1-form operator ``d beta = [beta, D]`` where
    ``D`` generates the displacement; it exists only for sphere-tangent ``dz``.
    """
    z = state.z
    dz = np.asarray(dz, dtype=complex)
    B = beta.matrix
    n2 = state.norm2
    hb = state.space.hbar
    sym = np.vdot(dz, B @ z) + np.vdot(z, B @ dz)
    dH = sym / (2 * hb)
    f = np.vdot(z, B @ z) / n2
    df = sym / n2 - f * 2 * np.vdot(z, dz).real / n2
    radial = abs(np.vdot(z, dz).real)
    tangent = radial <= tangent_tol * max(1.0, np.sqrt(n2) * np.linalg.norm(dz))
    if not tangent:
        return OneFormRoutes(complex(dH), None, complex(df), None, False)
    D = displacement_generator(state, dz)
    dbeta = B @ D - D @ B
    val = np.vdot(z, dbeta @ z)
    return OneFormRoutes(complex(dH), complex(val / (2 * hb)), complex(df), complex(val / n2), True)


def table_rows(beta: Operator, gamma: Operator, state: StateVector) -> dict[str, tuple]:
    """Noncommutative-side quantities evaluated in each picture on the sphere ``|z|^2 = 2 hbar``.

    Values are ordered ``(hilbert, homogeneous, affine)``.
    """

    st = state.normalized()
    pics = (HILBERT, HOMOGENEOUS, AFFINE)
    return {
        "coordinate function": tuple(evaluate(beta, st, p).value for p in pics),
        "kahler product": tuple(kahler_product(beta, gamma, st, p) for p in pics),
        "poisson bracket": tuple(bracket(beta, gamma, st, "poisson", p) for p in pics),
        "field action": tuple(
            pair(differential(evaluate(gamma, st, p), st), hamiltonian_field(beta, st, p)) for p in pics
        ),
        "jacobian left inverse": tuple(
            float(np.max(np.abs(jacobian(st, p).left_inverse() - np.eye(2 * st.space.d)))) for p in pics
        ),
    }

