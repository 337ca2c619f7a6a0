"""Kahlerian functions of operators and their products and brackets.

``H_beta = <phi|beta|phi>/(2 hbar)`` lives on the Hilbert space;
``f_beta = <phi|beta|phi>/<phi|phi>`` lives on the projective space and is
evaluated either in homogeneous coordinates ``z`` or in the affine chart
``w = z/z^[0]`` (gradient components ``[n] != [0]``).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, DomainError, ParameterError
from .fock import Operator, StateVector
from .geometry import AFFINE, HILBERT, HOMOGENEOUS, inverse_metric

PICTURES = (HILBERT, HOMOGENEOUS, AFFINE)


@dataclass(frozen=True, eq=False)
class KahlerEval:
    """Value and Wirtinger gradients of a function at one state.

    Supports ``+``, ``-``, scalar and pointwise ``*`` (with the product rule),
    so composite functions of Kahlerian functions keep exact gradients.
    """

    value: complex
    grad_holo: np.ndarray
    grad_anti: np.ndarray
    picture: str

    def _other(self, other):
        if isinstance(other, KahlerEval):
            if other.picture != self.picture:
                raise DimensionError("cannot combine functions from different pictures")
            return other
        zero = np.zeros_like(self.grad_holo)
        return KahlerEval(complex(other), zero, zero, self.picture)

    def __add__(self, other):
        o = self._other(other)
        return KahlerEval(self.value + o.value, self.grad_holo + o.grad_holo,
                          self.grad_anti + o.grad_anti, self.picture)

    __radd__ = __add__

    def __neg__(self):
        return KahlerEval(-self.value, -self.grad_holo, -self.grad_anti, self.picture)

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._other(other)
        return KahlerEval(
            self.value * o.value,
            self.grad_holo * o.value + self.value * o.grad_holo,
            self.grad_anti * o.value + self.value * o.grad_anti,
            self.picture,
        )

    __rmul__ = __mul__


def _check(beta: Operator, state: StateVector):
    if beta.space != state.space:
        raise DimensionError("operator and state live on different spaces")


def _check_picture(picture: str):
    if picture not in PICTURES:
        raise ParameterError(f"unknown picture {picture!r}; expected one of {PICTURES}")


def eval_H(beta: Operator, state: StateVector) -> KahlerEval:
    _check(beta, state)
    hb2 = 2 * state.space.hbar
    z = state.z
    Bz = beta.matrix @ z
    return KahlerEval(
        complex(np.vdot(z, Bz) / hb2),
        beta.matrix.T @ z.conj() / hb2,
        Bz / hb2,
        HILBERT,
    )


def eval_f(beta: Operator, state: StateVector, chart: str = "z") -> KahlerEval:
    """Normalized expectation with gradients in the ``z`` or ``w`` chart."""
    _check(beta, state)
    if chart not in ("z", "w"):
        raise ParameterError(f"chart must be 'z' or 'w', got {chart!r}")
    B = beta.matrix
    v = state.z if chart == "z" else state.w
    n2 = float(np.vdot(v, v).real)
    Bv = B @ v
    BTv = B.T @ v.conj()
    f = complex(np.vdot(v, Bv) / n2)
    d = (BTv - f * v.conj()) / n2
    db = (Bv - f * v) / n2
    if chart == "w":
        return KahlerEval(f, d[1:], db[1:], AFFINE)
    return KahlerEval(f, d, db, HOMOGENEOUS)


def evaluate(beta: Operator, state: StateVector, picture: str) -> KahlerEval:
    _check_picture(picture)
    if picture == HILBERT:
        return eval_H(beta, state)
    return eval_f(beta, state, "w" if picture == AFFINE else "z")


def gradient_contraction(F: KahlerEval, K: KahlerEval, state: StateVector) -> complex:
    """``dF_m g^{m nbar} dbar K_n`` in the picture shared by both functions."""
    if F.picture != K.picture:
        raise DimensionError("functions from different pictures")
    ginv = inverse_metric(F.picture, state)
    return complex(F.grad_holo @ ginv @ K.grad_anti)


def star(F: KahlerEval, K: KahlerEval, state: StateVector) -> complex:
    """Kahler product of two functions at a point.

    On the Hilbert space the product has no pointwise term; on the projective
    space it is ``F K + hbar dF.g^-1.dbar K``.
    """
    term = state.space.hbar * gradient_contraction(F, K, state)
    if F.picture == HILBERT:
        return term
    return F.value * K.value + term


def kahler_product(beta: Operator, gamma: Operator, state: StateVector, picture: str) -> complex:
    return star(evaluate(beta, state, picture), evaluate(gamma, state, picture), state)


BRACKETS = ("poisson", "riemann", "jordan")


def bracket(beta: Operator, gamma: Operator, state: StateVector, kind: str, picture: str,
            route: str = "geometric") -> complex:
    """Poisson, Riemann or Jordan bracket of the functions of ``beta`` and ``gamma``.

    ``route="geometric"`` contracts gradients with the inverse metric;
    ``route="algebraic"`` evaluates the corresponding operator expression.
    """
    _check_picture(picture)
    if kind not in BRACKETS:
        raise ParameterError(f"unknown bracket {kind!r}; expected one of {BRACKETS}")
    hb = state.space.hbar
    if route == "algebraic":
        B, C = beta.matrix, gamma.matrix
        ev = lambda m: evaluate(Operator(beta.space, m), state, picture).value  # noqa: E731
        if kind == "poisson":
            return ev(B @ C - C @ B) / (1j * hb)
        if kind == "jordan":
            return ev((B @ C + C @ B) / 2)
        anti = ev(B @ C + C @ B) / hb
        if picture == HILBERT:
            return anti
        return anti - 2 * ev(B) * ev(C) / hb
    if route != "geometric":
        raise ParameterError(f"route must be 'geometric' or 'algebraic', got {route!r}")
    F = evaluate(beta, state, picture)
    K = evaluate(gamma, state, picture)
    fk = gradient_contraction(F, K, state)
    kf = gradient_contraction(K, F, state)
    if kind == "poisson":
        return -1j * (fk - kf)
    riemann = fk + kf
    if kind == "riemann":
        return riemann
    pointwise = 0.0 if picture == HILBERT else F.value * K.value
    return pointwise + hb * riemann / 2


def riemann_function(F: KahlerEval, K: KahlerEval, beta: Operator, gamma: Operator,
                     state: StateVector) -> KahlerEval:
    """Riemann bracket of two projective functions, as a function with gradients.

    Uses ``{f_b, f_c}_g = (f_{bc} + f_{cb} - 2 f_b f_c)/hbar`` so the result
    carries exact gradients through the product rule.
    """
    if F.picture == HILBERT:
        raise ParameterError("use the operator route for Hilbert-space functions")
    chart = "w" if F.picture == AFFINE else "z"
    B, C = beta.matrix, gamma.matrix
    sym = eval_f(Operator(beta.space, B @ C + C @ B), state, chart)
    return (sym - 2 * (F * K)) * (1.0 / state.space.hbar)


def scale_of(*ops: Operator) -> float:
    """Tolerance scale ``max(1, prod ||op||)`` with spectral norms."""
    s = 1.0
    for op in ops:
        s *= float(np.linalg.norm(op.matrix, 2))
    return max(1.0, s)


@dataclass(frozen=True)
class Uncertainty:
    cov: float
    delta_beta: float
    delta_gamma: float
    lhs: float
    rhs: float


def covariance_and_uncertainty(beta: Operator, gamma: Operator, state: StateVector) -> Uncertainty:
    """Covariance and the Schrodinger-strengthened uncertainty product."""
    if not (beta.is_hermitian() and gamma.is_hermitian()):
        raise DomainError("covariance requires Hermitian operators")
    hb = state.space.hbar
    cov = (hb / 2) * bracket(beta, gamma, state, "riemann", HOMOGENEOUS)
    var_b = (hb / 2) * bracket(beta, beta, state, "riemann", HOMOGENEOUS)
    var_c = (hb / 2) * bracket(gamma, gamma, state, "riemann", HOMOGENEOUS)
    comm = (hb / 2) * bracket(beta, gamma, state, "poisson", HOMOGENEOUS)
    var_b, var_c = max(var_b.real, 0.0), max(var_c.real, 0.0)
    return Uncertainty(
        cov=float(cov.real),
        delta_beta=float(np.sqrt(var_b)),
        delta_gamma=float(np.sqrt(var_c)),
        lhs=float(var_b * var_c),
        rhs=float(comm.real**2 + cov.real**2),
    )
