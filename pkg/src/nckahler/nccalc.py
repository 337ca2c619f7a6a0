"""Calculus on the observable algebra with the coordinate operators as coordinates.

Partial derivatives are inner derivations, i.e. scaled commutators with the
conjugate coordinate::

    d/dx_i    = -(1/i hbar) [p_i, . ]     d/dp_i     = (1/i hbar) [x_i, . ]
    d/dalpha_i = -(1/2 hbar) [alphabar_i, . ]   d/dalphabar_i = (1/2 hbar) [alpha_i, . ]

Identities involving truncated ladder operators hold exactly only on
faithful columns (see ``FockSpace.faithful_mask``).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, ParameterError
from .fock import Operator, build_coordinate_operators

WRT = ("x", "p", "alpha", "alphabar")


@dataclass(frozen=True)
class NCDerivation:
    wrt: str
    mode: int = 0

    def __post_init__(self):
        if self.wrt not in WRT:
            raise ParameterError(f"unknown coordinate {self.wrt!r}; expected one of {WRT}")

    def __call__(self, beta: Operator) -> Operator:
        return nc_partial(beta, self.wrt, self.mode)


def nc_partial(beta: Operator, wrt: str, mode: int = 0) -> Operator:
    if wrt not in WRT:
        raise ParameterError(f"unknown coordinate {wrt!r}; expected one of {WRT}")
    sp = beta.space
    sp.check_mode(mode)
    c = build_coordinate_operators(sp)
    hb = sp.hbar
    partner, factor = {
        "x": (c.p[mode], -1 / (1j * hb)),
        "p": (c.x[mode], 1 / (1j * hb)),
        "alpha": (c.alphabar[mode], -1 / (2 * hb)),
        "alphabar": (c.alpha[mode], 1 / (2 * hb)),
    }[wrt]
    K, B = partner.matrix, beta.matrix
    return Operator(sp, factor * (K @ B - B @ K))


def nc_poisson(beta: Operator, gamma: Operator) -> Operator:
    if beta.space != gamma.space:
        raise DimensionError("operators act on different spaces")
    B, C = beta.matrix, gamma.matrix
    return Operator(beta.space, (B @ C - C @ B) / (1j * beta.space.hbar))


def hamiltonian_derivation(beta: Operator, gamma: Operator) -> Operator:
    """The inner derivation ``-(1/i hbar) ad_beta`` applied to ``gamma``."""
    return -1 * nc_poisson(beta, gamma)


def omega_components(which: str, i: int, j: int, bars: str, d: int | None = None) -> complex:
    """Constant components of the symplectic tensor in the ``alpha`` coordinates.

    ``bars`` marks which of the two indices carry a bar, e.g. ``"01"`` for
    ``(i, jbar)``.  Indices are 1-based.
    """
    if which not in ("cov", "contra"):
        raise ParameterError("which must be 'cov' or 'contra'")
    if bars not in ("00", "01", "10", "11"):
        raise ParameterError(f"bar pattern {bars!r} must be one of 00, 01, 10, 11")
    if i < 1 or j < 1 or (d is not None and (i > d or j > d)):
        raise ParameterError(f"index out of range: ({i}, {j})")
    if bars in ("00", "11") or i != j:
        return 0j
    if which == "cov":
        return 0.5j if bars == "01" else -0.5j
    return -2j if bars == "01" else 2j


@dataclass(frozen=True, eq=False)
class ClassicalFormResult:
    true_bracket: Operator
    classical_form: Operator
    deviation: Operator


def classical_form_counterexample(beta: Operator, gamma: Operator) -> ClassicalFormResult:
    """Compare the operator bracket with the naive sum of coordinate-derivative products."""
    if beta.space != gamma.space:
        raise DimensionError("operators act on different spaces")
    sp = beta.space
    true = nc_poisson(beta, gamma)
    classical = np.zeros((sp.dim, sp.dim), dtype=complex)
    for i in range(sp.d):
        bx, bp = nc_partial(beta, "x", i).matrix, nc_partial(beta, "p", i).matrix
        gx, gp = nc_partial(gamma, "x", i).matrix, nc_partial(gamma, "p", i).matrix
        classical += bx @ gp - bp @ gx
    cf = Operator(sp, classical)
    return ClassicalFormResult(true, cf, Operator(sp, true.matrix - classical))
