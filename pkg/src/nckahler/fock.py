"""Truncated multi-mode Fock space, state vectors and the coordinate operators.

Basis vectors are labelled by multi-indices ``n = (n_1, ..., n_d)`` with
``0 <= n_i <= n_cut`` and ordered lexicographically, so flat position 0 is the
vacuum.  The ladder operators are scaled so that ``alpha_i`` lowers mode ``i``
with amplitude ``sqrt(2 hbar n_i)``; then ``x = (alpha + alphabar)/2`` and
``p = (alpha - alphabar)/(2i)`` satisfy ``[x, p] = i hbar`` away from the cutoff.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import (
    ChartError,
    DimensionError,
    DomainError,
    ParameterError,
    TruncationError,
    UndefinedStateError,
)

HERMITIAN_TOL = 1e-10


@dataclass(frozen=True)
class FockSpace:
    """Truncated Fock space of ``d`` modes with per-mode cutoff ``n_cut``."""

    d: int
    n_cut: int
    hbar: float = 1.0

    def __post_init__(self):
        if not (1 <= int(self.d) <= 3):
            raise ParameterError(f"mode count d must be in 1..3, got {self.d}")
        if int(self.n_cut) < 2:
            raise ParameterError(f"cutoff must be >= 2, got {self.n_cut}")
        if not (float(self.hbar) > 0.0):
            raise ParameterError(f"hbar must be positive, got {self.hbar}")

    @cached_property
    def index_table(self) -> tuple[tuple[int, ...], ...]:
        return tuple(np.ndindex(*([self.n_cut + 1] * self.d)))

    @cached_property
    def position(self) -> dict[tuple[int, ...], int]:
        return {n: k for k, n in enumerate(self.index_table)}

    @property
    def dim(self) -> int:
        return (self.n_cut + 1) ** self.d

    @cached_property
    def occupations(self) -> np.ndarray:
        """Integer array of shape (dim, d)."""
        occ = np.array(self.index_table, dtype=int)
        occ.flags.writeable = False
        return occ

    @cached_property
    def total(self) -> np.ndarray:
        tot = self.occupations.sum(axis=1)
        tot.flags.writeable = False
        return tot

    def shift_table(self, mode: int, step: int) -> np.ndarray:
        """Flat position of ``n + step*e_mode`` for every ``n``; -1 if out of range."""
        self.check_mode(mode)
        out = np.full(self.dim, -1, dtype=int)
        for k, n in enumerate(self.index_table):
            m = list(n)
            m[mode] += step
            if 0 <= m[mode] <= self.n_cut:
                out[k] = self.position[tuple(m)]
        return out

    def check_mode(self, mode: int):
        if not (0 <= mode < self.d):
            raise ParameterError(f"mode index {mode} outside 0..{self.d - 1}")

    def faithful_mask(self, degree: int) -> np.ndarray:
        """Basis columns on which a polynomial of ladder degree ``degree`` is exact."""
        if degree > self.n_cut:
            raise TruncationError(
                f"ladder degree {degree} exceeds cutoff {self.n_cut}; no faithful states"
            )
        return self.total <= self.n_cut - degree

    def basis_state(self, n, amplitude: complex = 1.0) -> "StateVector":
        n = (n,) if np.isscalar(n) else tuple(n)
        if n not in self.position:
            raise ParameterError(f"multi-index {n} not in the truncated basis")
        z = np.zeros(self.dim, dtype=complex)
        z[self.position[n]] = amplitude
        return StateVector(self, z)

    def state(self, amplitudes: dict) -> "StateVector":
        """State from a ``{multi_index: amplitude}`` mapping."""
        z = np.zeros(self.dim, dtype=complex)
        for n, a in amplitudes.items():
            n = (n,) if np.isscalar(n) else tuple(n)
            if n not in self.position:
                raise ParameterError(f"multi-index {n} not in the truncated basis")
            z[self.position[n]] += a
        return StateVector(self, z)


@dataclass(frozen=True, eq=False)
class StateVector:
    """Homogeneous coordinates ``z^[n]`` of a nonzero Hilbert-space vector."""

    space: FockSpace
    z: np.ndarray = field(repr=False)

    def __post_init__(self):
        z = np.array(self.z, dtype=complex).reshape(-1)
        if z.shape != (self.space.dim,):
            raise DimensionError(f"expected {self.space.dim} amplitudes, got {z.shape[0]}")
        if not np.all(np.isfinite(z)):
            raise DomainError("amplitudes must be finite")
        if not np.any(z != 0):
            raise UndefinedStateError("the zero vector does not define a state")
        z.flags.writeable = False
        object.__setattr__(self, "z", z)

    @property
    def norm2(self) -> float:
        return float(np.vdot(self.z, self.z).real)

    @property
    def r(self) -> float:
        return float(np.sqrt(self.norm2))

    @property
    def theta(self) -> float:
        """Phase of the vacuum amplitude."""
        if self.z[0] == 0:
            raise ChartError("phase angle undefined where z^[0] = 0")
        return float(np.angle(self.z[0]))

    @property
    def support_cut(self) -> int:
        return int(self.space.total[np.abs(self.z) > 0].max())

    @property
    def w(self) -> np.ndarray:
        """Affine chart ``z/z^[0]`` including the constant entry ``w^[0] = 1``."""
        if abs(self.z[0]) == 0:
            raise ChartError("affine chart requires z^[0] != 0")
        return self.z / self.z[0]

    def scaled(self, c: complex) -> "StateVector":
        if c == 0:
            raise UndefinedStateError("scaling by zero gives the zero vector")
        return StateVector(self.space, c * self.z)

    def normalized(self, norm2: float | None = None) -> "StateVector":
        """Rescale to ``|z|^2 = norm2`` (default ``2 hbar``)."""
        target = 2.0 * self.space.hbar if norm2 is None else float(norm2)
        if target <= 0:
            raise ParameterError("target norm must be positive")
        return StateVector(self.space, self.z * np.sqrt(target / self.norm2))


@dataclass(frozen=True, eq=False)
class Operator:
    """Dense complex matrix acting on a truncated Fock space."""

    space: FockSpace
    matrix: np.ndarray = field(repr=False)
    hermitian_hint: bool | None = None

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.shape != (self.space.dim, self.space.dim):
            raise DimensionError(
                f"matrix shape {m.shape} does not match space dimension {self.space.dim}"
            )
        if self.hermitian_hint and np.max(np.abs(m - m.conj().T), initial=0.0) > HERMITIAN_TOL * max(
            1.0, np.max(np.abs(m))
        ):
            raise DomainError("hermitian_hint set on a non-Hermitian matrix")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    def _check(self, other: "Operator"):
        if not isinstance(other, Operator) or other.space != self.space:
            raise DimensionError("operators act on different spaces")

    def __add__(self, other):
        if np.isscalar(other):
            return Operator(self.space, self.matrix + other * np.eye(self.space.dim))
        self._check(other)
        return Operator(self.space, self.matrix + other.matrix)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-1) * other

    def __rsub__(self, other):
        return (-1) * self + other

    def __neg__(self):
        return Operator(self.space, -self.matrix)

    def __mul__(self, c):
        if not np.isscalar(c):
            return NotImplemented
        return Operator(self.space, c * self.matrix)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return Operator(self.space, self.matrix / c)

    def __matmul__(self, other):
        self._check(other)
        return Operator(self.space, self.matrix @ other.matrix)

    def __pow__(self, k: int):
        if k < 0:
            raise ParameterError("negative operator power")
        return Operator(self.space, np.linalg.matrix_power(self.matrix, k))

    def dagger(self) -> "Operator":
        return Operator(self.space, self.matrix.conj().T, self.hermitian_hint)

    def is_hermitian(self, tol: float = HERMITIAN_TOL) -> bool:
        scale = max(1.0, float(np.max(np.abs(self.matrix))))
        return float(np.max(np.abs(self.matrix - self.matrix.conj().T))) <= tol * scale

    def apply(self, state: StateVector) -> np.ndarray:
        if state.space != self.space:
            raise DimensionError("state and operator live on different spaces")
        return self.matrix @ state.z

    def restricted(self, degree: int) -> np.ndarray:
        """Columns on which a polynomial of the given ladder degree is faithful."""
        return self.matrix[:, self.space.faithful_mask(degree)]


@dataclass(frozen=True)
class Coordinates:
    """The coordinate observables of every mode (0-based mode index)."""

    a: tuple[Operator, ...]
    alpha: tuple[Operator, ...]
    alphabar: tuple[Operator, ...]
    x: tuple[Operator, ...]
    p: tuple[Operator, ...]
    N: tuple[Operator, ...]
    I: Operator

    def as_dict(self) -> dict[str, Operator]:
        out = {"I": self.I}
        for name in ("a", "alpha", "alphabar", "x", "p", "N"):
            for i, op in enumerate(getattr(self, name)):
                out[f"{name}{i + 1}"] = op
        return out


def lowering_matrix(space: FockSpace, mode: int) -> np.ndarray:
    """Standard annihilation matrix ``a`` for one mode."""
    space.check_mode(mode)
    down = space.shift_table(mode, -1)
    m = np.zeros((space.dim, space.dim), dtype=complex)
    cols = np.nonzero(down >= 0)[0]
    m[down[cols], cols] = np.sqrt(space.occupations[cols, mode])
    return m


def build_coordinate_operators(space: FockSpace) -> Coordinates:
    hb = space.hbar
    a, al, alb, xs, ps, ns = [], [], [], [], [], []
    for i in range(space.d):
        low = lowering_matrix(space, i)
        alpha = np.sqrt(2 * hb) * low
        alphabar = alpha.conj().T
        a.append(Operator(space, low))
        al.append(Operator(space, alpha))
        alb.append(Operator(space, alphabar))
        xs.append(Operator(space, (alpha + alphabar) / 2, True))
        ps.append(Operator(space, (alpha - alphabar) / 2j, True))
        # equals alphabar alpha / 2hbar; stored as the exact occupation diagonal
        ns.append(Operator(space, np.diag(space.occupations[:, i]).astype(complex), True))
    ident = Operator(space, np.eye(space.dim), True)
    return Coordinates(tuple(a), tuple(al), tuple(alb), tuple(xs), tuple(ps), tuple(ns), ident)


_KINDS = ("product", "commutator", "anticommutator", "jordan", "adjoint")


def op_algebra(a: Operator, b: Operator | None, kind: str) -> Operator:
    if kind not in _KINDS:
        raise ParameterError(f"unknown kind {kind!r}; expected one of {_KINDS}")
    if kind == "adjoint":
        return a.dagger()
    a._check(b)
    A, B = a.matrix, b.matrix
    if kind == "product":
        return Operator(a.space, A @ B)
    if kind == "commutator":
        return Operator(a.space, A @ B - B @ A)
    if kind == "anticommutator":
        return Operator(a.space, A @ B + B @ A)
    return Operator(a.space, (A @ B + B @ A) / 2)


def born_jordan(space: FockSpace, a_exp: int, b_exp: int, mode: int = 0) -> Operator:
    """Born-Jordan ordered monomial: ``(1/(a+1)) sum_k x^(a-k) p^b x^k``."""
    if a_exp < 0 or b_exp < 0:
        raise ParameterError("exponents must be non-negative")
    if a_exp + b_exp > space.n_cut:
        raise TruncationError(
            f"x^{a_exp} p^{b_exp} has ladder degree {a_exp + b_exp} > cutoff {space.n_cut}"
        )
    c = build_coordinate_operators(space)
    x, p = c.x[mode].matrix, c.p[mode].matrix
    pb = np.linalg.matrix_power(p, b_exp)
    xs = [np.linalg.matrix_power(x, k) for k in range(a_exp + 1)]
    total = sum(xs[a_exp - k] @ pb @ xs[k] for k in range(a_exp + 1))
    return Operator(space, total / (a_exp + 1), True)


_LETTERS = {"x": "x", "p": "p", "a": "alpha", "A": "alphabar"}


def word(space: FockSpace, letters: str, mode: int = 0) -> Operator:
    """Ordered product of coordinates, e.g. ``"xpx"`` for x p x.

    Letters: ``x``, ``p``, ``a`` (alpha), ``A`` (alphabar).  The empty word is I.
    """
    c = build_coordinate_operators(space)
    space.check_mode(mode)
    m = np.eye(space.dim, dtype=complex)
    for ch in letters:
        if ch not in _LETTERS:
            raise ParameterError(f"unknown coordinate letter {ch!r}")
        m = m @ getattr(c, _LETTERS[ch])[mode].matrix
    return Operator(space, m)


def polynomial(space: FockSpace, terms: dict[str, complex], mode: int = 0) -> Operator:
    """Linear combination of ordered words: ``{"xxp": 1.0, "pxx": -1.0}``."""
    m = np.zeros((space.dim, space.dim), dtype=complex)
    for letters, coeff in terms.items():
        m = m + coeff * word(space, letters, mode).matrix
    return Operator(space, m)


def polynomial_degree(terms: dict[str, complex]) -> int:
    return max((len(k) for k in terms), default=0)
