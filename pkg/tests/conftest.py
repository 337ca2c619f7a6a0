import logging

import numpy as np
import pytest
from hypothesis import strategies as st

from nckahler import geometry
from nckahler.fock import FockSpace, StateVector
from nckahler.numdiff import wirtinger

logging.getLogger("nckahler").setLevel(logging.ERROR)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def space1():
    return FockSpace(1, 8)


@pytest.fixture
def space2():
    return FockSpace(2, 4)


def two_level(space: FockSpace, a=1.0, b=1.0) -> StateVector:
    """``a|0> + b|1>`` in the first mode."""
    z = np.zeros(space.dim, dtype=complex)
    z[0] = a
    z[space.position[(1,) + (0,) * (space.d - 1)]] = b
    return StateVector(space, z)


seeds = st.integers(min_value=0, max_value=2**32 - 1)
hbars = st.sampled_from([0.5, 1.0, 2.0])
spaces = st.builds(FockSpace, st.sampled_from([1, 2]), st.integers(min_value=3, max_value=5), hbars)


def fd_covariant_lhs(beta, st):
    """Projected covariant derivative with the covector derivative taken by central differences."""
    n = st.z.size
    B = beta.matrix

    def zeta(z):
        n2 = np.vdot(z, z).real
        f = np.vdot(z, B @ z) / n2
        return np.concatenate([1j * (B.T @ z.conj() - f * z.conj()) / n2, -1j * (B @ z - f * z) / n2])

    dh, da = wirtinger(zeta, st.z)
    dzeta = np.concatenate([dh, da], axis=-1).T  # [B, C] = partial_B zeta_C
    nabla = dzeta - np.einsum("abc,a->bc", geometry.full_christoffel(st), zeta(st.z))
    P = geometry.projector(st)
    Pf = np.zeros((2 * n, 2 * n), dtype=complex)
    Pf[:n, :n] = P
    Pf[n:, n:] = P.conj()
    return (Pf @ nabla @ Pf.T)[:n, n:]


# criterion number -> one-line verdict, filled by test_acceptance and printed after the run
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
